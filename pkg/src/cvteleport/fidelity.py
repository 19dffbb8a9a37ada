"""Teleportation fidelity: grid overlap and the two closed forms.

For a pure input, fidelity is the Wigner overlap

    F = pi Int d2a W_o(a) W_r(a).

Number-state and squeezed-vacuum inputs admit closed forms in the noise
factor n_tau; the number-state expression has a removable 0*inf point at
n_tau = 1 that is handled by an analytically equivalent sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, cosh, sqrt

import numpy as np

from .channel import NoiseFactor
from .errors import ConfigurationError, DomainError
from .numerics import legendre
from .phase_space import WignerGrid

_METHODS = ("overlap-grid", "fock-closed-form", "squeezed-closed-form")


@dataclass(frozen=True)
class FidelityReport:
    value: float
    method: str

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ConfigurationError(f"unknown fidelity method {self.method!r}")
        if not -1e-9 <= self.value <= 1.0 + 1e-9:
            raise DomainError(f"fidelity {self.value} outside [0, 1]")
        object.__setattr__(self, "value", min(max(float(self.value), 0.0), 1.0))

    def __float__(self):
        return self.value


def _ntau(n_tau) -> float:
    if isinstance(n_tau, NoiseFactor):
        return float(n_tau.value)
    n = float(n_tau)
    if n < 0:
        raise DomainError(f"n_tau must be >= 0, got {n}")
    return n


def overlap_fidelity(w_o: WignerGrid, w_r: WignerGrid) -> FidelityReport:
    """Overlap fidelity of two Wigner grids on identical geometry.

    w_o must come from a pure state; overlap-as-fidelity does not hold
    against mixed originals.
    """
    if (w_o.extent, w_o.resolution) != (w_r.extent, w_r.resolution):
        raise ConfigurationError(
            f"grid geometry mismatch: ({w_o.extent}, {w_o.resolution}) vs "
            f"({w_r.extent}, {w_r.resolution})"
        )
    if w_o.sigma != 0.0 or w_r.sigma != 0.0:
        raise ConfigurationError("overlap fidelity is defined on Wigner grids (sigma = 0)")
    if not w_o.pure_origin:
        raise ConfigurationError("the reference state must be pure for overlap fidelity")
    ax = w_o.axes()
    val = np.pi * np.trapezoid(np.trapezoid(w_o.values * w_r.values, ax, axis=1), ax)
    return FidelityReport(value=float(val), method="overlap-grid")


def fock_fidelity(m: int, n_tau) -> FidelityReport:
    """Fidelity of teleporting the number state |m> through noise n_tau.

    F_m = (1 - n)^m / (1 + n)^{m+1} * P_m((1 + n^2)/(1 - n^2)) with P_m the
    Legendre polynomial; for |n - 1| < 1e-6 the equivalent expansion

        F_m = sum_k C(m,k)^2 n^{2(m-k)} / (1 + n)^{2m+1}

    avoids the indeterminate point.
    """
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 0:
        raise ConfigurationError("number-state index must be an integer >= 0")
    m = int(m)
    n = _ntau(n_tau)
    if abs(n - 1.0) < 1e-6:
        val = sum(comb(m, k) ** 2 * n ** (2 * (m - k)) for k in range(m + 1))
        val /= (1.0 + n) ** (2 * m + 1)
    else:
        arg = (1.0 + n**2) / (1.0 - n**2)
        val = (1.0 - n) ** m / (1.0 + n) ** (m + 1) * legendre(m, arg)
    return FidelityReport(value=float(val), method="fock-closed-form")


def squeezed_fidelity(s_o: float, n_tau) -> FidelityReport:
    """Fidelity of teleporting a squeezed vacuum with parameter s_o,

    F = (n^2 + 2 n cosh 2 s_o + 1)^{-1/2}.
    """
    n = _ntau(n_tau)
    val = 1.0 / sqrt(n**2 + 2.0 * n * cosh(2.0 * s_o) + 1.0)
    return FidelityReport(value=val, method="squeezed-closed-form")
