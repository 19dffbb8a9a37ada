"""Moment extraction and nonclassicality-transfer predicates.

Normally ordered moments <(a^dag)^m a^n> come from finite differences of the
normally ordered characteristic function C^P(xi) = e^{|xi|^2/2} C^W(xi) at
xi = 0.  On top of those sit the survival thresholds: how much teleportation
noise n_tau a sub-Poissonian or squeezed input can absorb before the
corresponding nonclassical signature disappears, and the global statement
that for n_tau >= 1 the teleported P function is positive for every input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import NoiseFactor
from .errors import AccuracyError, ConfigurationError, DomainError, UnsupportedDeconvolutionError
from .phase_space import WignerGrid, blur_values, characteristic
from .teleport import teleport_state

_VAR_SLOP = 1e-6


@dataclass(frozen=True)
class PhotonStats:
    """Mean photon number and photon-number variance."""

    mean: float
    variance: float

    def __post_init__(self):
        if self.mean < -_VAR_SLOP:
            raise DomainError(f"mean photon number must be >= 0, got {self.mean}")
        if self.variance < -_VAR_SLOP:
            raise DomainError(f"photon-number variance must be >= 0, got {self.variance}")
        object.__setattr__(self, "mean", max(0.0, float(self.mean)))
        object.__setattr__(self, "variance", max(0.0, float(self.variance)))


@dataclass(frozen=True)
class QuadratureStats:
    """Mean and variance of X(phi) = e^{-i phi} a + e^{i phi} a^dag.

    Vacuum variance is 1 in this convention.
    """

    phi: float
    mean: float
    variance: float

    def __post_init__(self):
        if self.variance < -_VAR_SLOP:
            raise DomainError(f"quadrature variance must be >= 0, got {self.variance}")
        object.__setattr__(self, "variance", max(0.0, float(self.variance)))


def _fd_weights(order: int, points: np.ndarray) -> np.ndarray:
    """Weights w with sum w_j f(x_j) -> f^(order)(0) for symmetric points."""
    a = np.vander(points, len(points), increasing=True).T
    rhs = np.zeros(len(points))
    rhs[order] = math.factorial(order)
    return np.linalg.solve(a, rhs)


def moments(w, m: int, n: int) -> complex:
    """Normally ordered moment <(a^dag)^m a^n>, m + n <= 4.

    Samples the characteristic function on a 9x9 stencil around xi = 0,
    reorders to C^P with the e^{(1-sigma)|xi|^2/2} factor, and combines
    1D finite-difference weights for the mixed Wirtinger derivative.  The
    step widens for total order 3-4 where roundoff dominates truncation.
    """
    if m < 0 or n < 0 or m + n > 4:
        raise ConfigurationError("moment orders must satisfy m, n >= 0 and m + n <= 4")
    total = m + n
    h = 1e-3 if total <= 2 else 0.02
    offs = np.arange(-4, 5)
    xi = h * (offs[:, None] + 1j * offs[None, :])
    sigma = getattr(w, "sigma", 0.0)
    c_p = np.exp((1.0 - sigma) * np.abs(xi) ** 2 / 2.0) * characteristic(w, xi)
    acc = 0.0 + 0.0j
    for a_ in range(m + 1):
        for b_ in range(n + 1):
            p = a_ + b_
            coef = (
                math.comb(m, a_)
                * math.comb(n, b_)
                * (-1j) ** (m - a_)
                * (1j) ** (n - b_)
            )
            wr = _fd_weights(p, offs * h)
            wi = _fd_weights(total - p, offs * h)
            acc += coef * (wr @ c_p @ wi)
    return complex((-1) ** n * acc / 2**total)


def photon_statistics(w) -> PhotonStats:
    """PhotonStats of a state from its (1,1) and (2,2) moments."""
    n_mean = moments(w, 1, 1).real
    n2 = moments(w, 2, 2).real + n_mean  # <N^2> = <a^dag^2 a^2> + <N>
    return PhotonStats(mean=n_mean, variance=n2 - n_mean**2)


def quadrature_statistics(w, phi: float = 0.0) -> QuadratureStats:
    """QuadratureStats of X(phi) from first and second moments."""
    a1 = moments(w, 0, 1)
    a2 = moments(w, 0, 2)
    nbar = moments(w, 1, 1).real
    rot = np.exp(-1j * phi)
    mean = 2.0 * (rot * a1).real
    x2 = 2.0 * (rot**2 * a2).real + 2.0 * nbar + 1.0
    return QuadratureStats(phi=float(phi), mean=mean, variance=x2 - mean**2)


def _ntau(n_tau) -> float:
    if isinstance(n_tau, NoiseFactor):
        return float(n_tau.value)
    n = float(n_tau)
    if n < 0:
        raise DomainError(f"n_tau must be >= 0, got {n}")
    return n


def teleported_photon_stats(s_in, n_tau) -> PhotonStats:
    """Photon statistics after teleportation with noise n_tau.

    Accepts a Fock index (closed form N_r = m + n_tau,
    (dN_r)^2 = (2m+1) n_tau + n_tau^2), a PhotonStats (same transfer with
    m -> mean and the input variance added on), or a WignerGrid (teleports
    the grid and measures moments).
    """
    n = _ntau(n_tau)
    if isinstance(s_in, WignerGrid):
        return photon_statistics(teleport_state(s_in, n))
    if isinstance(s_in, PhotonStats):
        mean = s_in.mean + n
        var = s_in.variance + (2.0 * s_in.mean + 1.0) * n + n**2
        return PhotonStats(mean=mean, variance=var)
    if isinstance(s_in, (int, np.integer)) and not isinstance(s_in, bool):
        m = int(s_in)
        if m < 0:
            raise DomainError("Fock index must be >= 0")
        return PhotonStats(mean=m + n, variance=(2 * m + 1) * n + n**2)
    raise ConfigurationError(f"unsupported input for photon statistics: {type(s_in)!r}")


def sub_poisson_threshold(s: PhotonStats):
    """Largest n_tau below which the teleported state stays sub-Poissonian.

    Returns sqrt(N^2 + N - (dN)^2) - N when real and positive, else None
    (Poissonian and super-Poissonian inputs never survive).  The value
    never exceeds 1/2.
    """
    radicand = s.mean**2 + s.mean - s.variance
    if radicand <= 0.0:
        return None
    thr = math.sqrt(radicand) - s.mean
    return thr if thr > 0.0 else None


def quadrature_transfer(q: QuadratureStats, n_tau) -> QuadratureStats:
    """Quadrature statistics after teleportation: mean kept, variance + 2 n_tau."""
    n = _ntau(n_tau)
    return QuadratureStats(phi=q.phi, mean=q.mean, variance=q.variance + 2.0 * n)


def squeezing_threshold(var_min: float):
    """Largest n_tau below which teleported quadrature squeezing survives.

    var_min is the input's minimum quadrature variance; the threshold is
    (1 - var_min)/2, None when the input is not squeezed.  Never exceeds 1/2.
    """
    if var_min < 0:
        raise DomainError(f"variance must be >= 0, got {var_min}")
    thr = (1.0 - var_min) / 2.0
    return thr if thr > 0.0 else None


def p_positive_after_teleport(n_tau) -> bool:
    """True iff the teleported P function is positive for every input.

    Holds exactly when n_tau >= 1, the same boundary at which the channel
    state becomes separable.
    """
    return _ntau(n_tau) >= 1.0


def p_negativity_probe(w_o: WignerGrid, n_tau, sigma: float = 0.9) -> float:
    """Minimum of the sigma-ordered quasiprobability of the teleported state.

    Blurs the *input* Wigner grid with the combined kernel of variance-order
    2 n_tau - sigma, which equals converting the teleported state toward
    ordering sigma without any ill-posed deconvolution.  Requires
    2 n_tau - sigma > 0.  A negative return witnesses surviving
    P-nonclassicality down to the probed ordering.
    """
    if w_o.sigma != 0.0:
        raise ConfigurationError("probe consumes Wigner grids (sigma = 0)")
    if sigma > 1.0:
        raise DomainError(f"ordering parameter must be <= 1, got {sigma}")
    n = _ntau(n_tau)
    s = 2.0 * n - sigma
    if s <= 0.0:
        raise UnsupportedDeconvolutionError(
            f"probing sigma = {sigma} at n_tau = {n} would require deconvolution"
        )
    std = math.sqrt(s) / 2.0
    if 4.0 * std > w_o.extent:
        raise AccuracyError(
            f"combined kernel width {std:.3g} exceeds what extent {w_o.extent} can hold"
        )
    return float(blur_values(w_o.values, w_o.axes(), std).min())
