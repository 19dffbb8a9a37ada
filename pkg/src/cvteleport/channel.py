"""Thermal degradation of the entangled channel and the derived noise figures.

The two modes of the channel couple to independent thermal baths with mean
occupation ``n_bar`` and damping rate ``gamma``; time enters through the
renormalized variable T = 1 - exp(-gamma t) in [0, 1].  The Gaussian channel
state keeps the form of :class:`~cvteleport.states.GaussianTwoMode` with

    gamma(T) = T (1 + 2 n_bar) + (1 - T) cosh(2 s_qc)
    lam(T)   = (1 - T) sinh(2 s_qc)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError
from .states import GaussianTwoMode

_KINDS = ("teleport", "direct")


@dataclass(frozen=True)
class ChannelParams:
    """Channel squeezing s_qc >= 0, bath occupation n_bar >= 0, and
    renormalized interaction time T in [0, 1]."""

    s_qc: float
    n_bar: float
    T: float

    def __post_init__(self):
        if self.s_qc < 0:
            raise ConfigurationError(f"s_qc must be >= 0, got {self.s_qc}")
        if self.n_bar < 0:
            raise ConfigurationError(f"n_bar must be >= 0, got {self.n_bar}")
        if not 0.0 <= self.T <= 1.0:
            raise ConfigurationError(f"T must lie in [0, 1], got {self.T}")

    @property
    def gamma_t(self) -> float:
        """Dimensionless bare time gamma*t corresponding to T (inf at T = 1)."""
        return float(-np.log1p(-self.T)) if self.T < 1.0 else float("inf")

    @classmethod
    def from_gamma_t(cls, s_qc: float, n_bar: float, gamma_t: float) -> "ChannelParams":
        if gamma_t < 0:
            raise ConfigurationError(f"gamma*t must be >= 0, got {gamma_t}")
        return cls(s_qc=s_qc, n_bar=n_bar, T=float(-np.expm1(-gamma_t)))


@dataclass(frozen=True)
class NoiseFactor:
    """Additive Gaussian noise of a transmission scheme.

    ``kind`` is "teleport" for the measured-quadrature protocol and
    "direct" for plain transmission through the same bath.
    """

    value: float
    kind: str = "teleport"

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ConfigurationError(f"noise kind must be one of {_KINDS}, got {self.kind!r}")
        if self.value < 0:
            raise DomainError(f"noise factor must be >= 0, got {self.value}")

    def __float__(self) -> float:
        return float(self.value)


def evolve_channel(p: ChannelParams) -> GaussianTwoMode:
    """Channel state after bath contact for renormalized time T."""
    gamma = p.T * (1.0 + 2.0 * p.n_bar) + (1.0 - p.T) * np.cosh(2.0 * p.s_qc)
    lam = (1.0 - p.T) * np.sinh(2.0 * p.s_qc)
    return GaussianTwoMode(gamma=float(gamma), lam=float(lam))


def integrate_moment_flow(p: ChannelParams, step: float = 1e-3):
    """Integrate the second-moment flow of the thermal master equation,

        d gamma / d(tau) = (1 + 2 n_bar) - gamma,   d lam / d(tau) = -lam,

    with tau = gamma*t, by classic fourth-order Runge-Kutta.  Serves as an
    independent route to :func:`evolve_channel`.
    """
    if not 0 < step <= 0.1:
        raise ConfigurationError(f"step must be in (0, 0.1], got {step}")
    if p.T >= 1.0:
        # infinite-time fixed point
        return 1.0 + 2.0 * p.n_bar, 0.0
    tau_end = p.gamma_t
    n = max(1, int(np.ceil(tau_end / step))) if tau_end > 0 else 0
    h = tau_end / n if n else 0.0
    a = 1.0 + 2.0 * p.n_bar
    y = np.array([np.cosh(2.0 * p.s_qc), np.sinh(2.0 * p.s_qc)])

    def f(v):
        return np.array([a - v[0], -v[1]])

    for _ in range(n):
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return float(y[0]), float(y[1])


def noise_factor(p: ChannelParams) -> NoiseFactor:
    """Additive noise of teleportation through the degraded channel,

    n_tau = (2 n_bar + 1) T + (1 - T) exp(-2 s_qc),

    which equals gamma(T) - lam(T) of the channel state.
    """
    value = (2.0 * p.n_bar + 1.0) * p.T + (1.0 - p.T) * np.exp(-2.0 * p.s_qc)
    return NoiseFactor(value=float(value), kind="teleport")


def direct_noise(n_bar: float, T: float) -> NoiseFactor:
    """Additive noise n_bar * T of direct transmission through the bath."""
    if n_bar < 0:
        raise ConfigurationError(f"n_bar must be >= 0, got {n_bar}")
    if not 0.0 <= T <= 1.0:
        raise ConfigurationError(f"T must lie in [0, 1], got {T}")
    return NoiseFactor(value=float(n_bar) * float(T), kind="direct")


def is_separable(p: ChannelParams) -> bool:
    """True when the degraded channel state is separable (n_tau >= 1)."""
    return noise_factor(p).value >= 1.0


def teleport_vs_direct_gap(p: ChannelParams) -> float:
    """Noise penalty of teleportation over direct transmission when the
    channel mode travels for half the total bath time,

        n_bar (1 - sqrt(1-T))^2 + 1 - sqrt(1-T) (1 - exp(-2 s_qc)),

    equal to n_tau at T' = 1 - sqrt(1-T) minus n_bar * T, and never negative.
    """
    u = np.sqrt(1.0 - p.T)
    return float(p.n_bar * (1.0 - u) ** 2 + 1.0 - u * (1.0 - np.exp(-2.0 * p.s_qc)))
