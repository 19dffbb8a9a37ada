"""The measured-quadrature teleportation map in phase space.

Teleporting a state whose Wigner function is W_o through a Gaussian channel
adds isotropic noise: the output is the convolution

    W_r = P_tau * W_o,   P_tau(d) = 1/(pi n_tau) exp(-|d|^2 / n_tau),

with n_tau = gamma - lam of the channel state.  ``protocol_oracle`` instead
evaluates the full protocol integral (balanced mixing of the input with one
channel mode, quadrature readout, conditional displacement of the other
mode) by four-dimensional Gauss-Hermite quadrature and serves as an
independent cross-check of the convolution route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import NoiseFactor
from .errors import AccuracyError, ConfigurationError, DomainError
from .numerics import gauss_hermite, laguerre
from .phase_space import (
    DEFAULT_EXTENT,
    DEFAULT_RESOLUTION,
    WignerGrid,
    blur_values,
    _widened_envelope,
)
from .states import GaussianTwoMode, _make_grid

ORACLE_ORDER = 40

# test hook: relative distortion of the kernel width, used to demonstrate
# that the oracle comparison catches a corrupted implementation
_kernel_mutation = 0.0


def set_kernel_mutation(epsilon: float) -> None:
    global _kernel_mutation
    _kernel_mutation = float(epsilon)


def _ntau(n_tau) -> float:
    if isinstance(n_tau, NoiseFactor):
        return float(n_tau.value)
    return float(n_tau)


@dataclass(frozen=True)
class TeleportKernel:
    """Isotropic Gaussian noise kernel of one teleportation run."""

    n_tau: NoiseFactor

    def __post_init__(self):
        if not isinstance(self.n_tau, NoiseFactor):
            object.__setattr__(self, "n_tau", NoiseFactor(value=float(self.n_tau)))


def kernel_value(k: TeleportKernel, delta) -> float:
    """Kernel density at complex displacement delta."""
    n = _ntau(k.n_tau if isinstance(k, TeleportKernel) else k)
    if n <= 0:
        raise DomainError(f"kernel needs n_tau > 0, got {n}")
    d = np.asarray(delta, dtype=complex)
    out = np.exp(-np.abs(d) ** 2 / n) / (np.pi * n)
    return out if out.ndim else float(out)


def teleport_state(w_o: WignerGrid, n_tau) -> WignerGrid:
    """Teleport a Wigner grid: convolve with the noise kernel.

    The convolution runs as two separable 1D Gaussian passes with
    row-normalized kernels, so the output stays normalized and the
    n_tau -> 0 limit returns the input.
    """
    n = _ntau(n_tau)
    if n < 0:
        raise DomainError(f"n_tau must be >= 0, got {n}")
    if w_o.sigma != 0.0:
        raise ConfigurationError("teleportation acts on Wigner grids (sigma = 0)")
    n_eff = n * (1.0 + _kernel_mutation)
    std = np.sqrt(n_eff / 2.0)
    if 4.0 * std > w_o.extent:
        raise AccuracyError(
            f"kernel width {std:.3g} exceeds what extent {w_o.extent} can hold"
        )
    out = blur_values(w_o.values, w_o.axes(), std)
    return WignerGrid(
        sigma=0.0,
        extent=w_o.extent,
        resolution=w_o.resolution,
        values=out,
        profile=None,
        envelope=_widened_envelope(w_o.envelope, n_eff / 2.0),
        pure_origin=w_o.pure_origin and n == 0.0,
    )


def teleported_fock_wigner(
    m: int,
    n_tau,
    extent: float = DEFAULT_EXTENT,
    resolution: int = DEFAULT_RESOLUTION,
) -> WignerGrid:
    """Closed-form Wigner function of a teleported number state |m>.

    For |2 n_tau - 1| >= 1e-6 the Laguerre form

        W_r(a) = (2/pi) (2n-1)^m / (2n+1)^{m+1} exp(-2|a|^2/(2n+1))
                 * L_m(-4|a|^2 / ((2n)^2 - 1))

    is used; inside that window it switches to the sum obtained by
    expanding L_m, which cancels all (2n-1)^{-k} factors analytically:

        W_r(a) = (2/pi) exp(-2|a|^2/(2n+1))
                 * sum_k  C(m,k) (4|a|^2)^k (2n-1)^{m-k} / (k! (2n+1)^{m+k+1}).
    """
    from math import comb, factorial

    if not isinstance(m, (int, np.integer)) or not 0 <= m <= 50:
        raise ConfigurationError("number-state index must be an integer in [0, 50]")
    m = int(m)
    n = _ntau(n_tau)
    if n < 0:
        raise DomainError(f"n_tau must be >= 0, got {n}")
    twon = 2.0 * n

    if abs(twon - 1.0) < 1e-6:
        coeffs = [
            comb(m, k) * 4.0**k / (factorial(k) * (twon + 1.0) ** (m + k + 1))
            for k in range(m + 1)
        ]

        def profile(x, y):
            r2 = x**2 + y**2
            acc = np.zeros_like(r2)
            for k in range(m, -1, -1):
                acc += coeffs[k] * r2**k * (twon - 1.0) ** (m - k)
            return (2.0 / np.pi) * np.exp(-2.0 * r2 / (twon + 1.0)) * acc

    else:

        def profile(x, y):
            r2 = x**2 + y**2
            pref = (2.0 / np.pi) * (twon - 1.0) ** m / (twon + 1.0) ** (m + 1)
            return (
                pref
                * np.exp(-2.0 * r2 / (twon + 1.0))
                * laguerre(m, -4.0 * r2 / (twon**2 - 1.0))
            )

    k_env = 2.0 / (twon + 1.0)
    return _make_grid(profile, (0.0, 0.0, k_env, k_env), extent, resolution, pure=(n == 0.0))


def teleported_squeezed_wigner(
    s_o: float,
    n_tau,
    extent: float = DEFAULT_EXTENT,
    resolution: int = DEFAULT_RESOLUTION,
) -> WignerGrid:
    """Closed-form Wigner function of a teleported squeezed vacuum,

    W_r(a) = 2 / (pi sqrt(A(s_o) A(-s_o)))
             * exp(-2 a_r^2 / A(s_o) - 2 a_i^2 / A(-s_o)),
    A(s) = 2 n_tau + exp(-2 s).
    """
    n = _ntau(n_tau)
    if n < 0:
        raise DomainError(f"n_tau must be >= 0, got {n}")
    a_plus = 2.0 * n + np.exp(-2.0 * s_o)
    a_minus = 2.0 * n + np.exp(2.0 * s_o)
    if extent < 1.34 * np.sqrt(max(a_plus, a_minus)):
        raise ConfigurationError(
            f"extent {extent} too small for the teleported widths A = {a_plus:.3g}, {a_minus:.3g}"
        )
    pref = 2.0 / (np.pi * np.sqrt(a_plus * a_minus))

    def profile(x, y):
        return pref * np.exp(-2.0 * x**2 / a_plus - 2.0 * y**2 / a_minus)

    return _make_grid(
        profile,
        (0.0, 0.0, 2.0 / a_plus, 2.0 / a_minus),
        extent,
        resolution,
        pure=(n == 0.0),
    )


def _channel_coeffs(ch: GaussianTwoMode):
    det = ch.gamma**2 - ch.lam**2
    return 2.0 * ch.gamma / det, 2.0 * ch.lam / det


def protocol_oracle(
    w_o: WignerGrid,
    ch: GaussianTwoMode,
    extent: float = None,
    resolution: int = None,
    order: int = ORACLE_ORDER,
) -> WignerGrid:
    """Brute-force protocol integral, independent of :func:`teleport_state`.

    The output Wigner function is

        W_r(a) = Int d2ad d2ae W_o((ad - ae)/sqrt2)
                 W_ch((ad + ae)/sqrt2, a + sqrt2 (Re ae - i Im ad)),

    i.e. the input is mixed with one channel mode on a balanced splitter,
    the real part of one output and the imaginary part of the other are
    read out, and the second channel mode is displaced accordingly.  The
    four real integrals run over rotated coordinates in which the channel
    Gaussian factors into the quadrature weight; two of them carry the
    input profile, the other two are plain Gaussian sums.
    """
    if w_o.sigma != 0.0:
        raise ConfigurationError("the protocol integral consumes Wigner grids (sigma = 0)")
    extent = w_o.extent if extent is None else float(extent)
    resolution = w_o.resolution if resolution is None else int(resolution)
    a, b = _channel_coeffs(ch)
    rule = gauss_hermite(order)
    nodes, wts = rule.nodes, rule.weights

    # the two displacement-conjugate dimensions hold pure Gaussians
    sum_s = wts.sum() / np.sqrt(2.0 * (a - b))
    k_ker = 0.5 * (a + b)

    cx, cy, kx, ky = w_o.envelope if w_o.envelope is not None else (0.0, 0.0, 2.0, 2.0)
    ax_out = np.linspace(-extent, extent, resolution)

    rho_x = k_ker + kx
    rho_y = k_ker + ky
    mx = (k_ker * ax_out + kx * cx) / rho_x
    my = (k_ker * ax_out + ky * cy) / rho_y
    xo = mx[:, None] + nodes[None, :] / np.sqrt(rho_x)  # (res, q)
    yo = my[:, None] + nodes[None, :] / np.sqrt(rho_y)
    res_x = np.exp(rho_x * (xo - mx[:, None]) ** 2 - k_ker * (xo - ax_out[:, None]) ** 2)
    res_y = np.exp(rho_y * (yo - my[:, None]) ** 2 - k_ker * (yo - ax_out[:, None]) ** 2)
    wx = wts[None, :] * res_x / np.sqrt(rho_x)
    wy = wts[None, :] * res_y / np.sqrt(rho_y)

    pref = ch.norm * sum_s**2
    out = np.empty((resolution, resolution))
    q = order
    chunk = max(1, int(4e6 // (q * q * resolution)))
    for lo in range(0, resolution, chunk):
        hi = min(lo + chunk, resolution)
        wo_vals = w_o.sample(
            xo[lo:hi][:, :, None, None], yo[None, None, :, :]
        )  # (chunk, q, res, q)
        if wo_vals.ndim != 4:  # spline fallback loses broadcasting
            xb, yb = np.broadcast_arrays(
                xo[lo:hi][:, :, None, None], yo[None, None, :, :]
            )
            wo_vals = w_o.sample(xb.ravel(), yb.ravel()).reshape(xb.shape)
        out[lo:hi] = pref * np.einsum("rkil,rk,il->ri", wo_vals, wx[lo:hi], wy)
    return WignerGrid(
        sigma=0.0,
        extent=extent,
        resolution=resolution,
        values=out,
        profile=None,
        envelope=None,
        pure_origin=False,
    )


def measurement_density(
    w_o: WignerGrid,
    ch: GaussianTwoMode,
    alpha_d_i,
    alpha_e_r,
    order: int = ORACLE_ORDER,
):
    """Joint density of the two measured quadratures (Im of one splitter
    output, Re of the other), marginalized over everything unread.

    Accepts scalars or broadcastable arrays and returns matching shape.
    """
    if w_o.sigma != 0.0:
        raise ConfigurationError("the measurement density consumes Wigner grids (sigma = 0)")
    di, er = np.broadcast_arrays(
        np.asarray(alpha_d_i, dtype=float), np.asarray(alpha_e_r, dtype=float)
    )
    shape = di.shape
    di = di.ravel()
    er = er.ravel()
    a, b = _channel_coeffs(ch)
    rule = gauss_hermite(order)
    nodes, wts = rule.nodes, rule.weights
    sum_c = wts.sum() / np.sqrt(a)  # unread channel quadratures
    c_ch = (a**2 - b**2) / (2.0 * a)  # background curvature left on the splitter mode

    cx, cy, kx, ky = w_o.envelope if w_o.envelope is not None else (0.0, 0.0, 2.0, 2.0)
    rho_d = c_ch + 0.5 * kx
    rho_e = c_ch + 0.5 * ky
    md = (c_ch * (-er) + 0.5 * kx * (er + np.sqrt(2.0) * cx)) / rho_d
    me = (c_ch * (-di) + 0.5 * ky * (di - np.sqrt(2.0) * cy)) / rho_e
    dn = md[:, None] + nodes[None, :] / np.sqrt(rho_d)  # (np, q)
    en = me[:, None] + nodes[None, :] / np.sqrt(rho_e)
    res_d = np.exp(rho_d * (dn - md[:, None]) ** 2 - c_ch * (dn + er[:, None]) ** 2)
    res_e = np.exp(rho_e * (en - me[:, None]) ** 2 - c_ch * (en + di[:, None]) ** 2)
    wd = wts[None, :] * res_d / np.sqrt(rho_d)
    we = wts[None, :] * res_e / np.sqrt(rho_e)
    x_o = (dn - er[:, None]) / np.sqrt(2.0)  # (np, q)
    y_o = (di[:, None] - en) / np.sqrt(2.0)
    wo_vals = w_o.sample(x_o[:, :, None], y_o[:, None, :])
    if wo_vals.ndim != 3:
        xb, yb = np.broadcast_arrays(x_o[:, :, None], y_o[:, None, :])
        wo_vals = w_o.sample(xb.ravel(), yb.ravel()).reshape(xb.shape)
    out = ch.norm * sum_c**2 * np.einsum("pkl,pk,pl->p", wo_vals, wd, we)
    out = out.reshape(shape)
    return out if out.ndim else float(out)
