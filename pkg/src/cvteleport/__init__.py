"""Continuous-variable teleportation through a thermally degraded
two-mode squeezed channel, on phase-space grids."""

from .channel import (
    ChannelParams,
    NoiseFactor,
    direct_noise,
    evolve_channel,
    integrate_moment_flow,
    is_separable,
    noise_factor,
    teleport_vs_direct_gap,
)
from .errors import (
    AccuracyError,
    ConfigurationError,
    CvtError,
    DomainError,
    NotSeparableError,
    UnsupportedDeconvolutionError,
)
from .fidelity import FidelityReport, fock_fidelity, overlap_fidelity, squeezed_fidelity
from .numerics import (
    QuadratureRule,
    gauss_hermite,
    grid_integrate,
    laguerre,
    legendre,
)
from .nonclassicality import (
    PhotonStats,
    QuadratureStats,
    moments,
    p_negativity_probe,
    p_positive_after_teleport,
    photon_statistics,
    quadrature_statistics,
    quadrature_transfer,
    squeezing_threshold,
    sub_poisson_threshold,
    teleported_photon_stats,
)
from .phase_space import (
    DEFAULT_EXTENT,
    DEFAULT_RESOLUTION,
    GaussianOneMode,
    WignerGrid,
    band_limit,
    characteristic,
    convert_sigma,
    load_grid,
    save_grid,
)
from .separability import (
    PExponentMatrix,
    SeparableDecomposition,
    channel_is_separable_via_appendix,
    check_criterion,
    decompose,
    is_boundary_case,
    p_exponent_from_channel,
    p_value,
    reconstruct_p,
)
from .states import (
    GaussianTwoMode,
    coherent_wigner,
    fock_wigner,
    squeezed_vacuum_wigner,
    two_mode_squeezed_vacuum,
    vacuum_wigner,
)
from .teleport import (
    TeleportKernel,
    kernel_value,
    measurement_density,
    protocol_oracle,
    teleport_state,
    teleported_fock_wigner,
    teleported_squeezed_wigner,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "ChannelParams",
    "ConfigurationError",
    "CvtError",
    "DEFAULT_EXTENT",
    "DEFAULT_RESOLUTION",
    "DomainError",
    "FidelityReport",
    "GaussianOneMode",
    "GaussianTwoMode",
    "NoiseFactor",
    "NotSeparableError",
    "PExponentMatrix",
    "PhotonStats",
    "QuadratureRule",
    "QuadratureStats",
    "SeparableDecomposition",
    "TeleportKernel",
    "UnsupportedDeconvolutionError",
    "WignerGrid",
    "band_limit",
    "channel_is_separable_via_appendix",
    "characteristic",
    "check_criterion",
    "coherent_wigner",
    "convert_sigma",
    "decompose",
    "direct_noise",
    "evolve_channel",
    "fock_fidelity",
    "fock_wigner",
    "gauss_hermite",
    "grid_integrate",
    "integrate_moment_flow",
    "is_boundary_case",
    "is_separable",
    "kernel_value",
    "laguerre",
    "legendre",
    "load_grid",
    "measurement_density",
    "moments",
    "noise_factor",
    "overlap_fidelity",
    "p_exponent_from_channel",
    "p_negativity_probe",
    "p_positive_after_teleport",
    "p_value",
    "photon_statistics",
    "protocol_oracle",
    "quadrature_statistics",
    "quadrature_transfer",
    "reconstruct_p",
    "save_grid",
    "squeezed_fidelity",
    "squeezed_vacuum_wigner",
    "squeezing_threshold",
    "sub_poisson_threshold",
    "teleport_state",
    "teleport_vs_direct_gap",
    "teleported_fock_wigner",
    "teleported_photon_stats",
    "teleported_squeezed_wigner",
    "two_mode_squeezed_vacuum",
    "vacuum_wigner",
]
