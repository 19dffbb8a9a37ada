"""Exception types shared across the package."""


class CvtError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(CvtError):
    """Invalid parameter, grid geometry, or option combination."""


class DomainError(CvtError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class AccuracyError(CvtError):
    """The requested evaluation cannot meet its accuracy contract."""


class UnsupportedDeconvolutionError(ConfigurationError):
    """A sampled-grid conversion was asked to run in the deconvolving direction."""


class NotSeparableError(CvtError):
    """A separable decomposition was requested for a state that has none."""
