"""Exception hierarchy with CLI exit codes."""


class MagnoSqueezeError(Exception):
    """Base class for every failure raised by the library."""

    exit_code = 1


class ConfigError(MagnoSqueezeError):
    """Malformed or inconsistent scenario configuration."""

    exit_code = 2


class DomainError(MagnoSqueezeError, ValueError):
    """Argument outside the domain of an operation."""

    exit_code = 2


class UnsupportedDimensionError(DomainError):
    """Mode count other than 2 (effective) or 3 (full)."""


class NumericalError(MagnoSqueezeError):
    exit_code = 3


class SingularityError(NumericalError):
    """A resonant or vanishing denominator."""


class InfeasibleDriveError(NumericalError):
    """The steady-state cubic has no positive real root."""


class LinearizationError(NumericalError):
    """Kerr linearization outside its hyperbolic domain or an inconsistent magnon phase."""


class InstabilityError(NumericalError):
    """Drift matrix is not Hurwitz where a steady state is required."""

    def __init__(self, message: str, spectral_abscissa: float):
        super().__init__(message)
        self.spectral_abscissa = spectral_abscissa


class NotApplicableError(NumericalError):
    """Regime precondition of an operation is not met."""


class UnphysicalStateError(NumericalError):
    """Covariance matrix violates the uncertainty relation."""


class PropagationError(NumericalError):
    """Irrecoverable overflow while propagating a covariance matrix."""


class ExtractionError(MagnoSqueezeError):
    """No level-attraction splitting in a spectral sweep."""

    exit_code = 4
