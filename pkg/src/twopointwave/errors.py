"""Exception types shared across the package."""


class TwoPointWaveError(Exception):
    """Base class for all package errors."""


class DomainError(TwoPointWaveError):
    """An argument violates a stated hypothesis or admissible range."""


class InfeasibleError(TwoPointWaveError):
    """No positive damping margin delta exists for the supplied tuning constants."""


class MeshError(TwoPointWaveError):
    """Mesh is too small or not uniform."""


class DimensionError(TwoPointWaveError):
    """Vector/matrix dimensions do not match the discrete system."""


class SingularMatrixError(TwoPointWaveError):
    """The time-step iteration matrix could not be factored."""

    def __init__(self, dt: float, detail: str = ""):
        self.dt = dt
        msg = f"midpoint iteration matrix is singular at dt={dt!r}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class OrderError(TwoPointWaveError):
    """Smooth data lacks a derivative required by the compatibility recurrence."""


class UnknownFormError(TwoPointWaveError):
    """Requested manufactured-solution form is not in the registry."""


class InsufficientDataError(TwoPointWaveError):
    """Too few usable samples to fit a decay rate."""


class TooFewSamplesError(TwoPointWaveError):
    """Fewer records than the finite-difference stencil needs."""


class ConfigError(TwoPointWaveError):
    """Scenario config file could not be parsed or is inconsistent."""
