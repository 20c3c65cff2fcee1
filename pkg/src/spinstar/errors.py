"""Exception hierarchy shared by all spinstar modules."""


class SpinStarError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SpinStarError, ValueError):
    """An argument lies outside the domain of the operation."""


class ValidationError(SpinStarError, ValueError):
    """An input object violates a structural invariant (hermiticity, trace, ...)."""


class UnsupportedOrderError(DomainError):
    """A truncation order is not available for the requested convention."""


class ConsistencyError(SpinStarError, RuntimeError):
    """An internal cross-check failed; always indicates a bug."""


class IntegrationError(SpinStarError, ArithmeticError):
    """A numerical integrator could not meet its tolerance."""

    def __init__(self, message: str, achieved_error: float | None = None):
        super().__init__(message)
        self.achieved_error = achieved_error
