"""Exception types raised by the library."""


class MonomialError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(MonomialError, ValueError):
    pass


class PreconditionError(MonomialError, ValueError):
    pass


class InfiniteLengthError(PreconditionError):
    """Raised when a length is requested for a non m-primary quotient."""


class UndefinedPolyhedronError(PreconditionError):
    pass


class RejectedFiltration(PreconditionError):
    """A table filtration failed the monotonicity or seam checks."""


class NoParameterReduction(PreconditionError):
    pass


class StabilizationError(MonomialError, RuntimeError):
    """An iterative computation did not stabilize within its cap.

    ``partial`` holds whatever was computed before giving up.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ResourceError(MonomialError, RuntimeError):
    pass


class InvariantViolation(MonomialError, AssertionError):
    """An identity that must hold exactly was found to fail."""
