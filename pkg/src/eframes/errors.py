"""Exception types shared across the library."""


class DimensionMismatchError(ValueError):
    """Operands have incompatible dimensions."""


class SingularOperatorError(ValueError):
    """A matrix or operator is singular to the working tolerance."""


class NotHermitianError(ValueError):
    """An operator required to be Hermitian is not, to tolerance."""


class NotAFrameError(ValueError):
    """A family fails the frame (or controlled-frame) condition."""


class DualConditionError(ValueError):
    """A candidate dual violates its defining operator condition.

    Carries the measured deviation so callers can report it.
    """

    def __init__(self, message, deviation=None):
        super().__init__(message)
        self.deviation = deviation


class ConvergenceError(RuntimeError):
    """An iterative scheme cannot converge."""
