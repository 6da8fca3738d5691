"""Exception types shared across the package."""


class UsageError(ValueError):
    """Bad arguments: level mismatch, non-positive step, index out of range."""


class ValidationError(ValueError):
    """An input object fails a defining identity (e.g. ``J^2 != -Id``)."""


class DegenerateFrameError(ValueError):
    """A frame or chart Jacobian is singular (or numerically so) at a point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point
