"""Exception and warning types shared across the package."""


class ConvergenceError(RuntimeError):
    """A truncated series failed to meet its tolerance within the term budget."""


class NearSingularError(ArithmeticError):
    """The slice derivative at the preimage is below the floor.

    Raised when a density is requested too close to a turning value, where
    the pushforward blows up like an inverse square root.
    """


class OutOfRangeError(ValueError):
    """Requested value lies outside the image of a monotonic piece."""


class DegenerateRangeError(ValueError):
    """Histogram range has zero width."""


class MonotonicityError(RuntimeError):
    """A sampled check found a piece that is not monotonic."""


class ResolutionWarning(UserWarning):
    """Scan grid too coarse: a grid cell hides more than one derivative sign change."""
