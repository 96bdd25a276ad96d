"""Exception types shared by every module."""


class QuadForgeError(Exception):
    """Base class for all library errors."""


class DomainError(QuadForgeError, ValueError):
    """An argument lies outside the domain of the operation."""


class FormatError(QuadForgeError, ValueError):
    """Malformed text or wire-format input."""


class CapacityError(QuadForgeError):
    """The request exceeds the desk-scale enumeration cap."""


class DegenerateError(DomainError):
    """Geometric configuration is degenerate (dependent vectors, zero coordinates)."""


class RankError(QuadForgeError, ValueError):
    """Matrix is rank deficient below the pivot threshold."""

    def __init__(self, message, rank):
        super().__init__(message)
        self.rank = rank


class ConvergenceError(QuadForgeError, RuntimeError):
    """Iteration stopped without meeting its tolerance.

    ``x`` holds the last iterate and ``iterations`` the number of steps taken.
    """

    def __init__(self, message, x=None, iterations=0):
        super().__init__(message)
        self.x = x
        self.iterations = iterations


class ContractionError(QuadForgeError, ValueError):
    """The affine map is not a contraction in any supported norm."""
