"""Exception types raised by the toolkit."""


class FinslerIsoError(Exception):
    """Base class for all toolkit errors."""


class DomainError(FinslerIsoError, ValueError):
    """An argument lies outside the admissible domain."""


class ZeroVectorError(FinslerIsoError, ValueError):
    """A tangent vector that must be nonzero is zero."""


class ConvergenceError(FinslerIsoError, RuntimeError):
    """An adaptive procedure failed to reach its tolerance."""


class NotClosedError(FinslerIsoError, ValueError):
    pass


class TooCoarseError(FinslerIsoError, ValueError):
    pass


class OrderError(FinslerIsoError, ValueError):
    """Interval endpoints are not strictly increasing."""


class OutOfDiskError(DomainError):
    """A curve leaves the admissible radius band."""


class UnreachableLengthError(FinslerIsoError, ValueError):
    pass


class NonMonotoneError(FinslerIsoError, RuntimeError):
    """The optimizer accepted a step that lowered the area."""
