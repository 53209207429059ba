"""Isoperimetric analysis for the k = 0 Berwald metric on the unit disk under Holmes-Thompson area."""

from .errors import (
    ConvergenceError,
    DomainError,
    FinslerIsoError,
    NonMonotoneError,
    NotClosedError,
    OrderError,
    OutOfDiskError,
    TooCoarseError,
    UnreachableLengthError,
    ZeroVectorError,
)
from .metric import BERWALD, EUCLIDEAN, MetricKind, MetricModel

__version__ = "0.1.0"

__all__ = [
    "BERWALD",
    "EUCLIDEAN",
    "ConvergenceError",
    "DomainError",
    "FinslerIsoError",
    "MetricKind",
    "MetricModel",
    "NonMonotoneError",
    "NotClosedError",
    "OrderError",
    "OutOfDiskError",
    "TooCoarseError",
    "UnreachableLengthError",
    "ZeroVectorError",
]
