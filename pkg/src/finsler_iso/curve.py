"""Sampled planar curves, the common input of every curve functional."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, NotClosedError, TooCoarseError, ZeroVectorError

MIN_SAMPLES = 16
CLOSURE_TOL = 1e-10
CSV_HEADER = ("t", "x1", "x2", "dx1", "dx2")


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SampledCurve:
    """Uniform samples of a curve on [t0, t1] with exact velocities.

    Closed curves repeat the first sample as the last one.
    """

    t: np.ndarray
    x1: np.ndarray
    x2: np.ndarray
    dx1: np.ndarray
    dx2: np.ndarray
    closed: bool = True

    def __post_init__(self):
        for name in ("t", "x1", "x2", "dx1", "dx2"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        n = self.t.size
        if any(getattr(self, k).shape != (n,) for k in ("x1", "x2", "dx1", "dx2")):
            raise ValueError("all sample arrays must be 1-D with the same length")
        if n < MIN_SAMPLES:
            raise TooCoarseError(f"need at least {MIN_SAMPLES} samples, got {n}")
        steps = np.diff(self.t)
        if np.any(steps <= 0) or not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
            raise ValueError("parameter samples must be uniform and increasing")
        if self.closed and (abs(self.x1[0] - self.x1[-1]) > CLOSURE_TOL
                            or abs(self.x2[0] - self.x2[-1]) > CLOSURE_TOL):
            raise NotClosedError("closed curve must repeat its first sample at the end")
        if np.max(np.hypot(self.x1, self.x2)) >= 1.0:
            raise DomainError("curve leaves the open unit disk")
        if np.any(self.dx1**2 + self.dx2**2 == 0):
            raise ZeroVectorError("curve is not regular (zero velocity sample)")

    @property
    def n(self) -> int:
        return self.t.size

    @property
    def spacing(self) -> float:
        return float(self.t[1] - self.t[0])

    @classmethod
    def from_functions(cls, pos: Callable, vel: Callable, n: int,
                       t0: float = 0.0, t1: float = 2 * np.pi, closed: bool = True):
        t = np.linspace(t0, t1, n)
        x1, x2 = pos(t)
        dx1, dx2 = vel(t)
        if closed:
            # force exact duplication of the endpoint
            x1, x2 = np.array(x1, dtype=float), np.array(x2, dtype=float)
            dx1, dx2 = np.array(dx1, dtype=float), np.array(dx2, dtype=float)
            for arr in (x1, x2, dx1, dx2):
                arr[-1] = arr[0]
        return cls(t, x1, x2, dx1, dx2, closed)

    def is_simple(self) -> bool:
        """O(N^2) self-intersection check; debugging aid only."""
        p = np.column_stack([self.x1, self.x2])
        segs = [(p[i], p[i + 1]) for i in range(len(p) - 1)]
        m = len(segs)

        def orient(a, b, c):
            return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

        for i in range(m):
            a, b = segs[i]
            for j in range(i + 2, m):
                if self.closed and i == 0 and j == m - 1:
                    continue
                c, d = segs[j]
                if (orient(a, b, c) * orient(a, b, d) < 0
                        and orient(c, d, a) * orient(c, d, b) < 0):
                    return False
        return True

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in zip(self.t, self.x1, self.x2, self.dx1, self.dx2):
            w.writerow([repr(float(v)) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, closed: bool = True) -> "SampledCurve":
        rows = list(csv.reader(io.StringIO(text)))
        if tuple(rows[0]) != CSV_HEADER:
            raise ValueError(f"expected header {','.join(CSV_HEADER)}, got {rows[0]}")
        data = np.array([[float(v) for v in r] for r in rows[1:] if r], dtype=float)
        return cls(*data.T, closed=closed)


def circle(a: float, n: int = 512, clockwise: bool = False) -> SampledCurve:
    """Centered circle of Euclidean radius a, counterclockwise by default."""
    sign = -1.0 if clockwise else 1.0
    return SampledCurve.from_functions(
        lambda t: (a * np.cos(t), sign * a * np.sin(t)),
        lambda t: (-a * np.sin(t), sign * a * np.cos(t)),
        n,
    )


def periodic_derivative(values: np.ndarray, spacing: float) -> np.ndarray:
    """Fourth-order central difference of samples on a closed periodic grid.

    ``values`` includes the duplicated endpoint; so does the result.
    """
    v = np.asarray(values, dtype=float)[:-1]
    d = (8.0 * (np.roll(v, -1) - np.roll(v, 1)) - (np.roll(v, -2) - np.roll(v, 2))) / (12.0 * spacing)
    return np.append(d, d[0])
