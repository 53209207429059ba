"""Spherically symmetric Finsler metrics F = |y| phi(|x|, <x,y>/|y|).

Two models are supported: Berwald's flat (k=0) metric on the open unit
disk and the Euclidean metric used as a baseline.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ZeroVectorError

ADMISSIBILITY_TOL = 1e-12


class MetricKind(enum.Enum):
    BERWALD_K0 = "berwald_k0"
    EUCLIDEAN = "euclidean"


@dataclass(frozen=True)
class MetricModel:
    kind: MetricKind = MetricKind.BERWALD_K0

    @property
    def domain_radius(self) -> float:
        return 1.0 if self.kind is MetricKind.BERWALD_K0 else math.inf

    @classmethod
    def berwald(cls) -> "MetricModel":
        return cls(MetricKind.BERWALD_K0)

    @classmethod
    def euclidean(cls) -> "MetricModel":
        return cls(MetricKind.EUCLIDEAN)


BERWALD = MetricModel.berwald()
EUCLIDEAN = MetricModel.euclidean()


class PhiJet(NamedTuple):
    phi: float
    phi_r: float
    phi_s: float
    phi_ss: float


def _check_rs(model: MetricModel, r, s):
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    if np.any(r < 0) or np.any(r >= model.domain_radius):
        raise DomainError(f"r must lie in [0, {model.domain_radius}), got {r}")
    if np.any(np.abs(s) > r + ADMISSIBILITY_TOL):
        raise DomainError(f"admissibility |s| <= r violated: r={r}, s={s}")
    return r, s


def _unwrap(x):
    return x.item() if isinstance(x, np.ndarray) and x.ndim == 0 else x


def phi(model: MetricModel, r, s):
    """phi(r, s) of the metric; accepts scalars or broadcastable arrays."""
    r, s = _check_rs(model, r, s)
    if model.kind is MetricKind.EUCLIDEAN:
        return _unwrap(np.ones(np.broadcast(r, s).shape))
    rho = np.sqrt(1.0 - r * r + s * s)
    return _unwrap((rho + s) ** 2 / ((1.0 - r * r) ** 2 * rho))


def phi_jet(model: MetricModel, r, s) -> PhiJet:
    """phi and its partials phi_r, phi_s, phi_ss (analytic).

    With rho = sqrt(1 - r^2 + s^2) and w = 1 - r^2 the partials reduce to
    phi_s = (rho+s)^2 (2 rho - s) / (w^2 rho^3) and phi_ss = 3 / rho^5.
    """
    r, s = _check_rs(model, r, s)
    if model.kind is MetricKind.EUCLIDEAN:
        one = np.ones(np.broadcast(r, s).shape)
        zero = np.zeros_like(one)
        return PhiJet(_unwrap(one), _unwrap(zero), _unwrap(zero), _unwrap(zero))
    w = 1.0 - r * r
    rho = np.sqrt(w + s * s)
    ps2 = (rho + s) ** 2
    value = ps2 / (w * w * rho)
    d_r = -r / (w * rho**3) + 4.0 * r * ps2 / (w**3 * rho)
    d_s = ps2 * (2.0 * rho - s) / (w * w * rho**3)
    d_ss = 3.0 / rho**5
    return PhiJet(_unwrap(value), _unwrap(d_r), _unwrap(d_s), _unwrap(d_ss))


def finsler_norm(model: MetricModel, x, y) -> float:
    """F(x, y) = |y| phi(|x|, <x,y>/|y|) for a point x and tangent vector y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = math.hypot(x[0], x[1])
    if r >= model.domain_radius:
        raise DomainError(f"|x| = {r} is outside the domain")
    ny = math.hypot(y[0], y[1])
    if ny == 0.0:
        raise ZeroVectorError("tangent vector y must be nonzero")
    s = float(x @ y) / ny
    # rounding can push |s| a hair past r
    s = min(max(s, -r), r)
    return ny * phi(model, r, s)


def t_integrand(model: MetricModel, r, s):
    """Holmes-Thompson integrand T(r, s) = phi (phi - s phi_s + (r^2 - s^2) phi_ss), n = 2."""
    jet = phi_jet(model, r, s)
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    return _unwrap(jet.phi * ((jet.phi - s * jet.phi_s) + (r * r - s * s) * jet.phi_ss))


def t_integrand_rho(r, s):
    """Closed form T = (3 - 2 rho^2) / (rho^6 (rho - s)^2) for the Berwald metric."""
    r, s = _check_rs(BERWALD, r, s)
    rho = np.sqrt(1.0 - r * r + s * s)
    return _unwrap((3.0 - 2.0 * rho * rho) / (rho**6 * (rho - s) ** 2))
