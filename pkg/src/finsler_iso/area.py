"""Holmes-Thompson area element, Green line-integral area and Finsler length."""

from __future__ import annotations

import math

import numpy as np

from .curve import SampledCurve
from .errors import DomainError, NotClosedError, ZeroVectorError
from .metric import BERWALD, t_integrand
from .quadrature import CURVE_QUAD, FUNCTION_QUAD, QuadratureSpec, integrate, integrate_samples

FD_STEP = 1e-5


def _check_radius(r):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0) or np.any(r >= 1.0):
        raise DomainError(f"radius must lie in [0, 1), got {r}")
    return r


def _one_minus_r2(x1, x2):
    w = 1.0 - np.asarray(x1, dtype=float) ** 2 - np.asarray(x2, dtype=float) ** 2
    if np.any(w <= 0):
        raise DomainError("point is not inside the open unit disk")
    return w


def _scalar(v):
    return v.item() if isinstance(v, np.ndarray) and v.ndim == 0 else v


def sigma_ht_closed(r):
    """Holmes-Thompson area density (1 + r^2 - r^4/8) / (1 - r^2)^(7/2)."""
    r = _check_radius(r)
    r2 = r * r
    return _scalar((1.0 + r2 - r2 * r2 / 8.0) / (1.0 - r2) ** 3.5)


def sigma_ht_integrand(r: float, t):
    """Integrand of the angular average defining sigma_HT, including the 1/pi."""
    sin2 = np.sin(t) ** 2
    q = 1.0 - r * r * sin2
    return (1.0 + 2.0 * r * r * sin2) / (q**3 * (np.sqrt(q) - r * np.cos(t)) ** 2) / np.pi


def sigma_ht_quadrature(r: float, quad: QuadratureSpec = FUNCTION_QUAD) -> float:
    """sigma_HT(r) by numerical angular averaging over [0, pi]."""
    r = float(_check_radius(r))
    return integrate(lambda t: sigma_ht_integrand(r, t), 0.0, math.pi, quad)


def sigma_ht_from_t(r: float, quad: QuadratureSpec = FUNCTION_QUAD) -> float:
    """sigma_HT(r) averaged from the general T(r, r cos t) integrand."""
    r = float(_check_radius(r))
    return integrate(lambda t: t_integrand(BERWALD, r, r * np.cos(t)) / np.pi, 0.0, math.pi, quad)


def green_potential(x1, x2):
    """The 1-form (P, Q) whose curl is sigma_HT."""
    w = _one_minus_r2(x1, x2)
    k = (x1 * x1 + x2 * x2 - 4.0) / (8.0 * w**2.5)
    return x2 * k, -x1 * k


def green_integrand_f(x1, x2, dx1, dx2):
    """Signed area density f = (|x|^2 - 4) (x2 dx1 - x1 dx2) / (8 (1 - |x|^2)^(5/2))."""
    w = _one_minus_r2(x1, x2)
    return _scalar((x1 * x1 + x2 * x2 - 4.0) * (x2 * dx1 - x1 * dx2) / (8.0 * w**2.5))


def length_integrand_g(x1, x2, dx1, dx2):
    """Length density g(x, dx), positively homogeneous of degree 1 in dx.

    g is the even part (F(x, v) + F(x, -v)) / 2 of the Berwald metric; the
    odd remainder 2 <x,v> / (1 - |x|^2)^2 is an exact derivative, so both
    give the same length on closed curves.
    """
    w = _one_minus_r2(x1, x2)
    v2 = np.asarray(dx1) ** 2 + np.asarray(dx2) ** 2
    if np.any(v2 == 0):
        raise ZeroVectorError("velocity must be nonzero")
    beta = x1 * dx1 + x2 * dx2
    alpha2 = w * v2 + beta * beta
    return _scalar((alpha2 + beta * beta) / (w * w * np.sqrt(alpha2)))


def f_partials(x1, x2, dx1, dx2):
    """(f_x1, f_x2, f_dx1, f_dx2)."""
    w = _one_minus_r2(x1, x2)
    k = -(w + 3.0) / (8.0 * w**2.5)
    dk_dw = 3.0 / 16.0 * (w**-2.5 + 5.0 * w**-3.5)
    cross = x2 * dx1 - x1 * dx2
    return (
        -2.0 * x1 * dk_dw * cross - k * dx2,
        -2.0 * x2 * dk_dw * cross + k * dx1,
        k * x2,
        -k * x1,
    )


def g_partials(x1, x2, dx1, dx2):
    """(g_x1, g_x2, g_dx1, g_dx2) via logarithmic differentiation of g = N / (w^2 alpha)."""
    w = _one_minus_r2(x1, x2)
    v2 = dx1 * dx1 + dx2 * dx2
    beta = x1 * dx1 + x2 * dx2
    alpha2 = w * v2 + beta * beta
    alpha = np.sqrt(alpha2)
    num = alpha2 + beta * beta
    g = num / (w * w * alpha)

    def d(dw, dbeta):
        dalpha2 = dw * v2 + 2.0 * beta * dbeta
        return g * ((dalpha2 + 2.0 * beta * dbeta) / num - 2.0 * dw / w - 0.5 * dalpha2 / alpha2)

    out = []
    for xi, vi in ((x1, dx1), (x2, dx2)):
        out.append(d(-2.0 * xi, vi))
    for xi, vi in ((x1, dx1), (x2, dx2)):
        dalpha2 = 2.0 * w * vi + 2.0 * beta * xi
        out.append(g * ((dalpha2 + 2.0 * beta * xi) / num - 0.5 * dalpha2 / alpha2))
    return tuple(out)


def curve_length(c: SampledCurve, quad: QuadratureSpec = CURVE_QUAD) -> float:
    return integrate_samples(length_integrand_g(c.x1, c.x2, c.dx1, c.dx2), c.t, quad)


def curve_area_ht(c: SampledCurve, quad: QuadratureSpec = CURVE_QUAD) -> float:
    """Holmes-Thompson area enclosed by a closed curve; positive when counterclockwise."""
    if not c.closed:
        raise NotClosedError("area is only defined for closed curves")
    return integrate_samples(green_integrand_f(c.x1, c.x2, c.dx1, c.dx2), c.t, quad)


def green_consistency(x1: float, x2: float, step: float = FD_STEP) -> float:
    """|dQ/dx1 - dP/dx2 - sigma_HT(r)| with the curl taken by central differences."""
    _one_minus_r2(x1, x2)
    dq = (green_potential(x1 + step, x2)[1] - green_potential(x1 - step, x2)[1]) / (2 * step)
    dp = (green_potential(x1, x2 + step)[0] - green_potential(x1, x2 - step)[0]) / (2 * step)
    return float(abs(dq - dp - sigma_ht_closed(math.hypot(x1, x2))))
