"""Lagrangian h = f + lambda g and the sufficiency checks along centered circles.

Covers Euler-Lagrange residuals, the polar first integral, the multiplier of
the critical circles, normality, the Weierstrass excess, the velocity
Hessian of h, and the Jacobi / conjugate-point determinant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import solve_ivp

from .area import f_partials, g_partials, green_integrand_f, length_integrand_g
from .curve import SampledCurve, periodic_derivative
from .errors import DomainError, OrderError, TooCoarseError, ZeroVectorError
from .quadrature import FUNCTION_QUAD, QuadratureSpec, integrate

MIN_EL_SAMPLES = 64
TANGENT_EXCLUSION = 1e-3


def _check_a(a):
    if not 0.0 < a < 1.0:
        raise DomainError(f"circle radius must lie in (0, 1), got {a}")


def _circle_state(a, t):
    c, s = np.cos(t), np.sin(t)
    return a * c, a * s, -a * s, a * c


# --- Lagrangian and Euler-Lagrange ------------------------------------------


def lagrangian_h(x1, x2, dx1, dx2, lam: float):
    return green_integrand_f(x1, x2, dx1, dx2) + lam * length_integrand_g(x1, x2, dx1, dx2)


def h_partials(x1, x2, dx1, dx2, lam: float):
    """(h_x1, h_x2, h_dx1, h_dx2)."""
    fp = f_partials(x1, x2, dx1, dx2)
    gp = g_partials(x1, x2, dx1, dx2)
    return tuple(fi + lam * gi for fi, gi in zip(fp, gp))


def el_residual(c: SampledCurve, lam: float):
    """Per-sample residuals h_xi - d/dt h_dxi of both Euler-Lagrange equations.

    The time derivative of the momenta h_dxi is taken by fourth-order
    central differences on the periodic sample grid.
    """
    if c.n < MIN_EL_SAMPLES:
        raise TooCoarseError(f"need at least {MIN_EL_SAMPLES} samples, got {c.n}")
    if not c.closed:
        raise ValueError("residuals use a periodic stencil; curve must be closed")
    hx1, hx2, p1, p2 = h_partials(c.x1, c.x2, c.dx1, c.dx2, lam)
    h = c.spacing
    return hx1 - periodic_derivative(p1, h), hx2 - periodic_derivative(p2, h)


def lambda0(a: float) -> float:
    """Multiplier making the centered circle of radius a an extremal."""
    _check_a(a)
    a2 = a * a
    return -a * (1.0 + a2 - a2 * a2 / 8.0) / (1.0 + a2 - 2.0 * a2 * a2)


# --- polar first integral ------------------------------------------------------


def _polar_area_term(r):
    return r * r * (4.0 - r * r) / (8.0 * (1.0 - r * r) ** 2.5)


def first_integral(r, rdot, lam: float):
    """Conserved quantity of the autonomous polar Lagrangian (t is the polar angle)."""
    r = np.asarray(r, dtype=float)
    rdot = np.asarray(rdot, dtype=float)
    if np.any(r <= 0) or np.any(r >= 1):
        raise DomainError(f"r must lie in (0, 1), got {r}")
    q = rdot * rdot
    val = _polar_area_term(r) + lam * r * r * (q + r * r) / (q + r * r - r**4) ** 1.5
    return val.item() if val.ndim == 0 else val


def polar_acceleration(r: float, rdot: float, lam: float) -> float:
    """r'' solving d/dt C(r, r'^2) = 0, with C the first integral.

    Writing q = r'^2, C_r r' + 2 C_q r' r'' = 0 gives r'' = -C_r / (2 C_q),
    which stays regular at r' = 0.
    """
    q = rdot * rdot
    r2 = r * r
    d = q + r2 - r2 * r2
    n = r2 * q + r2 * r2
    area_r = r * (1.0 + r2 - r2 * r2 / 8.0) / (1.0 - r2) ** 3.5
    g_r = (2.0 * r * q + 4.0 * r2 * r) / d**1.5 - 1.5 * n * (2.0 * r - 4.0 * r2 * r) / d**2.5
    g_q = r2 / d**1.5 - 1.5 * n / d**2.5
    return -(area_r + lam * g_r) / (2.0 * lam * g_q)


def shoot_polar(r0: float, rdot0: float, lam: float, t_end: float = 2 * math.pi,
                rtol: float = 1e-12, atol: float = 1e-14, dense: bool = True):
    """Integrate the polar extremal ODE from (r0, r0') over [0, t_end]."""
    if lam == 0:
        raise DomainError("lambda must be nonzero")

    def rhs(_t, y):
        return [y[1], polar_acceleration(y[0], y[1], lam)]

    def leaves_disk(_t, y):
        return min(y[0] - 1e-3, 0.99 - y[0])

    leaves_disk.terminal = True
    sol = solve_ivp(rhs, (0.0, t_end), [r0, rdot0], method="DOP853",
                    rtol=rtol, atol=atol, dense_output=dense, events=leaves_disk)
    if sol.status != 0:
        raise DomainError(f"polar extremal left the admissible band: {sol.message}")
    return sol


def first_integral_drift(r0: float, rdot0: float, lam: float, t_end: float = 2 * math.pi,
                         n_check: int = 2001) -> float:
    """max |C(t) - C(0)| along a shooting solution."""
    sol = shoot_polar(r0, rdot0, lam, t_end)
    t = np.linspace(0.0, t_end, n_check)
    r, rdot = sol.sol(t)
    c = first_integral(r, rdot, lam)
    return float(np.max(np.abs(c - c[0])))


# --- normality -----------------------------------------------------------------


def normality(a: float, t):
    """(P1, P2) = (1 + 2a^2) / (1 - a^2)^(5/2) (cos t, sin t) along the circle."""
    _check_a(a)
    k = (1.0 + 2.0 * a * a) / (1.0 - a * a) ** 2.5
    return k * np.cos(t), k * np.sin(t)


def _fd(fun, x, h):
    return (8.0 * (fun(x + h) - fun(x - h)) - (fun(x + 2 * h) - fun(x - 2 * h))) / (12.0 * h)


def normality_fd(a: float, t: float, h_x: float = 1e-5, h_t: float = 1e-3):
    """g_xi - d/dt g_dxi along the circle, every derivative by finite differences."""
    _check_a(a)

    def g_at(t_, i, shift):
        z = list(_circle_state(a, t_))
        z[i] += shift
        return length_integrand_g(*z)

    out = []
    for i in (0, 1):
        g_x = _fd(lambda e: g_at(t, i, e), 0.0, h_x)
        momentum = lambda t_: _fd(lambda e: g_at(t_, i + 2, e), 0.0, h_x)  # noqa: E731
        out.append(g_x - _fd(momentum, t, h_t))
    return tuple(out)


# --- Weierstrass excess ------------------------------------------------------------


def _check_e_args(x, xdot, p):
    x, xdot, p = (np.asarray(v, dtype=float) for v in (x, xdot, p))
    if x @ x >= 1.0:
        raise DomainError("x must lie inside the open unit disk")
    if not xdot.any() or not p.any():
        raise ZeroVectorError("directions must be nonzero")
    return x, xdot, p


def h_velocity_gradient(x1, x2, dx1, dx2, lam: float):
    """(h_dx1, h_dx2) written with A = sqrt(1 - |x|^2), alpha and beta.

    h_dxi = -/+ x_j (A^2 + 3) / (8 A^5)
            + lam (A^2 dxi (alpha^2 - beta^2) + beta xi (3 alpha^2 - beta^2)) / (alpha^3 A^4)
    """
    a2 = 1.0 - x1 * x1 - x2 * x2
    a = np.sqrt(a2)
    beta = x1 * dx1 + x2 * dx2
    alpha = np.sqrt(a2 * (dx1 * dx1 + dx2 * dx2) + beta * beta)
    k = (a2 + 3.0) / (8.0 * a**5)
    den = alpha**3 * a2 * a2

    def g_part(xi, vi):
        return (a2 * vi * (alpha**2 - beta**2) + beta * xi * (3.0 * alpha**2 - beta**2)) / den

    return -x2 * k + lam * g_part(x1, dx1), x1 * k + lam * g_part(x2, dx2)


def _excess(x1, x2, v1, v2, p1, p2, lam):
    h_v1, h_v2 = h_velocity_gradient(x1, x2, v1, v2, lam)
    return (lagrangian_h(x1, x2, p1, p2, lam) - lagrangian_h(x1, x2, v1, v2, lam)
            - (p1 - v1) * h_v1 - (p2 - v2) * h_v2)


def weierstrass_e(x, xdot, p, lam: float) -> float:
    """E = h(x, p) - h(x, xdot) - (p - xdot) . grad_v h(x, xdot)."""
    x, xdot, p = _check_e_args(x, xdot, p)
    if np.array_equal(p, xdot):
        return 0.0
    return float(_excess(*x, *xdot, *p, lam))


def weierstrass_e_reduced(x, xdot, p, lam: float) -> float:
    """The same excess computed from g alone: the f-terms cancel identically."""
    x, xdot, p = _check_e_args(x, xdot, p)
    if np.array_equal(p, xdot):
        return 0.0
    _, _, g_v1, g_v2 = g_partials(*x, *xdot)
    excess = (length_integrand_g(*x, *p) - length_integrand_g(*x, *xdot)
              + (xdot[0] - p[0]) * g_v1 + (xdot[1] - p[1]) * g_v2)
    return float(lam * excess)


class EScan(NamedTuple):
    max_e: float
    min_abs_e: float
    t: np.ndarray
    point_max: np.ndarray


def e_scan(a: float, lam: float, n_points: int, n_dirs: int) -> EScan:
    """Sample E over points of the circle and directions away from the tangent ray.

    Test directions have the tangent's Euclidean length; directions within
    ``TANGENT_EXCLUSION`` radians of the tangent are skipped.
    """
    _check_a(a)
    if n_points < 1 or n_dirs < 1:
        raise ValueError("n_points and n_dirs must be positive")
    ts = 2 * math.pi * np.arange(n_points) / n_points
    psis = 2 * math.pi * np.arange(n_dirs) / n_dirs
    t, psi = np.meshgrid(ts, psis, indexing="ij")
    x1, x2, v1, v2 = _circle_state(a, t)
    gap = np.abs((psi - (t + math.pi / 2) + math.pi) % (2 * math.pi) - math.pi)
    keep = gap >= TANGENT_EXCLUSION
    e = np.where(keep, _excess(x1, x2, v1, v2, a * np.cos(psi), a * np.sin(psi), lam), -np.inf)
    point_max = e.max(axis=1)
    min_abs = float(np.min(np.abs(e[keep]))) if keep.any() else math.inf
    return EScan(float(point_max.max()), min_abs, ts, point_max)


# --- second variation ------------------------------------------------------------


def constraint_density(a: float) -> float:
    """U = (2a^2 + 1) / (a (1 - a^2)^(5/2))."""
    _check_a(a)
    return (2.0 * a * a + 1.0) / (a * (1.0 - a * a) ** 2.5)


def second_variation_form(a: float, t: float, y) -> float:
    """sum h_{dxi dxj} y_i y_j at the critical circle, closed rank-one form."""
    _check_a(a)
    y = np.asarray(y, dtype=float)
    proj = math.cos(t) * y[0] + math.sin(t) * y[1]
    return lambda0(a) * constraint_density(a) * proj * proj


def velocity_hessian_fd(a: float, t: float, lam: float | None = None, step: float = 1e-4) -> np.ndarray:
    """2x2 velocity Hessian of h at the circle sample, by second differences of h."""
    _check_a(a)
    lam = lambda0(a) if lam is None else lam
    x1, x2, v1, v2 = _circle_state(a, t)
    v = np.array([v1, v2])
    e = step * np.eye(2)

    def h(vel):
        return lagrangian_h(x1, x2, vel[0], vel[1], lam)

    h0 = h(v)
    hess = np.empty((2, 2))
    for i in range(2):
        hess[i, i] = (h(v + e[i]) - 2 * h0 + h(v - e[i])) / step**2
    hess[0, 1] = hess[1, 0] = (h(v + e[0] + e[1]) - h(v + e[0] - e[1])
                               - h(v - e[0] + e[1]) + h(v - e[0] - e[1])) / (4 * step**2)
    return hess


# --- Jacobi equation and conjugate points --------------------------------------------


@dataclass(frozen=True)
class JacobiData:
    """Constants of w'' + b w + mu c = 0 along the critical circle of radius a."""

    a: float
    b: float
    c: float
    U: float
    lambda0: float

    @property
    def k(self) -> float:
        return math.sqrt(-self.b)


def jacobi_coefficients(a: float) -> JacobiData:
    _check_a(a)
    a2 = a * a
    q = a2 * a2 - 8.0 * a2 - 8.0
    b = (2 * a2**4 + 13 * a2**3 + 51 * a2**2 + 16 * a2 + 8) / ((2 * a2 + 1) * (1 - a2) * q)
    c = 8.0 * a * (2 * a2 + 1) * (1 - a2) / q
    return JacobiData(a, b, c, constraint_density(a), lambda0(a))


def _bracket(x: float) -> float:
    """sinh(x) - x cosh(x), with a series below 0.1 to avoid cancellation."""
    if x < 0.1:
        x2 = x * x
        return -x * x2 * (1 / 3 + x2 * (1 / 30 + x2 * (1 / 840 + x2 / 45360)))
    return math.sinh(x) - x * math.cosh(x)


def _closed_form_d(jd: JacobiData, dt: float, check: bool) -> float:
    x = jd.k * dt / 2.0
    prefactor = 4.0 * jd.c * jd.U / jd.k**3
    bracket = math.sinh(x) * _bracket(x)
    if check and not (prefactor < 0 and bracket < 0):
        raise ArithmeticError(f"sign structure broken: prefactor={prefactor}, bracket={bracket}")
    return prefactor * bracket


def conjugate_determinant(a: float, t0: float, t1: float) -> float:
    """Closed-form determinant D(t0, t1); depends only on t1 - t0.

    D is the product of 4 c U / (-b)^(3/2) < 0 and
    sinh(x) (sinh(x) - x cosh(x)) < 0, x = sqrt(-b) (t1 - t0) / 2; both
    signs are checked on every call.
    """
    if not t1 > t0:
        raise OrderError(f"need t1 > t0, got t0={t0}, t1={t1}")
    return _closed_form_d(jacobi_coefficients(a), t1 - t0, check=True)


def conjugate_matrix(a: float, t0: float, t1: float,
                     quad: QuadratureSpec = FUNCTION_QUAD, origin: float | None = None) -> np.ndarray:
    """Rows theta(t0), theta(t1) and the integrals of U theta over [t0, t1].

    The hyperbolic basis is sinh(k (t - origin)), cosh(k (t - origin)),
    -c/b. Moving the origin is a change of basis with determinant 1, so
    the determinant does not depend on it; the default (interval midpoint)
    keeps entries near exp(k (t1 - t0) / 2) and avoids cancellation.
    ``origin=0`` reproduces the literal basis sinh(kt), cosh(kt).
    """
    if not t1 > t0:
        raise OrderError(f"need t1 > t0, got t0={t0}, t1={t1}")
    jd = jacobi_coefficients(a)
    k = jd.k
    tau = 0.5 * (t0 + t1) if origin is None else origin
    basis = (
        lambda t: np.sinh(k * (t - tau)),
        lambda t: np.cosh(k * (t - tau)),
        lambda t: np.full_like(np.asarray(t, dtype=float), -jd.c / jd.b),
    )
    rows = [
        [float(th(np.float64(t0))) for th in basis],
        [float(th(np.float64(t1))) for th in basis],
        [integrate(lambda t, th=th: jd.U * th(t), t0, t1, quad) for th in basis],
    ]
    return np.array(rows)


def conjugate_determinant_numeric(a: float, t0: float, t1: float,
                                  quad: QuadratureSpec = FUNCTION_QUAD,
                                  origin: float | None = None) -> float:
    """D(t0, t1) as the determinant of quadrature-built entries."""
    return float(np.linalg.det(conjugate_matrix(a, t0, t1, quad, origin)))


def conjugate_scan(a: float, span: float, step: float):
    """Intervals (dt_i, dt_i+1) of (0, span] on which D changes sign."""
    if span <= 0 or step <= 0:
        raise DomainError("span and step must be positive")
    if span > 4 * math.pi + 1e-12:
        raise DomainError("span must not exceed 4 pi")
    dts, values = conjugate_profile(a, span, step)
    n = dts.size
    return [(float(dts[i]), float(dts[i + 1])) for i in range(n - 1)
            if values[i] == 0 or values[i] * values[i + 1] < 0]


def conjugate_profile(a: float, span: float, step: float):
    """(dt grid, D values) used for reporting."""
    jd = jacobi_coefficients(a)
    n = int(math.floor(span / step + 1e-9))
    dts = step * np.arange(1, n + 1)
    return dts, np.array([_closed_form_d(jd, dt, check=False) for dt in dts])
