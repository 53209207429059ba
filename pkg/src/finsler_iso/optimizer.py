"""Direct maximization of Holmes-Thompson area at fixed Finsler length.

Curves are star-shaped about the origin, r(t) = a0 + sum_k (c_k cos kt + s_k sin kt),
and the length constraint is restored after every step by a uniform radial
rescaling of all coefficients.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .area import curve_area_ht, curve_length
from .curve import SampledCurve
from .errors import NonMonotoneError, OutOfDiskError, UnreachableLengthError

logger = logging.getLogger(__name__)

R_MIN = 0.01
R_MAX = 0.95
N_SAMPLES = 512
MAX_HARMONICS = 16


@dataclass(frozen=True, eq=False)
class FourierCurve:
    a0: float
    cos_coef: np.ndarray = field(default_factory=lambda: np.zeros(0))
    sin_coef: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        c = np.array(self.cos_coef, dtype=float).ravel()
        s = np.array(self.sin_coef, dtype=float).ravel()
        k = max(c.size, s.size)
        c = np.pad(c, (0, k - c.size))
        s = np.pad(s, (0, k - s.size))
        c.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "cos_coef", c)
        object.__setattr__(self, "sin_coef", s)

    @property
    def K(self) -> int:
        return self.cos_coef.size

    @classmethod
    def circle(cls, a: float, K: int = 0) -> "FourierCurve":
        return cls(a, np.zeros(K), np.zeros(K))

    @classmethod
    def from_vector(cls, z) -> "FourierCurve":
        z = np.asarray(z, dtype=float)
        k = (z.size - 1) // 2
        return cls(z[0], z[1:k + 1], z[k + 1:])

    def to_vector(self) -> np.ndarray:
        return np.concatenate([[self.a0], self.cos_coef, self.sin_coef])

    def with_harmonics(self, K: int) -> "FourierCurve":
        """Pad with zero harmonics or truncate to exactly K."""
        c = np.zeros(K)
        s = np.zeros(K)
        m = min(K, self.K)
        c[:m] = self.cos_coef[:m]
        s[:m] = self.sin_coef[:m]
        return FourierCurve(self.a0, c, s)

    def scaled(self, rho: float) -> "FourierCurve":
        return FourierCurve(rho * self.a0, rho * self.cos_coef, rho * self.sin_coef)

    def harmonic_amplitudes(self) -> np.ndarray:
        return np.hypot(self.cos_coef, self.sin_coef)

    def radius(self, t):
        t = np.asarray(t, dtype=float)
        k = np.arange(1, self.K + 1)
        kt = np.multiply.outer(t, k)
        return self.a0 + np.cos(kt) @ self.cos_coef + np.sin(kt) @ self.sin_coef

    def radius_range(self):
        t = np.linspace(0.0, 2 * math.pi, 8 * self.K + 64, endpoint=False)
        r = self.radius(t)
        return float(r.min()), float(r.max())

    def check(self):
        lo, hi = self.radius_range()
        if not (lo > R_MIN and hi < R_MAX):
            raise OutOfDiskError(f"radius range [{lo:.6g}, {hi:.6g}] outside ({R_MIN}, {R_MAX})")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "cos_coef", "sin_coef"])
        w.writerow([0, repr(self.a0), repr(0.0)])
        for k, (c, s) in enumerate(zip(self.cos_coef, self.sin_coef), start=1):
            w.writerow([k, repr(float(c)), repr(float(s))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "FourierCurve":
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        if rows[0] != ["k", "cos_coef", "sin_coef"]:
            raise ValueError(f"unexpected header {rows[0]}")
        body = sorted(((int(k), float(c), float(s)) for k, c, s in rows[1:]))
        if [r[0] for r in body] != list(range(len(body))):
            raise ValueError("rows must cover k = 0..K without gaps")
        return cls(body[0][1], [r[1] for r in body[1:]], [r[2] for r in body[1:]])


@lru_cache(maxsize=32)
def _basis(K: int, n: int):
    t = np.linspace(0.0, 2 * math.pi, n)
    kt = np.multiply.outer(t, np.arange(1, K + 1))
    return t, np.cos(kt), np.sin(kt)


def synthesize(fc: FourierCurve, n: int = N_SAMPLES) -> SampledCurve:
    """Sample (r cos t, r sin t) with velocities (r' cos t - r sin t, r' sin t + r cos t)."""
    if n < 64:
        raise ValueError(f"need n >= 64 samples, got {n}")
    fc.check()
    t, cos_kt, sin_kt = _basis(fc.K, n)
    k = np.arange(1, fc.K + 1)
    r = fc.a0 + cos_kt @ fc.cos_coef + sin_kt @ fc.sin_coef
    dr = cos_kt @ (k * fc.sin_coef) - sin_kt @ (k * fc.cos_coef)
    ct, st = np.cos(t), np.sin(t)
    x1, x2 = r * ct, r * st
    dx1, dx2 = dr * ct - r * st, dr * st + r * ct
    for arr in (x1, x2, dx1, dx2):
        arr[-1] = arr[0]
    return SampledCurve(t, x1, x2, dx1, dx2, closed=True)


def fourier_length(fc: FourierCurve, n: int = N_SAMPLES) -> float:
    return curve_length(synthesize(fc, n))


def fourier_area(fc: FourierCurve, n: int = N_SAMPLES) -> float:
    return curve_area_ht(synthesize(fc, n))


def fix_length(fc: FourierCurve, L_target: float, n: int = N_SAMPLES) -> FourierCurve:
    """Rescale all coefficients by one factor so the curve has Finsler length L_target."""
    current = fourier_length(fc, n)
    if current == L_target:
        return fc
    lo_r, hi_r = fc.radius_range()
    if lo_r <= 0:
        raise OutOfDiskError("curve does not surround the origin")
    # stay strictly inside the admissible radius band
    rho_hi = R_MAX / hi_r * (1 - 1e-12)
    rho_lo = R_MIN / lo_r * (1 + 1e-12)
    if rho_lo >= rho_hi:
        raise UnreachableLengthError("no admissible rescaling of this curve exists")

    def gap(rho):
        return fourier_length(fc.scaled(rho), n) - L_target

    if gap(rho_hi) < 0 or gap(rho_lo) > 0:
        raise UnreachableLengthError(
            f"target length {L_target} outside the reachable range of radial rescalings"
        )
    rho = brentq(gap, rho_lo, rho_hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    out = fc.scaled(rho)
    err = abs(fourier_length(out, n) - L_target) / L_target
    if err > 1e-10:
        raise UnreachableLengthError(f"length restoration stalled at relative error {err:.3e}")
    return out


@dataclass
class OptimizerOptions:
    max_iter: int = 10_000
    ftol: float = 1e-12
    gtol: float = 1e-6
    fd_step: float = 1e-6
    initial_step: float = 1.0
    max_halvings: int = 40
    monotone_tol: float = 1e-10
    n_samples: int = N_SAMPLES


@dataclass
class OptimizerReport:
    final_curve: FourierCurve
    area_history: np.ndarray
    constraint_violation_history: np.ndarray
    iterations: int
    converged: bool
    reason: str = ""

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["iter", "area", "violation"])
        for i, (a, v) in enumerate(zip(self.area_history, self.constraint_violation_history)):
            w.writerow([i, f"{a:.17g}", f"{v:.17g}"])
        return buf.getvalue()


def _fd_gradients(z, n, h):
    g_area = np.empty_like(z)
    g_len = np.empty_like(z)
    for i in range(z.size):
        e = np.zeros_like(z)
        e[i] = h
        cp = synthesize(FourierCurve.from_vector(z + e), n)
        cm = synthesize(FourierCurve.from_vector(z - e), n)
        g_area[i] = (curve_area_ht(cp) - curve_area_ht(cm)) / (2 * h)
        g_len[i] = (curve_length(cp) - curve_length(cm)) / (2 * h)
    return g_area, g_len


def optimize_isoperimetric(L_target: float, init: FourierCurve, K: int,
                           opts: OptimizerOptions | None = None) -> OptimizerReport:
    """Projected gradient ascent of A_HT over Fourier coefficients at fixed length.

    Each iteration projects the finite-difference area gradient onto the
    tangent space of the length constraint, steps with a backtracking line
    search, and restores the length with ``fix_length``. Only steps that
    raise the area are accepted. A run that reaches the radius guard stops
    unconverged with reason ``"boundary"``.
    """
    opts = opts or OptimizerOptions()
    if not 0 <= K <= MAX_HARMONICS:
        raise ValueError(f"K must lie in [0, {MAX_HARMONICS}], got {K}")
    n = opts.n_samples
    fc = fix_length(init.with_harmonics(K), L_target, n)
    area = fourier_area(fc, n)
    areas = [area]
    violations = [abs(fourier_length(fc, n) - L_target)]
    step = opts.initial_step
    converged, reason, iterations = False, "max_iter", 0

    for _ in range(opts.max_iter):
        z = fc.to_vector()
        try:
            g_area, g_len = _fd_gradients(z, n, opts.fd_step)
        except OutOfDiskError:
            # iterate sits on the radius guard; the stencil cannot be evaluated
            reason = "boundary"
            break
        d = g_area - (g_area @ g_len) / (g_len @ g_len) * g_len
        if np.linalg.norm(d) < opts.gtol:
            converged, reason = True, "gtol"
            break
        accepted = None
        for _ in range(opts.max_halvings):
            try:
                trial = fix_length(FourierCurve.from_vector(z + step * d), L_target, n)
                trial_area = fourier_area(trial, n)
            except (OutOfDiskError, UnreachableLengthError):
                step /= 2
                continue
            if trial_area > area:
                accepted = trial
                break
            step /= 2
        if accepted is None:
            converged, reason = True, "no_ascent_step"
            break
        gain = trial_area - area
        if gain < -opts.monotone_tol:
            raise NonMonotoneError(f"area dropped by {-gain:.3e}")
        fc, area = accepted, trial_area
        iterations += 1
        areas.append(area)
        violations.append(abs(fourier_length(fc, n) - L_target))
        step *= 2
        if gain < opts.ftol:
            converged, reason = True, "ftol"
            break

    logger.info("optimizer stopped after %d steps (%s), area %.15g", iterations, reason, area)
    return OptimizerReport(fc, np.array(areas), np.array(violations), iterations, converged, reason)


@dataclass(frozen=True)
class PerturbationRow:
    k: int
    eps: float
    delta_area: float

    @property
    def ratio(self) -> float:
        return self.delta_area / self.eps**2 if self.eps else 0.0


def perturbation_study(a: float, modes, eps_list, n: int = N_SAMPLES) -> list[PerturbationRow]:
    """Area change of r = a + eps cos kt after restoring the circle's length."""
    K = max(modes)
    base = FourierCurve.circle(a, K)
    L0 = fourier_length(base, n)
    A0 = fourier_area(base, n)
    rows = []
    for k in modes:
        for eps in eps_list:
            c = np.zeros(K)
            c[k - 1] = eps
            fc = fix_length(FourierCurve(a, c, np.zeros(K)), L0, n)
            rows.append(PerturbationRow(k, float(eps), fourier_area(fc, n) - A0))
    return rows
