"""Regenerate tests/frozen_values.py from a 50-digit mpmath evaluation.

Every constant is computed from its defining formula in mpmath, independently
of the package, and cross-checked against a second route where one exists
(quadrature for sigma and area, exact rationals for lambda0, b, c).

    python3 scripts/freeze_constants.py
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50
OUT = Path(__file__).resolve().parent.parent / "tests" / "frozen_values.py"


def sigma_closed(r):
    r = mp.mpf(r)
    return (1 + r**2 - r**4 / 8) / (1 - r**2) ** mp.mpf(3.5)


def sigma_integral(r):
    r = mp.mpf(r)

    def f(t):
        s2 = mp.sin(t) ** 2
        return (1 + 2 * r**2 * s2) / ((1 - r**2 * s2) ** 3 * (mp.sqrt(1 - r**2 * s2) - r * mp.cos(t)) ** 2)

    return mp.quad(f, [0, mp.pi / 2, mp.pi]) / mp.pi


def g(x1, x2, v1, v2):
    w = 1 - x1**2 - x2**2
    beta = x1 * v1 + x2 * v2
    alpha2 = w * (v1**2 + v2**2) + beta**2
    return (alpha2 + beta**2) / (w**2 * mp.sqrt(alpha2))


def f(x1, x2, v1, v2):
    w = 1 - x1**2 - x2**2
    return (x1**2 + x2**2 - 4) * (x2 * v1 - x1 * v2) / (8 * w ** mp.mpf(2.5))


def h(x1, x2, v1, v2, lam):
    return f(x1, x2, v1, v2) + lam * g(x1, x2, v1, v2)


def lambda0_exact(a: Fraction) -> Fraction:
    return -a * (1 + a**2 - a**4 / 8) / (1 + a**2 - 2 * a**4)


def jacobi_exact(a: Fraction):
    a2 = a * a
    q = a2 * a2 - 8 * a2 - 8
    b = (2 * a2**4 + 13 * a2**3 + 51 * a2**2 + 16 * a2 + 8) / ((2 * a2 + 1) * (1 - a2) * q)
    c = 8 * a * (2 * a2 + 1) * (1 - a2) / q
    return b, c


def U(a):
    a = mp.mpf(a)
    return (2 * a**2 + 1) / (a * (1 - a**2) ** mp.mpf(2.5))


def d_closed(a, dt):
    b, c = (mp.mpf(v.numerator) / v.denominator for v in jacobi_exact(a))
    k = mp.sqrt(-b)
    x = k * dt / 2
    return 4 * c * U(mp.mpf(a.numerator) / a.denominator) / k**3 * mp.sinh(x) * (mp.sinh(x) - x * mp.cosh(x))


def excess(x, v, p, lam):
    """Weierstrass excess by definition, velocity gradient by mpmath differentiation."""
    grad = [mp.diff(lambda s: h(x[0], x[1], v[0] + s, v[1], lam), 0),
            mp.diff(lambda s: h(x[0], x[1], v[0], v[1] + s, lam), 0)]
    return (h(x[0], x[1], p[0], p[1], lam) - h(x[0], x[1], v[0], v[1], lam)
            - (p[0] - v[0]) * grad[0] - (p[1] - v[1]) * grad[1])


def main():
    half = mp.mpf(1) / 2
    lam_exact = lambda0_exact(Fraction(1, 2))
    assert lam_exact == Fraction(-53, 96)
    lam = mp.mpf(lam_exact.numerator) / lam_exact.denominator
    b_exact, c_exact = jacobi_exact(Fraction(1, 2))

    grid = [Fraction(i, 10) for i in range(10)]
    sig_grid = [sigma_closed(mp.mpf(r.numerator) / r.denominator) for r in grid]
    for r, s in zip(grid, sig_grid):
        q = sigma_integral(mp.mpf(r.numerator) / r.denominator)
        assert abs(q - s) / s < mp.mpf(10) ** -30, (r, q, s)

    f05 = f(half, 0, 0, half)
    assert abs(f05 - half**2 * (4 - half**2) / (8 * (1 - half**2) ** mp.mpf(2.5))) < mp.mpf(10) ** -45
    g05 = g(half, 0, 0, half)
    area05 = 2 * mp.pi * f05
    # area as the disk integral of sigma_HT
    area05_disk = 2 * mp.pi * mp.quad(lambda r: sigma_closed(r) * r, [0, half])
    assert abs(area05 - area05_disk) < mp.mpf(10) ** -40

    a_small = mp.mpf("0.01")
    area_small = 2 * mp.pi * f(a_small, 0, 0, a_small)
    len_small = 2 * mp.pi * g(mp.mpf("0.05"), 0, 0, mp.mpf("0.05"))

    k05 = mp.sqrt(-mp.mpf(b_exact.numerator) / b_exact.denominator)
    c05 = mp.mpf(c_exact.numerator) / c_exact.denominator
    d_limit = -c05 * U(half) * k05 / 12
    tiny = mp.mpf(10) ** -8
    assert abs(d_closed(Fraction(1, 2), tiny) / tiny**4 - d_limit) / abs(d_limit) < mp.mpf(10) ** -12

    values = {
        "PHI_R05_S0": ((1 - half**2) ** mp.mpf(-1.5), "phi(0.5, 0) = (1 - r^2)^(-3/2)"),
        "SIGMA_HT_05": (sigma_closed(half), "closed-form sigma_HT(0.5); integral agrees to 1e-30"),
        "SIGMA_HT_09": (sigma_closed(mp.mpf("0.9")), "closed-form sigma_HT(0.9)"),
        "F_CIRCLE_05": (f05, "f at x=(0.5,0), dx=(0,0.5)"),
        "G_CIRCLE_05": (g05, "g at x=(0.5,0), dx=(0,0.5) = a / (1 - a^2)^(3/2)"),
        "CIRCUMFERENCE_05": (2 * mp.pi * g05, "2 pi g(c0), a = 0.5"),
        "CIRCUMFERENCE_005": (len_small, "2 pi g(c0), a = 0.05"),
        "AREA_HT_05": (area05, "2 pi f(c0), a = 0.5; disk integral of sigma agrees to 1e-40"),
        "AREA_HT_001": (area_small, "2 pi f(c0), a = 0.01"),
        "H_CIRCLE_05": (f05 + lam * g05, "f + lambda0 g at the a = 0.5 circle"),
        "FIRST_INTEGRAL_05": (
            half**2 * (4 - half**2) / (8 * (1 - half**2) ** mp.mpf(2.5))
            + lam * half**4 / (half**2 - half**4) ** mp.mpf(1.5),
            "polar first integral at r = 0.5, r' = 0, lambda0(0.5)",
        ),
        "NORMALITY_05": ((1 + 2 * half**2) / (1 - half**2) ** mp.mpf(2.5), "|(P1, P2)| at a = 0.5"),
        "U_05": (U(half), "constraint density at a = 0.5"),
        "SECOND_VARIATION_05": (lam * U(half), "lambda0 U at a = 0.5 (y along the normal)"),
        "D_05_PI": (d_closed(Fraction(1, 2), mp.pi), "closed-form D(0, pi), a = 0.5"),
        "D_LIMIT_05": (d_limit, "lim D / dt^4 = -c U sqrt(-b) / 12, a = 0.5"),
        "E_EXAMPLE_05": (
            excess((half, mp.mpf(0)), (mp.mpf(0), mp.mpf(1)), (mp.mpf(1), mp.mpf(0)), lam),
            "excess at x=(0.5,0), dx=(0,1), p=(1,0), lambda0(0.5)",
        ),
    }

    lines = [
        '"""Constants frozen from a 50-digit mpmath pass.',
        "",
        "Generated by scripts/freeze_constants.py; do not edit by hand.",
        '"""',
        "",
        "from fractions import Fraction",
        "",
        f"LAMBDA0_05 = Fraction({lam_exact.numerator}, {lam_exact.denominator})  # exact rational",
        f"B_05 = Fraction({b_exact.numerator}, {b_exact.denominator})  # exact rational",
        f"C_05 = Fraction({c_exact.numerator}, {c_exact.denominator})  # exact rational",
        "",
    ]
    for name, (val, note) in values.items():
        lines.append(f"# {note}")
        lines.append(f"{name} = {float(val)!r}  # {mp.nstr(val, 30)}")
    lines.append("")
    lines.append("# closed-form sigma_HT at r = 0, 0.1, ..., 0.9")
    lines.append("SIGMA_HT_GRID = (")
    for r, s in zip(grid, sig_grid):
        lines.append(f"    ({float(r)!r}, {float(s)!r}),")
    lines.append(")")
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
