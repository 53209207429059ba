"""finsler-iso command line interface.

Exit codes: 0 all checks passed, 1 a mathematical check failed,
2 invalid input or configuration.
"""

from __future__ import annotations

import argparse
import logging
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import area, checks, variational as var
from .curve import circle
from .errors import FinslerIsoError, UnreachableLengthError
from .optimizer import (
    FourierCurve,
    OptimizerOptions,
    fix_length,
    fourier_length,
    optimize_isoperimetric,
    synthesize,
)
from .report import csv_text, output_dir, svg_plot, write_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("finsler_iso")


class UsageError(Exception):
    pass


def _require(cond: bool, msg: str):
    if not cond:
        raise UsageError(msg)


def _out_path(args, default_name: str) -> Path:
    if getattr(args, "out", None):
        return Path(args.out)
    return output_dir() / default_name


def load_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    cfg = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (p.strip() for p in line.split("=", 1))
            cfg[key.replace("-", "_")] = value
    return cfg


# --- commands ----------------------------------------------------------------------


def cmd_area_element(args) -> int:
    _require(0.0 <= args.r_min < args.r_max <= 0.95,
             "need 0 <= r_min < r_max <= 0.95")
    _require(args.step > 0, "step must be positive")
    n = int(math.floor((args.r_max - args.r_min) / args.step + 1e-9)) + 1
    rs = [round(args.r_min + i * args.step, 12) for i in range(n)]
    rows = []
    for r in rs:
        closed = area.sigma_ht_closed(r)
        quad = area.sigma_ht_quadrature(r)
        rows.append((r, closed, quad, abs(quad - closed) / closed))
    path = write_text(_out_path(args, "area_element.csv"),
                      csv_text(("r", "sigma_closed", "sigma_quadrature", "rel_err"), rows))
    if args.svg:
        write_text(Path(args.svg), svg_plot(
            [("closed form", rs, [r[1] for r in rows], "#1f77b4"),
             ("quadrature", rs, [r[2] for r in rows], "#ff7f0e")],
            title="Holmes-Thompson area element sigma(r)"))
    worst = max(r[3] for r in rows)
    print(f"area-element: {len(rows)} rows, max rel_err {worst:.3e} -> {path}")
    return EXIT_OK if worst < 1e-8 else EXIT_FAIL


def cmd_verify_extremal(args) -> int:
    _require(0.0 < args.a < 1.0, "a must lie in (0, 1)")
    _require(args.n >= 64, "n must be >= 64")
    a = args.a
    lam = var.lambda0(a)
    r1, r2 = var.el_residual(circle(a, args.n), lam)
    residual = float(max(np.abs(r1).max(), np.abs(r2).max()))
    ts = 2 * math.pi * np.arange(64) / 64
    p1, p2 = var.normality(a, ts)
    min_p = float(np.min(np.hypot(p1, p2)))
    c = var.first_integral(a, 0.0, lam)
    passed = residual < 1e-7
    rows = [("a", a), ("lambda0", lam), ("max_el_residual", residual),
            ("min_normality_norm", min_p), ("first_integral", c), ("passed", passed)]
    path = write_text(_out_path(args, "verify_extremal.csv"), csv_text(("quantity", "value"), rows))
    print(f"verify-extremal a={a}: lambda0={lam:.12g} residual={residual:.3e} "
          f"min|P|={min_p:.6g} C={c:.12g} -> {path}")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_escan(args) -> int:
    _require(0.0 < args.a < 1.0, "a must lie in (0, 1)")
    _require(args.n_points >= 1 and args.n_dirs >= 1, "n_points and n_dirs must be positive")
    lam = var.lambda0(args.a) if args.lam is None else args.lam
    scan = var.e_scan(args.a, lam, args.n_points, args.n_dirs)
    rows = [(args.a, t, e) for t, e in zip(scan.t, scan.point_max)]
    path = write_text(_out_path(args, "escan.csv"), csv_text(
        ("a", "t_or_dt", "value"), rows,
        trailer=[f"summary lambda={lam!r} max_e={scan.max_e!r} min_abs_e={scan.min_abs_e!r}"]))
    print(f"escan a={args.a} lambda={lam:.12g}: max E {scan.max_e:.3e}, "
          f"min |E| {scan.min_abs_e:.3e} -> {path}")
    return EXIT_OK if scan.max_e < 0 else EXIT_FAIL


def cmd_conjugate(args) -> int:
    _require(0.0 < args.a < 1.0, "a must lie in (0, 1)")
    _require(0.0 < args.span <= 4 * math.pi + 1e-12, "span must lie in (0, 4 pi]")
    _require(0.0 < args.step <= args.span, "step must lie in (0, span]")
    intervals = var.conjugate_scan(args.a, args.span, args.step)
    dts, values = var.conjugate_profile(args.a, args.span, args.step)
    probes = args.span * np.arange(1, 33) / 32
    worst = max(abs(var.conjugate_determinant_numeric(args.a, 0.0, dt)
                    - var.conjugate_determinant(args.a, 0.0, dt))
                / abs(var.conjugate_determinant(args.a, 0.0, dt)) for dt in probes)
    rows = [(args.a, dt, v) for dt, v in zip(dts, values)]
    path = write_text(_out_path(args, "conjugate.csv"), csv_text(
        ("a", "t_or_dt", "value"), rows,
        trailer=[f"summary sign_changes={len(intervals)} max_probe_rel_err={worst!r}"]))
    if intervals:
        write_text(path.with_name(path.stem + "_sign_changes.csv"),
                   csv_text(("interval_start", "interval_end"), intervals))
    if args.svg:
        write_text(Path(args.svg), svg_plot(
            [("log10 D", dts, np.log10(values.clip(min=1e-300)), "#2ca02c")],
            title=f"conjugate determinant, a={args.a}"))
    passed = not intervals and worst < 1e-6
    print(f"conjugate a={args.a}: {len(intervals)} sign changes, "
          f"closed vs numeric max rel err {worst:.3e} -> {path}")
    return EXIT_OK if passed else EXIT_FAIL


_INIT_RE = re.compile(r"^(?:perturb:)?k=(\d+),\s*eps=([-+0-9.eE]+)$")


def _parse_init(spec: str):
    spec = spec.strip()
    if spec == "circle":
        return None
    m = _INIT_RE.match(spec)
    if not m:
        raise UsageError(f"init must be 'circle' or 'perturb:k=<int>,eps=<float>', got {spec!r}")
    return int(m.group(1)), float(m.group(2))


def cmd_optimize(args) -> int:
    _require(0 <= args.K <= 16, "K must lie in [0, 16]")
    _require(args.max_iter >= 0, "max_iter must be nonnegative")
    pert = _parse_init(args.init)
    if pert is not None:
        _require(1 <= pert[0] <= args.K, "perturbed harmonic must be in 1..K")
    if args.L_target is not None:
        _require(args.L_target > 0, "L_target must be positive")
        L = args.L_target
        base = 0.5
    else:
        _require(0.0 < args.a_equiv < 0.95, "a_equiv must lie in (0, 0.95)")
        base = args.a_equiv
        L = fourier_length(FourierCurve.circle(base))
    c = np.zeros(args.K)
    if pert is not None:
        c[pert[0] - 1] = pert[1]
    try:
        init = FourierCurve(base, c, np.zeros(args.K))
        init.check()
        fix_length(init, L)
    except (UnreachableLengthError, FinslerIsoError) as exc:
        raise UsageError(str(exc)) from exc
    rep = optimize_isoperimetric(L, init, args.K, OptimizerOptions(max_iter=args.max_iter))
    out = Path(args.out_dir) if args.out_dir else output_dir() / "optimize"
    write_text(out / "report.csv", rep.to_csv())
    write_text(out / "initial_curve.csv", init.to_csv())
    write_text(out / "final_curve.csv", rep.final_curve.to_csv())
    ci, cf = synthesize(init), synthesize(rep.final_curve)
    write_text(out / "curves.svg", svg_plot(
        [("initial", ci.x1, ci.x2, "#d62728"), ("final", cf.x1, cf.x2, "#1f77b4")],
        title=f"isoperimetric ascent, L = {L:.10g}", equal_aspect=True))
    amp = float(rep.final_curve.harmonic_amplitudes().max()) if args.K else 0.0
    passed = rep.converged and amp < 1e-4
    print(f"optimize L={L:.12g}: {rep.iterations} improving steps ({rep.reason}), "
          f"area {rep.area_history[-1]:.15g}, max harmonic {amp:.3e} -> {out}")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_all(args) -> int:
    results = []
    for fn in checks.CHECKS:
        res = checks.run_check(fn, args.rng_seed)
        print(res.line(), flush=True)
        results.append(res)
    rows = [(r.number, r.name, "pass" if r.passed else "fail", f"{r.seconds:.3f}", args.rng_seed)
            for r in results]
    out = Path(args.out_dir) if args.out_dir else output_dir()
    write_text(out / "acceptance.csv",
               csv_text(("criterion", "name", "status", "seconds", "rng_seed"), rows))
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed"
          + (f"; failed: {failed}" if failed else ""))
    return EXIT_FAIL if failed else EXIT_OK


# --- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finsler-iso", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--config", help="flat key = value file; flags override it")
        p.add_argument("--rng-seed", type=int, default=checks.DEFAULT_SEED)
        return p

    p = add("area-element", cmd_area_element, "sigma_HT closed form vs quadrature")
    p.add_argument("--r-min", type=float, default=0.0)
    p.add_argument("--r-max", type=float, default=0.9)
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--out")
    p.add_argument("--svg")

    p = add("verify-extremal", cmd_verify_extremal, "circle extremal, normality, first integral")
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--out")

    p = add("escan", cmd_escan, "Weierstrass excess scan along a circle")
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--n-points", type=int, default=64)
    p.add_argument("--n-dirs", type=int, default=256)
    p.add_argument("--lam", type=float, default=None, help="multiplier (default lambda0(a))")
    p.add_argument("--out")

    p = add("conjugate", cmd_conjugate, "conjugate-point determinant scan")
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--span", type=float, default=2 * math.pi)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--out")
    p.add_argument("--svg")

    p = add("optimize", cmd_optimize, "maximize area at fixed length")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--L-target", dest="L_target", type=float, default=None)
    grp.add_argument("--a-equiv", dest="a_equiv", type=float, default=0.5)
    p.add_argument("--K", type=int, default=8)
    p.add_argument("--init", default="perturb:k=3,eps=0.05")
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("--out-dir")

    p = add("all", cmd_all, "run every acceptance check")
    p.add_argument("--out-dir")
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        cfg = load_config(args.config)
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in sub._actions}
        unknown = set(cfg) - known - {"config"}
        if unknown:
            raise UsageError(f"unknown config keys for {args.command}: {sorted(unknown)}")
        # argparse applies each option's type to string defaults
        sub.set_defaults(**cfg)
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except UsageError as exc:
        print(f"finsler-iso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except OSError as exc:
        print(f"finsler-iso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, FinslerIsoError, ValueError) as exc:
        print(f"finsler-iso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
