import math
import shutil
import subprocess

import pytest

from finsler_iso.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, load_config, main, parse_args


@pytest.fixture(autouse=True)
def out_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("FINSLER_ISO_OUT", str(tmp_path / "out"))
    return tmp_path / "out"


def test_area_element(out_dir, tmp_path):
    svg = tmp_path / "sigma.svg"
    assert main(["area-element", "--svg", str(svg)]) == EXIT_OK
    lines = (out_dir / "area_element.csv").read_text().splitlines()
    assert lines[0] == "r,sigma_closed,sigma_quadrature,rel_err"
    assert len(lines) == 11
    assert lines[1].split(",")[:2] == ["0", "1"]
    assert svg.read_text().startswith("<svg")


def test_area_element_empty_range():
    assert main(["area-element", "--r-min", "0", "--r-max", "0"]) == EXIT_USAGE


def test_area_element_beyond_cap():
    assert main(["area-element", "--r-max", "0.99"]) == EXIT_USAGE


@pytest.mark.parametrize("a, code", [("0.5", EXIT_OK), ("0.05", EXIT_OK), ("1.2", EXIT_USAGE)])
def test_verify_extremal(a, code, out_dir):
    assert main(["verify-extremal", "--a", a]) == code
    if code == EXIT_OK:
        rows = dict(l.split(",") for l in (out_dir / "verify_extremal.csv").read_text().splitlines()[1:])
        assert float(rows["max_el_residual"]) < 1e-7
        assert rows["passed"] == "true"


@pytest.mark.parametrize("args, code", [
    (["--a", "0.5"], EXIT_OK),
    (["--a", "0.9"], EXIT_OK),
    (["--n-dirs", "0"], EXIT_USAGE),
    (["--a", "0.5", "--lam", "1.0", "--n-points", "8", "--n-dirs", "32"], EXIT_FAIL),
])
def test_escan(args, code, out_dir):
    assert main(["escan", *args]) == code
    if code != EXIT_USAGE:
        lines = (out_dir / "escan.csv").read_text().splitlines()
        assert lines[0] == "a,t_or_dt,value"
        assert lines[-1].startswith("# summary")


@pytest.mark.parametrize("args, code", [
    (["--a", "0.5"], EXIT_OK),
    (["--a", "0.1", "--span", str(4 * math.pi)], EXIT_OK),
    (["--span", "-1"], EXIT_USAGE),
    (["--span", "13"], EXIT_USAGE),
])
def test_conjugate(args, code, out_dir):
    assert main(["conjugate", *args]) == code
    if code == EXIT_OK:
        lines = (out_dir / "conjugate.csv").read_text().splitlines()
        assert lines[0] == "a,t_or_dt,value"
        assert "sign_changes=0" in lines[-1]


def test_optimize_perturbed(tmp_path):
    out = tmp_path / "opt"
    assert main(["optimize", "--a-equiv", "0.5", "--K", "8", "--init", "perturb:k=3,eps=0.05",
                 "--out-dir", str(out)]) == EXIT_OK
    for name in ("report.csv", "initial_curve.csv", "final_curve.csv", "curves.svg"):
        assert (out / name).exists()
    assert (out / "report.csv").read_text().startswith("iter,area,violation\n")


def test_optimize_circle_init(tmp_path, capsys):
    assert main(["optimize", "--init", "circle", "--out-dir", str(tmp_path)]) == EXIT_OK
    assert "0 improving steps" in capsys.readouterr().out
    assert len((tmp_path / "report.csv").read_text().splitlines()) == 2


@pytest.mark.parametrize("args", [["--L-target", "1e6"], ["--init", "k=9,eps=0.1"], ["--init", "square"],
                                  ["--K", "17"], ["--L-target", "3", "--a-equiv", "0.5"]])
def test_optimize_invalid(args):
    assert main(["optimize", *args]) == EXIT_USAGE


def test_unknown_command():
    assert main(["bogus"]) == EXIT_USAGE


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# scan settings\na = 0.3   # radius\nn-points = 8\n")
    assert load_config(str(cfg)) == {"a": "0.3", "n_points": "8"}
    args = parse_args(["escan", "--config", str(cfg)])
    assert args.a == 0.3 and args.n_points == 8 and args.n_dirs == 256
    args = parse_args(["escan", "--config", str(cfg), "--a", "0.7"])
    assert args.a == 0.7 and args.n_points == 8


def test_bad_config(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("nonsense line\n")
    assert main(["escan", "--config", str(cfg)]) == EXIT_USAGE
    cfg.write_text("bogus = 1\n")
    assert main(["escan", "--config", str(cfg)]) == EXIT_USAGE
    assert main(["escan", "--config", str(tmp_path / "missing.cfg")]) == EXIT_USAGE
    cfg.write_text("a = notanumber\n")
    assert main(["escan", "--config", str(cfg)]) == EXIT_USAGE


def test_outputs_are_deterministic(tmp_path):
    texts = []
    for i in range(2):
        path = tmp_path / f"c{i}.csv"
        assert main(["conjugate", "--a", "0.3", "--out", str(path)]) == EXIT_OK
        texts.append(path.read_bytes())
    assert texts[0] == texts[1]
    assert b"\r\n" not in texts[0]


def test_env_var_sets_output_dir(out_dir):
    assert main(["escan", "--n-points", "4", "--n-dirs", "16"]) == EXIT_OK
    assert (out_dir / "escan.csv").exists()


def test_seed_is_recorded(tmp_path, monkeypatch):
    import finsler_iso.checks as checks
    from finsler_iso.checks import CheckResult

    def fake(seed):
        return CheckResult(99, "stub", True, f"seed {seed}")

    monkeypatch.setattr(checks, "CHECKS", (fake,))
    assert main(["all", "--rng-seed", "7", "--out-dir", str(tmp_path)]) == EXIT_OK
    lines = (tmp_path / "acceptance.csv").read_text().splitlines()
    assert lines[0].endswith("rng_seed") and lines[1].endswith(",7")


@pytest.mark.skipif(shutil.which("finsler-iso") is None, reason="console script not installed")
def test_console_script(tmp_path):
    proc = subprocess.run(["finsler-iso", "verify-extremal", "--a", "1.2"], capture_output=True, text=True)
    assert proc.returncode == EXIT_USAGE
    assert "a must lie in (0, 1)" in proc.stderr
