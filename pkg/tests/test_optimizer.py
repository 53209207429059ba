import math

import numpy as np
import pytest

from finsler_iso import OutOfDiskError, UnreachableLengthError
from finsler_iso.area import curve_area_ht, curve_length
from finsler_iso.curve import periodic_derivative
from finsler_iso.optimizer import (
    FourierCurve,
    OptimizerOptions,
    OptimizerReport,
    fix_length,
    fourier_area,
    fourier_length,
    optimize_isoperimetric,
    perturbation_study,
    synthesize,
)

from frozen_values import AREA_HT_05, CIRCUMFERENCE_05

L05 = fourier_length(FourierCurve.circle(0.5))


def single_mode(a, k, eps, K=8):
    c = np.zeros(K)
    c[k - 1] = eps
    return FourierCurve(a, c, np.zeros(K))


# --- FourierCurve and synthesize ------------------------------------------------


def test_circle_synthesis():
    c = synthesize(FourierCurve.circle(0.5), 256)
    assert curve_length(c) == pytest.approx(CIRCUMFERENCE_05, rel=1e-8)
    assert np.allclose(np.hypot(c.x1, c.x2), 0.5, rtol=0, atol=1e-15)


def test_zero_harmonic_changes_nothing():
    plain = synthesize(FourierCurve.circle(0.5), 128)
    padded = synthesize(FourierCurve(0.5, [0.0, 0.0], [0.0, 0.0]), 128)
    assert np.array_equal(plain.x1, padded.x1) and np.array_equal(plain.dx2, padded.dx2)


def test_out_of_disk():
    with pytest.raises(OutOfDiskError):
        synthesize(FourierCurve(0.5, [0.6]), 256)
    with pytest.raises(OutOfDiskError):
        FourierCurve(0.05, [0.045]).check()


def test_synthesize_needs_samples():
    with pytest.raises(ValueError):
        synthesize(FourierCurve.circle(0.5), 32)


def test_velocities_are_exact_derivatives():
    fc = FourierCurve(0.5, [0.03, -0.02, 0.01], [0.0, 0.04, -0.01])
    c = synthesize(fc, 1024)
    h = c.spacing
    assert np.abs(periodic_derivative(c.x1, h) - c.dx1).max() < 1e-9
    assert np.abs(periodic_derivative(c.x2, h) - c.dx2).max() < 1e-9


def test_coefficient_padding_and_vectors():
    fc = FourierCurve(0.4, [0.1], [0.0, 0.02])
    assert fc.K == 2
    assert np.array_equal(fc.cos_coef, [0.1, 0.0])
    back = FourierCurve.from_vector(fc.to_vector())
    assert np.array_equal(back.to_vector(), fc.to_vector())
    assert fc.with_harmonics(4).K == 4
    assert fc.with_harmonics(1).sin_coef.tolist() == [0.0]


def test_fourier_csv_round_trip():
    fc = FourierCurve(0.5, [0.01, 1 / 3], [0.0, -2e-17])
    text = fc.to_csv()
    assert text.splitlines()[0] == "k,cos_coef,sin_coef"
    assert text.splitlines()[1].startswith("0,0.5,")
    back = FourierCurve.from_csv(text)
    assert np.array_equal(back.to_vector(), fc.to_vector())


# --- fix_length -----------------------------------------------------------------


def test_fix_length_recovers_radius():
    fc = fix_length(FourierCurve.circle(0.3), L05)
    assert fc.a0 == pytest.approx(0.5, abs=1e-9)
    assert abs(fourier_length(fc) - L05) / L05 < 1e-10


def test_fix_length_fixed_point():
    fc = FourierCurve.circle(0.5)
    assert fix_length(fc, L05).a0 == pytest.approx(0.5, rel=1e-12)


def test_fix_length_perturbed_curve():
    fc = fix_length(single_mode(0.4, 3, 0.04), L05)
    assert abs(fourier_length(fc) - L05) / L05 < 1e-10
    assert fc.cos_coef[2] / fc.a0 == pytest.approx(0.1, rel=1e-12)


@pytest.mark.parametrize("target", [1e6, 1e-6])
def test_fix_length_unreachable(target):
    with pytest.raises(UnreachableLengthError):
        fix_length(FourierCurve.circle(0.5), target)


def test_length_monotone_in_scale():
    base = single_mode(0.3, 2, 0.05)
    lengths = [fourier_length(base.scaled(rho)) for rho in np.linspace(0.2, 2.5, 12)]
    assert np.all(np.diff(lengths) > 0)


# --- optimizer ------------------------------------------------------------------


def _check_report(rep: OptimizerReport, L):
    assert rep.converged
    assert rep.final_curve.harmonic_amplitudes().max() < 1e-4
    assert rep.constraint_violation_history[-1] < 1e-8 * L
    assert np.all(np.diff(rep.area_history) >= -1e-13)


def test_optimizer_returns_to_circle_from_mode_3():
    rep = optimize_isoperimetric(L05, single_mode(0.5, 3, 0.05), 8)
    _check_report(rep, L05)
    assert rep.area_history[-1] == pytest.approx(AREA_HT_05, abs=1e-8)
    assert rep.iterations > 0


def test_optimizer_returns_to_circle_from_mode_2():
    rep = optimize_isoperimetric(L05, single_mode(0.5, 2, 0.1), 8)
    _check_report(rep, L05)
    assert rep.area_history[-1] == pytest.approx(AREA_HT_05, abs=1e-8)


def test_optimizer_circle_is_critical():
    rep = optimize_isoperimetric(L05, FourierCurve.circle(0.5), 8)
    assert rep.converged and rep.iterations == 0 and rep.reason == "gtol"
    assert len(rep.area_history) == 1


@pytest.mark.parametrize("a", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_optimizer_basin(a, k):
    L = fourier_length(FourierCurve.circle(a))
    rep = optimize_isoperimetric(L, single_mode(a, k, 0.05), 8)
    _check_report(rep, L)
    assert rep.area_history[-1] == pytest.approx(fourier_area(FourierCurve.circle(a)), abs=1e-8)


def test_optimizer_escapes_along_translation_mode():
    # k = 1 is a saddle direction: rounding noise seeds it and the run drifts off-center
    a = 0.7
    L = fourier_length(FourierCurve.circle(a))
    rep = optimize_isoperimetric(L, single_mode(a, 2, 0.05), 8, OptimizerOptions(max_iter=300))
    amps = rep.final_curve.harmonic_amplitudes()
    assert amps[0] > 0.01 and amps[0] == amps.max()
    assert rep.area_history[-1] > fourier_area(FourierCurve.circle(a)) + 0.01
    assert rep.constraint_violation_history[-1] < 1e-8 * L


def test_optimizer_rejects_too_many_harmonics():
    with pytest.raises(ValueError):
        optimize_isoperimetric(L05, FourierCurve.circle(0.5), 17)


def test_optimizer_iteration_cap():
    rep = optimize_isoperimetric(L05, single_mode(0.5, 3, 0.05), 8, OptimizerOptions(max_iter=2))
    assert rep.iterations == 2 and not rep.converged and rep.reason == "max_iter"


def test_report_csv():
    rep = optimize_isoperimetric(L05, single_mode(0.5, 3, 0.05), 8, OptimizerOptions(max_iter=3))
    lines = rep.to_csv().splitlines()
    assert lines[0] == "iter,area,violation"
    assert len(lines) == 1 + len(rep.area_history)
    assert float(lines[-1].split(",")[1]) == rep.area_history[-1]


# --- perturbation study ----------------------------------------------------------


def test_perturbation_table_negative_for_k_ge_2():
    rows = perturbation_study(0.5, range(2, 9), (0.01, 0.02, 0.05))
    assert len(rows) == 21
    assert all(r.delta_area < 0 for r in rows)


def test_perturbation_mode_2_example():
    (row,) = perturbation_study(0.5, [2], [0.05])
    assert row.delta_area < 0


def test_perturbation_second_order():
    rows = perturbation_study(0.5, [3], (0.01, 0.02, 0.04))
    ratios = [r.ratio for r in rows]
    assert all(r.delta_area < 0 for r in rows)
    assert max(ratios) / min(ratios) < 1.05


def test_zero_perturbation_is_exact():
    (row,) = perturbation_study(0.5, [3], [0.0])
    assert row.delta_area == 0.0
    assert row.ratio == 0.0


def test_mode_1_ratio_nonpositive():
    # stated expectation for the translation-like mode
    rows = perturbation_study(0.5, [1], (0.02, 0.01, 0.005))
    assert rows[-1].ratio <= 0


def test_mode_1_ratio_converges_to_positive_constant():
    # observed behaviour: the centered circle is a saddle along k = 1
    rows = perturbation_study(0.5, [1], (0.02, 0.01, 0.005))
    ratios = [r.ratio for r in rows]
    assert all(r > 0 for r in ratios)
    assert abs(ratios[-1] - ratios[-2]) < 0.05 * ratios[-1]
