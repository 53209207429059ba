import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finsler_iso import BERWALD, EUCLIDEAN, DomainError, MetricKind, ZeroVectorError
from finsler_iso.metric import finsler_norm, phi, phi_jet, t_integrand, t_integrand_rho

from frozen_values import PHI_R05_S0

GRID = [(r, s) for r in np.arange(0.0, 0.951, 0.05) for s in np.linspace(-r, r, 21)]


def _fd4(fun, x, h=1e-3):
    return (8 * (fun(x + h) - fun(x - h)) - (fun(x + 2 * h) - fun(x - 2 * h))) / (12 * h)


def test_model_kinds():
    assert BERWALD.kind is MetricKind.BERWALD_K0
    assert BERWALD.domain_radius == 1.0
    assert EUCLIDEAN.domain_radius == math.inf


def test_phi_examples():
    assert phi(BERWALD, 0.0, 0.0) == 1.0
    assert phi(BERWALD, 0.5, 0.0) == pytest.approx(PHI_R05_S0, rel=1e-15)
    assert phi(EUCLIDEAN, 0.7, 0.3) == 1.0


@pytest.mark.parametrize("r, s", [(1.0, 0.0), (1.2, 0.1), (0.5, 0.6), (-0.1, 0.0)])
def test_phi_domain_errors(r, s):
    with pytest.raises(DomainError):
        phi(BERWALD, r, s)


def test_phi_admissibility_tolerance():
    phi(BERWALD, 0.5, 0.5 + 5e-13)
    with pytest.raises(DomainError):
        phi(BERWALD, 0.5, 0.5 + 1e-10)


def test_phi_vectorized_matches_scalar():
    r = np.array([0.1, 0.4, 0.8])
    s = np.array([0.05, -0.3, 0.7])
    vec = phi(BERWALD, r, s)
    assert np.allclose(vec, [phi(BERWALD, a, b) for a, b in zip(r, s)], rtol=0, atol=0)


def test_jet_euclidean_constant():
    assert phi_jet(EUCLIDEAN, 0.3, 0.1) == (1.0, 0.0, 0.0, 0.0)


@pytest.mark.parametrize("r, s", [(0.0, 0.0), (0.5, 0.2), (0.9, -0.4)])
def test_jet_matches_fourth_order_differences(r, s):
    jet = phi_jet(BERWALD, r, s)
    # unconstrained formula so the FD stencil may step past |s| = r
    def raw(r_, s_):
        rho = math.sqrt(1 - r_ * r_ + s_ * s_)
        return (rho + s_) ** 2 / ((1 - r_ * r_) ** 2 * rho)

    fd_s = _fd4(lambda v: raw(r, v), s)
    fd_ss = _fd4(lambda v: _fd4(lambda u: raw(r, u), v), s)
    fd_r = _fd4(lambda v: raw(v, s), r)
    assert jet.phi == pytest.approx(raw(r, s), rel=1e-15)
    assert jet.phi_s == pytest.approx(fd_s, rel=1e-6, abs=1e-9)
    assert jet.phi_ss == pytest.approx(fd_ss, rel=1e-6)
    assert jet.phi_r == pytest.approx(fd_r, rel=1e-6, abs=1e-9)


def test_jet_grid_against_central_differences():
    h = 1e-5
    for r, s in GRID:
        if r < 2 * h or abs(abs(s) - r) < 2 * h:
            continue
        jet = phi_jet(BERWALD, r, s)
        fd_s = (phi(BERWALD, r, s + h) - phi(BERWALD, r, s - h)) / (2 * h)
        fd_r = (phi(BERWALD, r + h, s) - phi(BERWALD, r - h, s)) / (2 * h)
        assert jet.phi_s == pytest.approx(fd_s, rel=1e-6)
        assert jet.phi_r == pytest.approx(fd_r, rel=1e-6, abs=1e-8)


def test_positivity_on_grid():
    for r, s in GRID:
        assert phi(BERWALD, r, s) > 0
        assert t_integrand(BERWALD, r, s) > 0


def test_t_dual_formula_on_grid():
    for r, s in GRID:
        assert t_integrand(BERWALD, r, s) == pytest.approx(t_integrand_rho(r, s), rel=1e-9)


def test_t_examples():
    assert t_integrand(BERWALD, 0.0, 0.0) == pytest.approx(1.0, rel=1e-15)
    assert t_integrand_rho(0.0, 0.0) == 1.0
    assert t_integrand(EUCLIDEAN, 0.4, -0.2) == 1.0
    assert t_integrand(BERWALD, 0.5, 0.25) == pytest.approx(t_integrand_rho(0.5, 0.25), rel=1e-9)


def test_finsler_norm_examples():
    assert finsler_norm(BERWALD, (0, 0), (1, 0)) == 1.0
    assert finsler_norm(BERWALD, (0, 0), (3, 4)) == 5.0
    assert finsler_norm(BERWALD, (0.5, 0), (0, 1)) == pytest.approx(PHI_R05_S0, rel=1e-15)


def test_finsler_norm_errors():
    with pytest.raises(DomainError):
        finsler_norm(BERWALD, (0.8, 0.6), (1, 0))
    with pytest.raises(ZeroVectorError):
        finsler_norm(BERWALD, (0.1, 0.2), (0, 0))


def test_finsler_norm_is_not_reversible():
    # the metric is not symmetric under y -> -y off the origin
    assert finsler_norm(BERWALD, (0.5, 0), (1, 0)) > finsler_norm(BERWALD, (0.5, 0), (-1, 0))


points = st.tuples(st.floats(0, 0.95), st.floats(0, 2 * math.pi)).map(
    lambda p: (p[0] * math.cos(p[1]), p[0] * math.sin(p[1])))
vectors = st.tuples(st.floats(-10, 10), st.floats(-10, 10)).filter(lambda v: math.hypot(*v) > 1e-3)


@settings(max_examples=200, deadline=None)
@given(points, vectors, st.sampled_from([0.5, 2.0, 10.0]))
def test_homogeneity(x, y, k):
    base = finsler_norm(BERWALD, x, y)
    scaled = finsler_norm(BERWALD, x, (k * y[0], k * y[1]))
    assert scaled == pytest.approx(k * base, rel=1e-12)
