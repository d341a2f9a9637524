import math

import numpy as np
import pytest
from scipy.integrate import quad

from hdmock.analytic import (
    HPoint, dbar_residual, e2_completion_residual, eichler_star, eval_series,
    modular_residual, period_polynomial, period_rank_in_h1, relator_residuals,
    segment_integral, slash_numeric, star_cocycle_fit, upper_gamma_int,
)
from hdmock.cohomology import S, T, U, GammaMatrix, h1_dim, word
from hdmock.modforms import basis_space, cusp_basis, delta, eisenstein, j_invariant
from hdmock.series import QSeries

from oracles import delta_numeric, eta_i_24

D60 = delta(60)


def test_hpoint():
    assert HPoint(0.5, 2.0).tau == 0.5 + 2j
    with pytest.raises(ValueError):
        HPoint(0.0, 0.0)


def test_eval_examples():
    assert eval_series(QSeries.constant(1, 20), 0.3 + 1j).value == 1
    v = eval_series(D60, 1j)
    assert abs(v.value - eta_i_24()) < 1e-15
    assert abs(v.value.imag) < 1e-18
    assert abs(eval_series(j_invariant(60), 1j).value - 1728) < 1e-8
    assert abs(eval_series(eisenstein(6, 60), 1j).value) < 1e-12


def test_eval_against_product_formula():
    for tau in (0.1 + 0.9j, -0.4 + 1.5j, 0.25 + 0.5j):
        assert abs(eval_series(D60, tau).value - delta_numeric(tau)) < 1e-14


def test_eval_guard():
    with pytest.raises(ValueError, match="insufficient precision"):
        eval_series(delta(10), 0.1j)
    with pytest.raises(ValueError):
        eval_series(D60, -1j)


def test_eval_error_bound_is_small_and_reported():
    for N, tau in ((12, 0.6j), (15, 0.3 + 0.45j), (20, 0.4j)):
        ev = eval_series(delta(N), tau)
        actual = abs(ev.value - eval_series(D60, tau).value)
        assert actual <= ev.error_bound < 1e-10


def test_modular_residual_examples():
    assert modular_residual(eisenstein(4, 60), 4, S, 2j) < 1e-8
    assert abs(modular_residual(eisenstein(2, 60), 2, S, 1j) - 6 / math.pi) < 1e-12
    assert modular_residual(j_invariant(60), 0, S, 1 + 1j) < 1e-6


# points near the fundamental domain whose images stay there too
GRID = [(S, 1j), (S, 0.3 + 1.1j), (T, -0.2 + 0.9j), (U, -0.5 + 0.9j), (word("STS"), 0.5 + 0.9j)]


@pytest.mark.parametrize("k", range(4, 25, 2))
def test_basis_elements_are_modular(k):
    sp = basis_space(k, 0, 80)
    for f in sp.basis:
        for g, tau in GRID:
            assert modular_residual(f, k, g, tau) < 1e-8


def test_upper_gamma_closed_form():
    for m in range(0, 12):
        for x in (0.5, 3.0, 12.0):
            val, _ = quad(lambda t: t**m * math.exp(-t), x, np.inf)
            assert upper_gamma_int(m, x) == pytest.approx(val, rel=1e-10)


def _direct_segment(k, t0, t1):
    """int_{i t0}^{i t1} Delta(tau) (X - tau Y)^k dtau by adaptive quadrature."""
    out = np.zeros(k + 1, dtype=complex)
    for j in range(k + 1):
        def integrand(t, part):
            tau = 1j * t
            v = delta_numeric(tau) * math.comb(k, j) * (-tau) ** j * 1j
            return v.real if part == 0 else v.imag
        re, _ = quad(integrand, t0, t1, args=(0,), epsabs=1e-13, limit=200)
        im, _ = quad(integrand, t0, t1, args=(1,), epsabs=1e-13, limit=200)
        out[j] = re + 1j * im
    return out


def test_split_integral_matches_direct_quadrature():
    k = 10
    split = segment_integral(D60, k, 0.2, 5.0)
    direct = _direct_segment(k, 0.2, 5.0)
    assert np.max(np.abs(split - direct)) < 1e-7
    # the two halves separately
    assert np.max(np.abs(segment_integral(D60, k, 1.0, 5.0) - _direct_segment(k, 1.0, 5.0))) < 1e-7
    assert np.max(np.abs(segment_integral(D60, k, 0.2, 1.0) - _direct_segment(k, 0.2, 1.0))) < 1e-7


def test_period_polynomial_of_delta():
    r = period_polynomial(D60, 10)
    assert r.s_residual < 1e-8 and r.u_residual < 1e-8
    # full integral is the limit of the segments
    assert np.max(np.abs(r.coeffs - segment_integral(D60, 10, 1e-3, 1e3))) < 1e-10
    # r|S = -r, checked directly on the coefficient vector
    assert np.max(np.abs(r.coeffs + slash_numeric(r.coeffs, 10, S))) < 1e-8


def test_period_polynomial_linear_and_degenerate():
    r1 = period_polynomial(D60, 10).coeffs
    r3 = period_polynomial(D60.scale(3), 10).coeffs
    assert np.allclose(r3, 3 * r1, atol=1e-14)
    zero = period_polynomial(QSeries.constant(0, 30), 10)
    assert not np.any(zero.coeffs)


def test_period_polynomial_linear_on_weight_26():
    f, g = cusp_basis(24, 60)
    k = 22
    rf, rg = period_polynomial(f, k).coeffs, period_polynomial(g, k).coeffs
    rs = period_polynomial(f.scale(2) + g.scale(-7), k).coeffs
    assert np.max(np.abs(rs - (2 * rf - 7 * rg))) < 1e-10 * np.max(np.abs(rs))
    for r in (rf, rg):
        s_res, u_res = relator_residuals(r, k)
        assert max(s_res, u_res) < 1e-8 * np.max(np.abs(r))


def test_period_polynomial_rejects_non_cusp():
    with pytest.raises(ValueError):
        period_polynomial(eisenstein(12, 30), 10)


def test_period_rank_in_h1():
    r = period_polynomial(D60, 10)
    rank, sv, misfit = period_rank_in_h1(r)
    assert rank == 2 < h1_dim(10) == 3
    assert misfit < 1e-10
    assert sv.min() > 1e-6


def test_dbar_equation():
    for tau in (1j, 0.5 + 1j, 2j):
        assert dbar_residual(D60, 10, tau, 1e-4) < 1e-5


def test_dbar_second_order_convergence():
    r1 = dbar_residual(D60, 10, 1j, 2e-3)
    r2 = dbar_residual(D60, 10, 1j, 1e-3)
    assert 3.5 < r1 / r2 < 4.5


def test_star_decays():
    vals = [abs(eichler_star(D60, 10, y * 1j).value) for y in (2, 4, 8)]
    assert vals[0] > vals[1] > vals[2] > 0


def test_star_is_one_periodic():
    a = eichler_star(D60, 10, 0.3 + 1.1j).value
    b = eichler_star(D60, 10, 1.3 + 1.1j).value
    assert abs(a - b) < 1e-15


def test_star_rejects_non_cusp():
    with pytest.raises(ValueError):
        eichler_star(eisenstein(4, 30), 2, 1j)


def test_star_cocycle_fit():
    fit = star_cocycle_fit(D60, 10)
    assert fit.residual < 1e-6
    # a non-polynomial control: g* itself is not a polynomial in tau
    from hdmock.analytic import CocycleFit
    pts = 1j + 0.3 * np.exp(2j * np.pi * np.arange(12) / 12)
    vals = np.array([eichler_star(D60, 10, t).value for t in pts])
    V = np.vander((pts - 1j) / 0.3, 11, increasing=True)
    sol, *_ = np.linalg.lstsq(V, vals, rcond=None)
    assert np.max(np.abs(V @ sol - vals)) > 1e3 * fit.residual


def test_e2_completion():
    assert e2_completion_residual(T, 0.3 + 0.8j) < 1e-12
    assert e2_completion_residual(S, 1j) < 1e-8
    assert e2_completion_residual(S, 0.5 + 2j) < 1e-8
    assert e2_completion_residual(GammaMatrix(2, 1, 1, 1), 0.2 + 1.4j) < 1e-8


def test_eval_is_accurate_to_a_few_ulps():
    # a weight 4 form with a pole and large coefficients, against a 40-digit reference
    import mpmath

    from hdmock.bol import bol_operator

    g = bol_operator(basis_space(-2, 1, 60).basis[0], 2)
    with mpmath.workdps(40):
        for tau in (0.5j, 2j, 0.3 + 0.7j):
            q = mpmath.exp(2j * mpmath.pi * mpmath.mpc(tau.real, tau.imag))
            ref = sum(mpmath.mpf(c.numerator) / c.denominator * q**n for n, c in g.items())
            got = eval_series(g, tau).value
            assert abs(got - complex(ref)) <= 8e-16 * abs(complex(ref)), tau
