from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hdmock.series import QSeries, series_add, series_Dq, series_invert, series_mul
from hdmock.modforms import delta, eisenstein

from oracles import delta_coeffs, eisenstein_coeffs, euler_product_power


def poly(terms, prec):
    return QSeries.from_terms(terms, prec)


def test_add_examples():
    assert poly({0: 1, 1: 1}, 5) + poly({0: 1, 1: -1}, 5) == QSeries.constant(2, 5)
    a = QSeries.monomial(-1, 5)
    assert series_add(a, QSeries.constant(0, 5)) == a
    s = eisenstein(4, 5) + eisenstein(6, 5)
    E4, E6 = eisenstein_coeffs(4, 5), eisenstein_coeffs(6, 5)
    assert s[1] == E4[1] + E6[1] == -264


def test_add_precision_and_valuation():
    a = QSeries(-2, 3, [1, 0, 0, 0, 1])
    b = QSeries(0, 7, [1] * 7)
    c = a + b
    assert (c.valuation, c.prec) == (-2, 3)
    assert c[2] == 2 and c[-2] == 1


def test_mul_examples():
    assert poly({0: 1, 1: 1}, 6) * poly({0: 1, 1: -1}, 6) == poly({0: 1, 2: -1}, 6)
    one = QSeries.monomial(-1, 5) * QSeries.monomial(1, 5)
    assert one.nonzero_terms() == {0: 1}


def test_mul_precision_rule():
    a = QSeries(-1, 4, [1, 2, 3, 4, 5])
    b = QSeries(2, 5, [1, 1, 1])
    c = a * b
    assert c.valuation == 1
    assert c.prec == min(-1 + 5, 2 + 4)


def test_e4_squared_is_e8():
    N = 11
    E8 = QSeries(0, N, eisenstein_coeffs(8, N))
    assert series_mul(eisenstein(4, N), eisenstein(4, N)) == E8


def test_dq_examples():
    assert series_Dq(QSeries.monomial(3, 6)) == QSeries.monomial(3, 6, 3)
    assert series_Dq(QSeries.constant(1, 4)).is_zero()
    D = series_Dq(delta(6))
    tau = delta_coeffs(6)
    assert (D[1], D[2]) == (1, -48)
    assert D[2] == 2 * tau[1]


def test_invert_examples():
    g = series_invert(poly({0: 1, 1: -1}, 8))
    assert g == QSeries(0, 8, [1] * 8)
    assert series_invert(QSeries.monomial(1, 5)).nonzero_terms() == {-1: 1}
    inv = series_invert(delta(10))
    # 1/Delta = q^{-1} prod (1 - q^n)^{-24}
    expected = euler_product_power(-24, 8)
    assert inv.valuation == -1 and inv.prec == 8
    assert [inv[n] for n in range(-1, 7)] == expected
    assert [inv[n] for n in (-1, 0, 1)] == [1, 24, 324]


def test_invert_errors():
    with pytest.raises(ZeroDivisionError, match="not invertible"):
        QSeries.constant(0, 5).invert()


def test_never_reports_beyond_precision():
    a = QSeries.constant(1, 4)
    with pytest.raises(IndexError):
        a[4]
    with pytest.raises(ValueError):
        a.truncate(6)


def test_json_round_trip():
    a = QSeries(-1, 4, [Fraction(1, 3), 0, Fraction(-7, 2), 10**30, 1])
    s = a.to_json()
    b = QSeries.from_json(s)
    assert b.valuation == a.valuation and b.prec == a.prec and b.coeffs == a.coeffs
    assert b.to_json() == s
    assert '"1/3"' in s and '"0/1"' in s


def test_delta_matches_product_formula():
    N = 30
    D = delta(N)
    tau = delta_coeffs(N - 1)
    assert [D[n] for n in range(1, N)] == tau


rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20))


@st.composite
def qseries(draw, min_len=1):
    v = draw(st.integers(-3, 3))
    n = draw(st.integers(min_len, 7))
    coeffs = draw(st.lists(rationals, min_size=n, max_size=n))
    return QSeries(v, v + n, coeffs)


@st.composite
def units(draw):
    f = draw(qseries())
    lead = draw(st.builds(Fraction, st.integers(1, 9) | st.integers(-9, -1), st.integers(1, 5)))
    return QSeries(f.valuation, f.prec, (lead,) + f.coeffs[1:])


@settings(max_examples=60, deadline=None)
@given(qseries(), qseries(), qseries())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    lhs, rhs = a * (b + c), a * b + a * c
    N = min(lhs.prec, rhs.prec)
    assert lhs.agrees_with(rhs, N)
    assert (a + b) + c == a + (b + c)


@settings(max_examples=60, deadline=None)
@given(qseries(), qseries())
def test_dq_is_a_derivation(a, b):
    assert (a * b).Dq() == a.Dq() * b + a * b.Dq()


@settings(max_examples=60, deadline=None)
@given(units())
def test_invert_is_inverse(a):
    prod = a * a.invert()
    assert prod.nonzero_terms() == {0: 1}
