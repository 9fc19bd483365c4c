from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geodense.errors import NotInvertibleError, UsageError
from geodense.series import (
    RadialSeries,
    WarpVar,
    WeightedPoly,
    poly_arith,
    series_arith,
    series_derivative,
    series_invert,
    sin_series,
    sinh_series,
)

W = 8
b21, b22, b31, b41, b51 = (WeightedPoly.var(WarpVar(i, j), W)
                           for i, j in [(1, 2), (2, 2), (1, 3), (1, 4), (1, 5)])


def series(*coeffs, low=0, order=None, budget=0):
    return RadialSeries(coeffs, low=low, order=order, budget=budget)


# -- weighted polynomials ------------------------------------------------------

def test_cancellation():
    assert poly_arith(b21 + b22, -b21, "add") == b22


def test_product_within_budget_is_kept():
    prod = poly_arith(b21, b31, "mul")
    assert len(prod) == 1
    assert prod.weights() == {5}


def test_product_over_budget_is_truncated():
    assert poly_arith(b41, b51, "mul") == 0


def test_mismatched_budgets_rejected():
    with pytest.raises(UsageError):
        b21 + WeightedPoly.var(WarpVar(1, 2), 6)


def test_scale_and_evaluate():
    p = poly_arith(b21 * b31 + 3, F(1, 2), "scale")
    assert p.evaluate({WarpVar(1, 2): 2, WarpVar(1, 3): 5}) == F(13, 2)


def test_inverse_of_unit():
    u = 1 + b21
    inv = u.inverse()
    assert u * inv == 1
    # 1/(1+x) = 1 - x + x^2 - x^3 + x^4 with x of weight 2 and budget 8
    assert len(inv) == 5


def test_inverse_needs_constant_part():
    with pytest.raises(NotInvertibleError):
        b21.inverse()


def test_items_are_graded_lex():
    p = b31 + b21 + b22 + b21 * b21
    weights = [sum(v.degree * e for v, e in mono) for mono, _ in p.items()]
    assert weights == sorted(weights)


_vars = [WarpVar(i, j) for i in (1, 2) for j in (2, 3)]
small_poly = st.dictionaries(
    st.lists(st.sampled_from(_vars), max_size=3).map(
        lambda vs: tuple(sorted({v: vs.count(v) for v in vs}.items()))),
    st.fractions(min_value=-9, max_value=9, max_denominator=5),
    max_size=4,
).map(lambda d: WeightedPoly(d, budget=6))


@settings(max_examples=60, deadline=None)
@given(small_poly, small_poly, small_poly)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(small_poly, small_poly)
def test_truncation_soundness(a, b):
    wide = a.with_budget(12) * b.with_budget(12)
    narrow = a * b
    for mono, c in wide.items():
        w = sum(v.degree * e for v, e in mono)
        if w <= 6:
            assert narrow.coefficient(mono) == c


# -- radial series -------------------------------------------------------------

def test_square():
    s = series(1, 0, F(-1, 6), 0, 0, order=4)
    assert series_arith(s, s, "mul").rationals() == [1, 0, F(-1, 3), 0, F(1, 36)]


def _brute_product(a, b, n):
    return [sum(a[i] * b[p - i] for i in range(p + 1)) for p in range(n + 1)]


def test_sin_times_sinh_over_r_squared():
    sin_r = sin_series(5).shift(-1)
    sinh_r = sinh_series(5).shift(-1)
    got = series_arith(sin_r, sinh_r, "mul").rationals()
    a = [F((-1) ** (p // 2), factorial(p + 1)) if p % 2 == 0 else 0 for p in range(5)]
    b = [F(1, factorial(p + 1)) if p % 2 == 0 else 0 for p in range(5)]
    assert got == _brute_product(a, b, 4)
    # 1/120 + 1/120 - 1/36 = -1/90
    assert got == [1, 0, 0, 0, F(-1, 90)]


def test_laurent_inverse_pairing():
    u = series(1, 2, F(1, 3), 5, order=3)
    r2u = u.shift(2)
    assert (r2u * series_invert(r2u)).rationals() == [1, 0, 0, 0]
    inv = series_invert(u).shift(-2)
    assert inv.low == -2
    assert (inv * r2u).rationals() == [1, 0, 0, 0]


def test_geometric_series():
    inv = series_invert(series(1, 0, -1, 0, 0, 0, 0, order=6))
    assert inv.rationals() == [1, 0, 1, 0, 1, 0, 1]


def test_invert_one():
    assert series_invert(series(1, order=5)).rationals() == [1, 0, 0, 0, 0, 0]


def test_invert_sin_squared():
    sin2 = sin_series(9) * sin_series(9)
    inv = series_invert(sin2)
    assert inv.low == -2
    # csc^2 r = r^-2 + 1/3 + r^2/15 + 2 r^4/189 + r^6/675 + ...
    assert inv.rationals()[:5] == [1, 0, F(1, 3), 0, F(1, 15)]
    assert inv.rationals()[6] == F(2, 189)
    check = (inv * sin2).normalized()
    assert check.rationals() == [1] + [0] * (check.order - check.low)


def test_invert_rejects_symbolic_leading_term():
    s = RadialSeries([b21, 1], order=3, budget=W)
    with pytest.raises(NotInvertibleError):
        series_invert(s)
    with pytest.raises(NotInvertibleError):
        series_invert(series(0, 0, order=1))


def test_invert_unit_with_symbolic_tail():
    s = RadialSeries([1 + b21, b31], order=4, budget=W)
    prod = s * series_invert(s)
    assert prod.coeff(0) == 1
    assert all(prod.coeff(p) == 0 for p in range(1, prod.order + 1))


def test_derivative_examples():
    assert series_derivative(series(0, 0, 1, order=2)).rationals() == [0, 2]
    assert series_derivative(series(7, order=3)).is_zero()
    sin2 = sin_series(9) * sin_series(9)
    d = series_derivative(sin2)
    sin_2r = [c * 2 ** p for p, c in enumerate(sin_series(9).rationals())]
    assert d.rationals() == sin_2r[1:d.order + 1] and d.low == 1


def test_negative_powers_differentiate():
    d = series_derivative(series(1, 0, 1, low=-2, order=0))
    assert d.low == -3
    assert d.rationals() == [-2, 0, 0]


rational = st.fractions(min_value=-5, max_value=5, max_denominator=6)
unit_series = st.lists(rational, min_size=5, max_size=5).map(
    lambda cs: series(1, *cs, order=5))
any_series = st.lists(rational, min_size=6, max_size=6).map(lambda cs: series(*cs, order=5))


@settings(max_examples=60, deadline=None)
@given(unit_series, st.integers(min_value=0, max_value=3))
def test_invert_identity(u, shift):
    s = u.shift(shift)
    prod = s * series_invert(s)
    assert prod.rationals() == [1] + [0] * (prod.order - prod.low)


@settings(max_examples=60, deadline=None)
@given(any_series, any_series, any_series)
def test_series_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(any_series, any_series)
def test_derivative_is_a_derivation(a, b):
    lhs = series_derivative(a * b)
    rhs = series_derivative(a) * b + a * series_derivative(b)
    order = min(lhs.order, rhs.order)
    assert lhs.truncate(order) == rhs.truncate(order)


def test_coefficient_beyond_order_is_unknown():
    with pytest.raises(UsageError):
        series(1, 2, order=1).coeff(2)
