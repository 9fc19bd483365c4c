import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geodense.errors import UnsupportedOrderError, UsageError
from geodense.reference import GENERAL, HARMONIC
from geodense.traces import (
    TracePoly,
    derive,
    enumerate_basis,
    harmonic_reduce,
    make_monomial,
    make_word,
    monomial_order,
    parse_monomial,
    relation_generators,
    render_monomial,
    vanhecke_check,
    word_order,
)

Tr = TracePoly.word


def _brute_force_basis(order):
    """Multisets of sorted words by exhaustive search over bounded index tuples."""
    words = set()
    for length in range(1, order // 2 + 1):
        for idx in itertools.product(range(order), repeat=length):
            if sum(2 + i for i in idx) <= order:
                words.add(tuple(sorted(idx)))
    words = sorted(words)
    found = set()
    for n_factors in range(1, order // 2 + 1):
        for combo in itertools.combinations_with_replacement(words, n_factors):
            if sum(sum(2 + i for i in w) for w in combo) == order:
                found.add(frozenset((w, combo.count(w)) for w in combo))
    return found


@pytest.mark.parametrize("order", range(2, 9))
def test_basis_matches_brute_force(order):
    basis = enumerate_basis(order)
    as_sets = {frozenset((w, m.count(w)) for w in m) for m in basis}
    assert len(basis) == len(as_sets)
    assert as_sets == _brute_force_basis(order)


def test_basis_sizes():
    assert [len(enumerate_basis(k)) for k in range(2, 9)] == [1, 1, 3, 3, 8, 9, 20]
    assert enumerate_basis(2) == (make_monomial([(0,)]),)
    assert set(enumerate_basis(4)) == {parse_monomial(s) for s in ("Tr[2]", "Tr[0,0]", "Tr[0]^2")}


@pytest.mark.parametrize("order", range(2, 9))
def test_basis_is_the_published_monomial_set(order):
    assert set(enumerate_basis(order)) == set(GENERAL[order].monomials())


def test_basis_is_deterministic():
    enumerate_basis.cache_clear()
    first = enumerate_basis(8)
    enumerate_basis.cache_clear()
    assert enumerate_basis(8) == first


@pytest.mark.parametrize("order", [1, 9, 0])
def test_unsupported_orders(order):
    with pytest.raises(UnsupportedOrderError):
        enumerate_basis(order)


def test_word_order_is_additive():
    assert word_order((0, 1, 2)) == 9
    for a, b in [((0,), (1, 2)), ((0, 0), (3,)), ((1,), (1,))]:
        assert word_order(make_word(*a, *b)) == word_order(a) + word_order(b)


def test_render_and_parse_round_trip():
    for order in range(2, 9):
        for mono in enumerate_basis(order):
            assert parse_monomial(render_monomial(mono)) == mono
    assert render_monomial(parse_monomial("Tr[1,1]*Tr[0]^2")) == "Tr[0]^2*Tr[1,1]"
    with pytest.raises(UsageError):
        parse_monomial("Tr(0)")


def test_derive_examples():
    assert derive(Tr(0)) == Tr(1)
    assert derive(Tr(0) * Tr(0)) == (Tr(0) * Tr(1)).scale(2)
    assert derive(Tr(0, 1)) == Tr(1, 1) + Tr(0, 2)
    assert derive(GENERAL[2]) == GENERAL[3].scale(2)


_monos = [m for k in range(2, 6) for m in enumerate_basis(k)]
trace_poly = st.dictionaries(
    st.sampled_from(_monos),
    st.fractions(min_value=-5, max_value=5, max_denominator=7),
    max_size=4,
).map(TracePoly)


@settings(max_examples=50, deadline=None)
@given(trace_poly, trace_poly)
def test_derive_is_leibniz(p, q):
    assert derive(p * q) == derive(p) * q + p * derive(q)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(_monos))
def test_derive_raises_order_by_one(mono):
    d = derive(TracePoly({mono: 1}))
    assert d.orders() == {monomial_order(mono) + 1}


def test_reduce_examples():
    assert harmonic_reduce(Tr(2)) == 0
    assert harmonic_reduce(Tr(0, 2)) == -Tr(1, 1)
    assert harmonic_reduce(GENERAL[6]).coefficient("Tr[1,1]") == F(1, 10080)


def test_generators_reduce_to_zero():
    for gen in relation_generators():
        assert harmonic_reduce(gen) == 0, gen


@pytest.mark.parametrize("order", range(2, 9))
def test_reduce_published_formulas(order):
    assert harmonic_reduce(GENERAL[order]) == HARMONIC[order]


@settings(max_examples=50, deadline=None)
@given(trace_poly)
def test_reduce_idempotent(p):
    once = harmonic_reduce(p)
    assert harmonic_reduce(once) == once


def test_reduce_rejects_high_order():
    with pytest.raises(UnsupportedOrderError):
        harmonic_reduce(Tr(0, 0, 0) * Tr(1))


@pytest.mark.parametrize("k", [3, 5, 7])
def test_vanhecke(k):
    lhs, rhs = vanhecke_check(k, GENERAL)
    assert lhs == rhs


def test_vanhecke_order_three_value():
    _, rhs = vanhecke_check(3, GENERAL)
    assert rhs == Tr(1).scale(F(-1, 12))


@pytest.mark.parametrize("k", [2, 4, 9, 1])
def test_vanhecke_rejects_bad_orders(k):
    with pytest.raises(UsageError):
        vanhecke_check(k, GENERAL)


def test_latex_rendering():
    assert GENERAL[2].to_latex() == r"-\frac{\operatorname{Tr}\{\mathcal{J}\}}{6}"
    tex = GENERAL[8].to_latex()
    assert r"\frac{17\operatorname{Tr}\{\mathcal{J}^{2}\mathcal{J}_{2}\}}{113400}" in tex
