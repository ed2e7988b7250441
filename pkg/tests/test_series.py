import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from valdiff.errors import (
    DivisionByZero,
    InsufficientPrecision,
    NotInValuationRing,
    RankMismatch,
    ZeroHasNoValuation,
)
from valdiff.ordgroup import INF, GroupVector
from valdiff.oracle import grid_derivations, rand_series
from valdiff.residue import QQ_TRIVIAL, QQ_X
from valdiff.series import (
    DerivationSpec,
    Dominance,
    Series,
    asymptotic_check,
    derive,
    dominance_relate,
    few_constants_check,
    field_checks,
    monotone_check,
    residue_map,
    series_arith,
    small_check,
    valuation,
)

from conftest import EULER, EULER2, SMALL2, gv, mono, ser


def test_inverse_geometric():
    a = ser((0, 1), (1, -1))
    assert a.inverse(frontier=(3,)) == ser((0, 1), (1, 1), (2, 1), frontier=3)


def test_product_and_frontier_rules():
    assert ser((0, 2), (1, 3)) * mono(1) == ser((1, 2), (2, 3))
    s = ser((0, 1), frontier=5) + ser((1, 1), frontier=3)
    assert s.frontier == gv(3)
    # mul: min(phi_a + v(b), phi_b + v(a))
    p = ser((1, 1), frontier=4) * ser((2, 1), frontier=6)
    assert p.frontier == gv(min(4 + 2, 6 + 1))


def test_inverse_errors():
    with pytest.raises(DivisionByZero):
        series_arith("inv", Series.zero(1))
    with pytest.raises(InsufficientPrecision):
        Series({}, (2,), QQ_TRIVIAL, 1).inverse()


def test_valuation_examples():
    assert valuation(mono((0, 1)) + mono((1, 0))) == gv(0, 1)
    assert valuation(Series.constant(5, 3)) == gv(0, 0, 0)
    with pytest.raises(ZeroHasNoValuation):
        valuation(mono(3) - mono(3))
    with pytest.raises(InsufficientPrecision):
        valuation(Series({}, (4,), QQ_TRIVIAL, 1))


def test_derive_examples():
    assert derive(ser((2, 3), (5, 1)), EULER) == ser((2, 6), (5, 5))
    s = mono((1, 0))
    assert derive(s, SMALL2) == mono((1, -1))
    assert derive(Series.constant(7), EULER).is_zero()


def test_derive_frontier():
    D = DerivationSpec((-2,), (Fraction(1),))
    a = ser((1, 1), frontier=5)
    assert derive(a, D).frontier == gv(3)


def test_coefficient_derivation():
    x = QQ_X.x
    D = DerivationSpec((0,), (Fraction(1),), "field")
    a = Series({(1,): x**2}, INF, QQ_X, 1)
    # (x^2 t)' = 2x t + x^2 t
    assert derive(a, D) == Series({(1,): 2 * x + x**2}, INF, QQ_X, 1)


def test_residue_examples():
    assert residue_map(ser((0, 2), (1, 3))) == 2
    assert residue_map(mono(1)) == 0
    with pytest.raises(NotInValuationRing):
        residue_map(mono(-1))


def test_dominance_examples():
    assert dominance_relate(mono(1), Series.constant(1)) == {Dominance.PRECEQ, Dominance.PREC}
    assert dominance_relate(ser((0, 2), (1, 1)), Series.constant(2)) == {
        Dominance.PRECEQ, Dominance.ASYMP, Dominance.SIM}
    assert dominance_relate(mono(1), mono(1)) == {Dominance.PRECEQ, Dominance.ASYMP, Dominance.SIM}
    with pytest.raises(ZeroHasNoValuation):
        dominance_relate(Series.zero(1), mono(1))


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        mono(1) + mono((0, 1))


def test_checks_examples():
    assert small_check(SMALL2).passed
    mono_rep = monotone_check(SMALL2)
    assert not mono_rep.passed
    w = mono_rep.witness
    assert w.valuation() == gv(1, 0)
    assert derive(w, SMALL2).valuation() == gv(1, -1) < gv(1, 0)

    D = DerivationSpec((-1,), (Fraction(1),))
    rep = small_check(D)
    assert not rep.passed
    assert rep.witness == mono(1)
    assert derive(rep.witness, D).valuation() == gv(0)

    assert small_check(EULER).passed and monotone_check(EULER).passed


def test_small_witness_leaves_m():
    # every failing small_check witness w has v(w) > 0 and v(w') <= 0
    for D in grid_derivations(2, span=2, weights=(0, 1)):
        rep = small_check(D)
        if not rep.passed:
            w = rep.witness
            assert w.valuation() > gv(0, 0)
            assert not derive(w, D).valuation() > gv(0, 0)


def test_small_check_sound_on_samples():
    rng = random.Random(5)
    zero = gv(0, 0)
    for D in grid_derivations(2, span=2, weights=(0, 1)):
        if not small_check(D).passed:
            continue
        for _ in range(20):
            a = rand_series(rng, QQ_TRIVIAL, 2, 3, 3, lo=gv(0, 1))
            da = derive(a, D)
            assert da.is_zero() or da.valuation() > zero


def test_small_check_sound_500_rank1():
    rng = random.Random(6)
    D = EULER
    for _ in range(500):
        a = rand_series(rng, QQ_TRIVIAL, 1, 4, 3, lo=gv(1))
        da = derive(a, D)
        assert da.is_zero() or da.valuation() > gv(0)


def test_rank1_small_implies_monotone():
    for D in grid_derivations(1, span=3, weights=(-2, -1, 0, 1, 2)):
        if small_check(D).passed:
            assert monotone_check(D).passed, D


def test_sampled_checks():
    assert asymptotic_check(EULER, count=60).passed
    assert few_constants_check(EULER, count=60).passed
    samples = [mono((a, b)) for a in (1, 2) for b in (-2, 0, 3)]
    assert asymptotic_check(SMALL2, samples=samples).passed
    assert not asymptotic_check(EULER2, count=60).passed  # t^(0,1) is a constant in m
    flat = DerivationSpec((0,), (Fraction(0),), "field")
    rep = few_constants_check(flat, QQ_X, samples=[mono(-2, field=QQ_X)])
    assert not rep.passed and rep.witness == mono(-2, field=QQ_X)
    with pytest.raises(ValueError):
        field_checks(EULER, "tame")


series1 = st.lists(st.tuples(st.integers(-4, 6), st.fractions(-5, 5, max_denominator=4)),
                   min_size=1, max_size=4).map(lambda ps: ser(*ps))


@given(series1, series1)
def test_valuation_laws(a, b):
    if a.is_zero() or b.is_zero():
        return
    assert (a * b).valuation() == a.valuation() + b.valuation()
    s = a + b
    if not s.is_zero():
        assert s.valuation() >= min(a.valuation(), b.valuation())
        if a.valuation() != b.valuation():
            assert s.valuation() == min(a.valuation(), b.valuation())


@given(series1, series1)
def test_leibniz(a, b):
    for D in (EULER, DerivationSpec((-1,), (Fraction(2),)), DerivationSpec((2,), (Fraction(-1),))):
        assert derive(a * b, D) == derive(a, D) * b + a * derive(b, D)


@given(series1, series1, st.integers(0, 6), st.integers(0, 6))
def test_frontier_soundness(a, b, f1, f2):
    lo, hi = min(f1, f2), max(f1, f2)
    for op in (lambda u, v: u + v, lambda u, v: u * v):
        coarse = op(a.truncate((lo,)), b.truncate((lo,)))
        fine = op(a.truncate((hi,)), b.truncate((hi,)))
        assert fine.agrees_with(coarse)
        assert op(a, b).agrees_with(coarse)


def test_inverse_roundtrip():
    rng = random.Random(9)
    for _ in range(50):
        a = rand_series(rng, QQ_TRIVIAL, 1, 3, 3)
        inv = a.inverse(frontier=(8,))
        prod = a * inv
        one = Series.constant(1)
        assert prod.agrees_with(one)


def test_pretty():
    assert str(ser((1, Fraction(-1, 2)))) == "-1/2 t"
    assert str(ser((1, -1), (3, 1), frontier=5)) == "-t + t^3 + O(t^5)"
    assert str(mono((0, 1))) == "t^(0,1)"
    assert str(Series.zero(1)) == "0"
