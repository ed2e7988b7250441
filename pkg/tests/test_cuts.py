import random
from fractions import Fraction

import pytest

from valdiff.coarsen import CoarseContext
from valdiff.cuts import (
    CutClass,
    classify_delta,
    ddeg_along_cut,
    ddeg_along_cut_coarse,
    gap_increments,
    growth_diagnostic,
    scale_cut,
    shift_cut,
    specialize_cut,
    validate_cut,
)
from valdiff.diffpoly import DiffPoly
from valdiff.errors import NotPseudoCauchy
from valdiff.ordgroup import ConvexLevel
from valdiff.oracle import GenConfig, rand_cut, rand_poly, rand_series
from valdiff.residue import QQ_TRIVIAL
from valdiff.series import DerivationSpec, Series

from conftest import EULER, EULER2, SMALL2, gv, mono

Y = DiffPoly.var(0, EULER)
ELL = mono(1) + mono(2) + mono(3)
CUT = validate_cut([Series.zero(1), mono(1), mono(1) + mono(2)])
D1 = ConvexLevel(2, 1)


def _cut2(*gammas, start=None):
    pts = [start if start is not None else Series.zero(2)]
    for g in gammas:
        pts.append(pts[-1] + mono(g))
    return validate_cut(pts)


def test_validate_examples():
    assert CUT.gammas == (gv(1), gv(2))
    with pytest.raises(NotPseudoCauchy):
        validate_cut([Series.zero(1), mono(1), mono(1)])
    with pytest.raises(NotPseudoCauchy):
        validate_cut([Series.zero(1), mono(2), mono(2) + mono(1)])
    with pytest.raises(NotPseudoCauchy):
        validate_cut([Series.zero(1), mono(1)])


def test_pc_law_on_random_cuts():
    cfg = GenConfig(seed=5, rank=2)
    rng = cfg.rng("pc")
    for _ in range(50):
        cut = rand_cut(rng, cfg, m=5)
        for i in range(cut.m):
            for j in range(i + 1, cut.m + 1):
                assert (cut.points[j] - cut.points[i]).valuation() == cut.gammas[i]


def test_ddeg_along_cut_examples():
    r = ddeg_along_cut(Y - ELL, CUT)
    assert r.values == (1, 1) and r.stabilized and r.value == 1
    assert ddeg_along_cut(DiffPoly.const(Series.constant(1, 1), EULER), CUT).values == (0, 0)
    assert ddeg_along_cut((Y - ELL) * (Y - ELL), CUT).values == (2, 2)


def test_classify_examples():
    assert classify_delta(_cut2((0, 1), (0, 2), (0, 3)), D1) is CutClass.JAMMED
    assert classify_delta(_cut2((0, 1), (1, 0), (2, 0)), D1) is CutClass.FLUENT
    assert classify_delta(_cut2((0, 1), (0, 2), (1, 0)), D1) is CutClass.MIXED
    with pytest.raises(ValueError):
        classify_delta(_cut2((0, 1), (0, 2), (0, 3)), ConvexLevel(2, 0))


def test_transform_examples():
    assert shift_cut(CUT, Series.constant(5, 1)).gammas == CUT.gammas
    assert scale_cut(CUT, mono(1)).gammas == (gv(2), gv(3))
    assert scale_cut(CUT, 3 + mono(1)).gammas == CUT.gammas
    with pytest.raises(ValueError):
        scale_cut(CUT, Series.zero(1))


def _corpus(seed, n, rank=1, deriv=None):
    cfg = GenConfig(seed=seed, rank=rank, max_order=1, max_degree=3, deriv=deriv)
    rng = cfg.rng("laws")
    for _ in range(n):
        yield rng, cfg, rand_poly(rng, cfg), rand_cut(rng, cfg, m=4)


def test_monotone_and_bounded():
    for _, _, P, cut in _corpus(7, 80, rank=2, deriv=SMALL2):
        vals = ddeg_along_cut(P, cut).values
        assert all(a >= b for a, b in zip(vals, vals[1:]))
        assert vals[0] <= P.degree()


def test_shift_law():
    for rng, cfg, P, cut in _corpus(8, 60):
        y = rand_series(rng, QQ_TRIVIAL, 1, 3, 2)
        assert ddeg_along_cut(P.add_conj(y), cut).values == ddeg_along_cut(P, shift_cut(cut, y)).values


def test_scale_law():
    for rng, cfg, P, cut in _corpus(9, 60):
        g = mono(rng.randint(-2, 2), rng.randint(1, 4))
        if rng.random() < 0.5:
            g = g * (1 + mono(1))
        assert ddeg_along_cut(P.mul_conj(g), cut).values == ddeg_along_cut(P, scale_cut(cut, g)).values


def test_additivity():
    for rng, cfg, P, cut in _corpus(10, 40):
        Q = rand_poly(rng, cfg)
        lhs = ddeg_along_cut(P * Q, cut).values
        rhs = tuple(a + b for a, b in zip(ddeg_along_cut(P, cut).values, ddeg_along_cut(Q, cut).values))
        assert lhs == rhs


def test_root_forces_positive_ddeg():
    rng = random.Random(11)
    cfg = GenConfig(seed=11, rank=1, max_order=1, max_degree=2)
    for _ in range(40):
        ell = rand_series(rng, QQ_TRIVIAL, 1, 3, 4)
        # a_i = ell - t^{g_i} pseudoconverges to ell
        cut = validate_cut([ell - mono(g) for g in sorted(rng.sample(range(-4, 10), 4))])
        P = (Y - ell) * rand_poly(rng, cfg)
        assert ddeg_along_cut(P, cut).value >= 1


def test_equivalent_cut_stability():
    ell = sum((mono(i) for i in range(1, 8)), Series.zero(1))
    a = validate_cut([sum((mono(i) for i in range(1, k)), Series.zero(1)) for k in range(1, 7)])
    b = validate_cut([p + mono(i + 2, 3) for i, p in enumerate(a.points)])
    assert b.gammas == a.gammas
    for P in [Y - ell, (Y - ell) * (Y - ell), (Y - ell) * DiffPoly.var(1, EULER) + mono(7)]:
        ra, rb = ddeg_along_cut(P, a), ddeg_along_cut(P, b)
        assert ra.stabilized and rb.stabilized and ra.value == rb.value


def test_classify_invariance():
    cfg = GenConfig(seed=12, rank=2)
    rng = cfg.rng("classify")
    for mode in ["jammed", "fluent", "any"]:
        for _ in range(30):
            cut = rand_cut(rng, cfg, m=4, mode=mode)
            c = classify_delta(cut, D1)
            if mode == "jammed":
                assert c is CutClass.JAMMED
            if mode == "fluent":
                assert c is CutClass.FLUENT
            y = rand_series(rng, QQ_TRIVIAL, 2, 3, 2)
            assert classify_delta(shift_cut(cut, y), D1) is c
            if c is CutClass.JAMMED:
                assert classify_delta(scale_cut(cut, mono((0, rng.randint(-3, 3)))), D1) is c


def test_gap_increments():
    cut = _cut2((0, 1), (1, 0), (2, 0))
    assert gap_increments(cut) == [gv(1, -1), gv(2, -1), gv(1, 0)]


def test_coarse_along_jammed_and_specialize():
    ctx = CoarseContext.of(2, 1)
    cut = _cut2((0, 1), (0, 2), (0, 4))
    P = DiffPoly.var(0, EULER2) - (mono((0, 1)) + mono((0, 2)) + mono((0, 4)))
    assert ddeg_along_cut(P, cut).values == ddeg_along_cut_coarse(P, cut, ctx).values == (1, 1, 1)
    sc = specialize_cut(cut, ctx)
    assert sc.gammas == (gv(1), gv(2), gv(4))


def test_growth_examples():
    g = validate_cut([Series.zero(1), mono(1), mono(1) + mono(2), mono(1) + mono(2) + mono(3)])
    assert growth_diagnostic(Y, g).passed
    r = growth_diagnostic(DiffPoly.var(1, EULER), g)
    assert r.passed and r.values == (gv(1), gv(2), gv(3))
    r = growth_diagnostic(Y * Y, g)
    assert r.passed and r.values == (gv(2), gv(4), gv(6)) and r.degree == 2
    with pytest.raises(ValueError):
        growth_diagnostic(Y * Y + Y, g)
    with pytest.raises(ValueError):
        growth_diagnostic(DiffPoly.const(Series.constant(1, 1), EULER), g)


def test_growth_fails_for_non_small_derivation():
    # rho < 0 and the weight switches off on gamma_1 = 0: v_P jumps by a class-0 amount
    D = DerivationSpec((-1, 0), (Fraction(1), Fraction(0)))
    P = DiffPoly.var(1, D)
    cut = _cut2((0, 1), (1, 0), (2, 0))
    r = growth_diagnostic(P, cut)
    assert not r.passed and r.violation == (0, 1)
