"""Brute-force references and seeded generators.

The references below work on plain dicts of tuples and share no code with
:mod:`valdiff.diffpoly`; only the returned containers are common types.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from math import comb

from .diffpoly import DiffPoly, DominantData
from .errors import EmptyPool, InsufficientPrecision, ZeroPolynomial
from .ordgroup import INF, ConvexLevel, GroupVector
from .residue import QQ_TRIVIAL, ResidueField, ResiduePoly, field_by_name
from .series import DerivationSpec, Series


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    rank: int = 1
    max_order: int = 2
    max_degree: int = 3
    pool: int = 5
    box: int = 3
    count: int = 100
    field: str = "Q"
    deriv: DerivationSpec = dc_field(default=None)

    def derivation(self) -> DerivationSpec:
        return self.deriv if self.deriv is not None else DerivationSpec.euler(self.rank)

    def residue_field(self) -> ResidueField:
        return field_by_name(self.field)

    def rng(self, salt: str = "") -> random.Random:
        return random.Random(f"{self.seed}:{salt}")


# -- plain-dict references ------------------------------------------------------


def _min_exp(P: DiffPoly):
    best = None
    for c in P.terms.values():
        for e in c.terms:
            t = tuple(e)
            if best is None or t < best:
                best = t
    return best


def brute_dominant(P: DiffPoly) -> DominantData:
    """Scan every coefficient term, take the least exponent, read off its coefficients."""
    if not P.terms:
        raise ZeroPolynomial("dominant part of the zero polynomial")
    m = _min_exp(P)
    if m is None:
        raise InsufficientPrecision("no coefficient has a known term")
    for c in P.terms.values():
        if c.frontier is not INF and not tuple(c.frontier) > m:
            raise InsufficientPrecision("a coefficient is unknown at the minimum")
    picked = {k: c.terms[m] for k, c in P.terms.items() if m in c.terms}
    dpart = ResiduePoly(P.field, picked)
    deg = max(sum(k) for k in picked)
    return DominantData(dpart, Series.monomial(m, 1, P.field), deg)


def brute_ddeg_geq(P: DiffPoly, gamma, pool) -> int:
    """max ddeg P_{x f} over a finite pool of f with v(f) >= gamma."""
    pool = list(pool)
    if not pool:
        raise EmptyPool("witness pool is empty")
    gamma = tuple(gamma)
    best = None
    for f in pool:
        if not tuple(f.valuation()) >= gamma:
            raise ValueError(f"pool element {f} has valuation below {list(gamma)}")
        d = brute_dominant(P.mul_conj(f)).ddeg
        best = d if best is None else max(best, d)
    return best


def _dict_mul(a: dict, b: dict) -> dict:
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def _dict_derive(a: dict, D: DerivationSpec, field: ResidueField) -> dict:
    out = {}
    coef = D.coef_derivation == "field" and not field.derivation_is_trivial
    for e, c in a.items():
        if coef:
            dc = field.derive(c)
            out[e] = out.get(e, 0) + dc
        w = sum(x * y for x, y in zip(e, D.weights))
        if w:
            e2 = tuple(x + y for x, y in zip(e, D.rho))
            out[e2] = out.get(e2, 0) + c * w
    return {e: c for e, c in out.items() if c != 0}


def brute_eval(P: DiffPoly, a: Series) -> dict:
    """P(a) as a dict exponent -> coefficient, for exact P and a."""
    if not (a.is_exact and P.is_exact):
        raise ValueError("brute_eval needs exact inputs")
    D, field = P.deriv, P.field
    r = max((len(k) - 1 for k in P.terms if k), default=0)
    ders = [{tuple(e): c for e, c in a.terms.items()}]
    for _ in range(r):
        ders.append(_dict_derive(ders[-1], D, field))
    total = {}
    for key, c in P.terms.items():
        prod = {tuple(e): v for e, v in c.terms.items()}
        for i, k in enumerate(key):
            for _ in range(k):
                prod = _dict_mul(prod, ders[i])
        for e, v in prod.items():
            total[e] = total.get(e, 0) + v
    return {e: c for e, c in total.items() if c != 0}


def brute_mul_conj(P: DiffPoly, a: Series) -> DiffPoly:
    """P(aY) by the general Leibniz rule, built key by key."""
    D = P.deriv
    r = max((len(k) - 1 for k in P.terms if k), default=0)
    ders = [a]
    for _ in range(r):
        ders.append(D.apply(ders[-1]))
    out = DiffPoly({}, D, P.field)
    for key, c in P.terms.items():
        term = DiffPoly.const(c, D, P.field)
        for i, k in enumerate(key):
            image = DiffPoly({}, D, P.field)
            for j in range(i + 1):
                image = image + DiffPoly({(0,) * j + (1,): ders[i - j] * comb(i, j)}, D, P.field)
            for _ in range(k):
                term = term * image
        out = out + term
    return out


# -- generators ---------------------------------------------------------------


def rand_coef(rng: random.Random, field: ResidueField, pool: int = 5):
    if field is QQ_TRIVIAL:
        num = rng.choice([i for i in range(-pool, pool + 1) if i])
        return Fraction(num, rng.randint(1, pool))
    return field.random_element(rng)


def rand_series(rng, field, rank, box=3, nterms=3, pool=5, lo=None) -> Series:
    """Exact series with exponents in [-box, box]^rank, all >= lo when given."""
    terms = {}
    lo = None if lo is None else GroupVector(lo)
    while not terms:
        for _ in range(rng.randint(1, nterms)):
            e = GroupVector(rng.randint(-box, box) for _ in range(rank))
            if lo is not None:
                e = e if e >= lo else lo + GroupVector(abs(x) for x in e)
            terms[e] = rand_coef(rng, field, pool)
    return Series(terms, INF, field, rank)


def rand_key(rng, max_order, max_degree, min_degree=0):
    deg = rng.randint(min_degree, max_degree)
    key = [0] * (max_order + 1)
    for _ in range(deg):
        key[rng.randint(0, max_order)] += 1
    return tuple(key)


def rand_poly(rng, cfg: GenConfig, nterms: int = 3, lo=None, degree=None) -> DiffPoly:
    """Nonzero random differential polynomial; ``degree`` forces homogeneity."""
    D, field = cfg.derivation(), cfg.residue_field()
    while True:
        terms = {}
        for _ in range(rng.randint(1, nterms)):
            if degree is None:
                key = rand_key(rng, cfg.max_order, cfg.max_degree)
            else:
                key = rand_key(rng, cfg.max_order, degree, degree)
            terms[key] = rand_series(rng, field, cfg.rank, cfg.box, 2, cfg.pool, lo)
        P = DiffPoly(terms, D, field)
        if not P.is_zero():
            return P


def cut_from_gammas(rng, field, gammas, start: Series, pool=5, tail=1) -> list:
    """Points a_0 = start, a_{i+1} = a_i + c t^{g_i} (+ a few terms above g_i)."""
    pts = [start]
    rank = len(gammas[0])
    for g in gammas:
        inc = {GroupVector(g): rand_coef(rng, field, pool)}
        for _ in range(rng.randint(0, tail)):
            bump = GroupVector(rng.randint(0, 2) for _ in range(rank))
            if bump > GroupVector.zero(rank):
                inc[GroupVector(g) + bump] = rand_coef(rng, field, pool)
        pts.append(pts[-1] + Series(inc, INF, field, rank))
    return pts


def rand_gammas(rng, rank, m, box=3, mode="any", k=1):
    """m strictly increasing exponents.

    ``mode`` is ``"jammed"`` (all in one coset of Delta_k), ``"fluent"``
    (increments above Delta_k) or ``"any"``.
    """
    if mode == "any":
        seen = set()
        while len(seen) < m:
            seen.add(GroupVector(rng.randint(-box, box + m) for _ in range(rank)))
        return sorted(seen)
    head = GroupVector(rng.randint(-box, box) for _ in range(k))
    out = []
    for i in range(m):
        if mode == "jammed":
            top = head
            tail_ = GroupVector([rng.randint(-box, box) + 3 * box * i] + [rng.randint(-box, box) for _ in range(rank - k - 1)])
        elif mode == "fluent":
            top = head + GroupVector([i] + [0] * (k - 1))
            tail_ = GroupVector(rng.randint(-box, box) for _ in range(rank - k))
        else:
            raise ValueError(f"unknown cut mode {mode!r}")
        out.append(GroupVector(tuple(top) + tuple(tail_)))
    return out


def rand_cut(rng, cfg: GenConfig, m: int = 4, mode="any", k=1, start=None):
    from .cuts import validate_cut
    field = cfg.residue_field()
    gammas = rand_gammas(rng, cfg.rank, m, cfg.box, mode, k)
    if start is None:
        start = rand_series(rng, field, cfg.rank, cfg.box, 2, cfg.pool)
    return validate_cut(cut_from_gammas(rng, field, gammas, start, cfg.pool))


def dh_instance(rng, cfg: GenConfig) -> DiffPoly:
    """P = u + L + N over Q((t)) with t d/dt.

    v(u) > 0; L = sum l_i Y^(i) whose unit parts have positive rational
    residues; every coefficient of N has positive valuation.  Under t d/dt
    the linear residue equation at any gamma > 0 is c + (sum l_i gamma^i) z,
    never degenerate.
    """
    D = DerivationSpec.euler(1)
    one = GroupVector((1,))

    def pos():
        return rand_series(rng, QQ_TRIVIAL, 1, cfg.box, 2, cfg.pool, one)

    terms = {(): pos()}
    r = rng.randint(0, cfg.max_order)
    for i in range(r + 1):
        if i < r and rng.random() < 0.3:
            continue
        lead = Fraction(rng.randint(1, cfg.pool), rng.randint(1, cfg.pool))
        terms[(0,) * i + (1,)] = Series.constant(lead, 1) + (pos() if rng.random() < 0.5 else 0)
    for _ in range(rng.randint(0, 2)):
        key = rand_key(rng, cfg.max_order, cfg.max_degree, 2)
        terms[key] = pos()
    return DiffPoly(terms, D, QQ_TRIVIAL)


def gen_instances(kind: str, cfg: GenConfig) -> list:
    rng = cfg.rng(kind)
    n = cfg.count
    if kind == "series":
        return [rand_series(rng, cfg.residue_field(), cfg.rank, cfg.box, 4, cfg.pool) for _ in range(n)]
    if kind == "poly":
        return [rand_poly(rng, cfg) for _ in range(n)]
    if kind == "cut":
        return [rand_cut(rng, cfg) for _ in range(n)]
    if kind == "dhInstance":
        return [dh_instance(rng, cfg) for _ in range(n)]
    raise ValueError(f"unknown corpus kind {kind!r}")


def unit_pool(rng, gamma, field, size=20, box=3, pool=5):
    """Monomials t^g' (g' >= gamma) times random units."""
    gamma = GroupVector(gamma)
    rank = len(gamma)
    out = [Series.monomial(gamma, 1, field)]
    for _ in range(size - 1):
        shift = GroupVector(rng.randint(0, 2) for _ in range(rank))
        if shift < GroupVector.zero(rank):
            shift = -shift
        u = Series.constant(rand_coef(rng, field, pool), rank, field)
        if rng.random() < 0.7:
            u = u + rand_series(rng, field, rank, box, 2, pool, GroupVector.unit(rank, rank - 1))
        out.append(u.shift(gamma + shift))
    return out


def grid_derivations(rank: int = 1, span: int = 3, weights=(-1, 0, 1, 2)):
    """Every rho in [-span, span]^rank with every weight pattern."""
    for rho in product(range(-span, span + 1), repeat=rank):
        for w in product(weights, repeat=rank):
            yield DerivationSpec(rho, tuple(Fraction(x) for x in w))


def coarse_level(cfg: GenConfig, k: int = 1) -> ConvexLevel:
    return ConvexLevel(cfg.rank, k)
