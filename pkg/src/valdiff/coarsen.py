"""Coarsening K_Delta and specialization K-dot by a convex subgroup Delta_k.

The coarse valuation keeps the first k coordinates of v.  Its residue field
K-dot is again a Hahn series field, over Delta_k = Z^(n-k); no separate
tower type is used, a specialized object is an ordinary :class:`Series` or
:class:`DiffPoly` of rank n-k.
"""
from __future__ import annotations

from dataclasses import dataclass

from .diffpoly import DiffPoly
from .errors import (
    AllCoefficientsVanish,
    DerivationNotInduced,
    InsufficientPrecision,
    NotInDotO,
    ZeroPolynomial,
)
from .ordgroup import INF, ConvexLevel, GroupVector, quotient_project, residual_part
from .series import DerivationSpec, Series, small_check


@dataclass(frozen=True)
class CoarseContext:
    level: ConvexLevel

    def __post_init__(self):
        if not self.level.proper_nontrivial:
            raise ValueError(f"Delta_{self.level.k} is not a proper nontrivial convex subgroup of Z^{self.level.n}")

    @classmethod
    def of(cls, n: int, k: int):
        return cls(ConvexLevel(n, k))

    @property
    def n(self):
        return self.level.n

    @property
    def k(self):
        return self.level.k

    @property
    def quotient_rank(self):
        return self.level.k

    @property
    def residual_rank(self):
        return self.level.n - self.level.k

    def project(self, g) -> GroupVector:
        return quotient_project(GroupVector(g), self.level)

    def lift(self, gdot) -> GroupVector:
        """The lift of a quotient element with zero Delta-part."""
        return GroupVector(tuple(gdot) + (0,) * self.residual_rank)

    def embed(self, delta) -> GroupVector:
        """Delta_k = Z^(n-k) inside Z^n."""
        return GroupVector((0,) * self.k + tuple(delta))


def coarse_valuation(a: Series, ctx: CoarseContext) -> GroupVector:
    return ctx.project(a.valuation())


def in_dot_o(a: Series, ctx: CoarseContext) -> bool:
    if a.terms:
        return ctx.project(a.valuation()).sign() >= 0
    if a.frontier is INF:
        return True
    if ctx.project(a.frontier).sign() < 0:
        raise InsufficientPrecision("membership in the coarse valuation ring is undecided")
    return True


def specialize_series(a: Series, ctx: CoarseContext) -> Series:
    """The residue of a in K-dot, re-indexed by the last n-k coordinates."""
    if a.rank != ctx.n:
        raise ValueError(f"rank-{a.rank} series, context rank {ctx.n}")
    if not in_dot_o(a, ctx):
        raise NotInDotO(f"coarse valuation {list(coarse_valuation(a, ctx))} < 0")
    f = a.frontier
    if f is INF or ctx.project(f).sign() > 0:
        frontier = INF
    else:
        # in_dot_o already rejected a frontier below Delta
        frontier = residual_part(f, ctx.level)
    terms = {residual_part(e, ctx.level): c for e, c in a.terms.items()
             if not any(e[: ctx.k])}
    return Series(terms, frontier, a.field, ctx.residual_rank)


def lift_series(a: Series, ctx: CoarseContext) -> Series:
    """Embed a K-dot series into K (a section of the specialization map)."""
    f = INF if a.frontier is INF else ctx.embed(a.frontier)
    return Series({ctx.embed(e): c for e, c in a.terms.items()}, f, a.field, ctx.n)


def specialize_derivation(D: DerivationSpec, ctx: CoarseContext) -> DerivationSpec:
    """The derivation induced on K-dot.

    With rho in Delta the shift stays inside Delta; with rho above Delta the
    shifted terms land in the coarse maximal ideal and vanish.  With rho
    below Delta the coarse valuation ring is preserved exactly when the
    weights vanish from the class of rho onwards (the smallness condition);
    then the weights are zero on Delta too.
    """
    prho = ctx.project(D.rho)
    zero_rho = GroupVector.zero(ctx.residual_rank)
    if prho.sign() == 0:
        return DerivationSpec(residual_part(D.rho, ctx.level), D.weights[ctx.k:], D.coef_derivation)
    if prho.sign() < 0 and not small_check(D).passed:
        raise DerivationNotInduced("the derivation does not preserve the coarse valuation ring")
    return DerivationSpec(zero_rho, (0,) * ctx.residual_rank, D.coef_derivation)


def specialize_poly(P: DiffPoly, ctx: CoarseContext) -> DiffPoly:
    if P.is_zero():
        raise ZeroPolynomial("specialization of the zero polynomial")
    D = specialize_derivation(P.deriv, ctx)
    terms = {k: specialize_series(c, ctx) for k, c in P.terms.items()}
    out = DiffPoly(terms, D, P.field)
    if out.is_zero():
        raise AllCoefficientsVanish("every coefficient lies in the coarse maximal ideal")
    return out


def coarse_dominant(Q: DiffPoly, ctx: CoarseContext) -> DiffPoly:
    """The coarse dominant part of Q: a nonzero polynomial over K-dot."""
    if Q.is_zero():
        raise ZeroPolynomial("coarse dominant part of zero")
    known = {k: ctx.project(c.valuation()) for k, c in Q.terms.items() if c.terms}
    if not known:
        raise InsufficientPrecision("no coefficient has a known term")
    m = min(known.values())
    for c in Q.terms.values():
        if not c.terms and ctx.project(c.frontier) <= m:
            raise InsufficientPrecision("a coefficient is unknown at the coarse minimum")
    shift = -ctx.lift(m)
    top = {k: Q.terms[k].shift(shift) for k, v in known.items() if v == m}
    return DiffPoly({k: specialize_series(c, ctx) for k, c in top.items()},
                    specialize_derivation(Q.deriv, ctx), Q.field)


def ddeg_coarse_of(Q: DiffPoly, ctx: CoarseContext) -> int:
    """Dominant degree of Q for the coarse valuation."""
    return coarse_dominant(Q, ctx).degree()


def ddeg_coarse(P: DiffPoly, gdot, ctx: CoarseContext) -> int:
    """ddeg^Delta of P conjugated by t^g for the zero-tail lift g of gdot."""
    if P.is_zero():
        raise ZeroPolynomial("ddeg of the zero polynomial")
    g = ctx.lift(GroupVector(gdot))
    return ddeg_coarse_of(P.mul_conj_monomial(g), ctx)
