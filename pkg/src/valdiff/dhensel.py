"""Root refinement for P with v(P_0) > 0 and v(P_1) = 0.

Each step reads a linear differential equation off the dominant part of a
multiplicative conjugate of the current P_{+y}, solves it in the residue
field and adds the monomial correction z t^gamma to y.  Failures are
reported as statuses, never hidden.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .diffpoly import DiffPoly
from .errors import InsufficientPrecision, PreconditionViolated, Unsolvable, ZeroPolynomial
from .ordgroup import INF, GroupVector
from .residue import ResidueField, format_poly_terms, lin_solve
from .series import DerivationSpec, Series, asymptotic_check, few_constants_check

SOLVED = "Solved"
FRONTIER_EXHAUSTED = "FrontierExhausted"
FAILED = "Failed"


@dataclass(frozen=True)
class PremiseReport:
    ok: bool
    v_p0: object
    v_p1: object
    reason: str = ""

    def __bool__(self):
        return self.ok


def _hom_valuation(P: DiffPoly, d: int):
    part = P.hom_part(d)
    if part.is_zero():
        return INF
    return part.v_poly()


def dh_premise(P: DiffPoly) -> PremiseReport:
    """P in O{Y}, v(P_0) > 0 and v(P_1) = 0."""
    if P.is_zero():
        raise ZeroPolynomial("premise check on the zero polynomial")
    zero = GroupVector.zero(P.rank)
    c0 = P.coefficient(())
    if c0.terms:
        v0 = c0.valuation()
    elif c0.frontier > zero:
        v0 = INF if c0.is_zero() else c0.frontier
    else:
        raise InsufficientPrecision("P_0 is unknown at valuation 0")
    v1 = _hom_valuation(P, 1)
    if P.v_poly() < zero:
        return PremiseReport(False, v0, v1, f"P is not in O{{Y}}: v(P) = {list(P.v_poly())}")
    if not v0 > zero:
        return PremiseReport(False, v0, v1, f"v(P_0) = {list(v0)} is not > 0")
    if v1 != zero:
        shown = "inf" if v1 is INF else list(v1)
        return PremiseReport(False, v0, v1, f"v(P_1) = {shown} is not 0")
    return PremiseReport(True, v0, v1)


@dataclass(frozen=True)
class BeyondFrontier:
    """Residual with no known term: its valuation is at least ``frontier``."""

    frontier: GroupVector


@dataclass(frozen=True)
class Step:
    gamma: GroupVector
    equation: str
    z: object
    new_v: object


@dataclass
class SolverReport:
    y: Series
    residual: object
    steps: list = dc_field(default_factory=list)
    status: str = SOLVED
    reason: str = ""
    target: GroupVector = None

    @property
    def solved(self):
        return self.status == SOLVED

    def partial_sums(self):
        """0, y_1, y_2, ...: the accumulated approximations, step by step."""
        out = [Series.zero(self.y.rank, self.y.field)]
        for s in self.steps:
            out.append(out[-1] + Series.monomial(s.gamma, s.z, self.y.field))
        return out


def _candidates(g0: GroupVector, radius: int):
    """g0 + delta for |delta_i| <= radius, nearest first, ties broken lex."""
    n = len(g0)
    deltas = itertools.product(range(-radius, radius + 1), repeat=n)
    keyed = sorted(deltas, key=lambda d: (max(map(abs, d)), sum(map(abs, d)), d))
    return [g0 + GroupVector(d) for d in keyed]


def _find_gamma(Q1: DiffPoly, beta: GroupVector, radius: int):
    g0 = beta - Q1.v_poly()
    zero = GroupVector.zero(len(beta))
    for g in _candidates(g0, radius):
        if g > zero and Q1.vp_gamma(g) == beta:
            return g
    return None


def _cap(P: DiffPoly, target: GroupVector):
    """Working precision: the least element above target, plus slack for rho < 0."""
    n = P.rank
    cap = target + GroupVector.unit(n, n - 1)
    rho = P.deriv.rho
    if rho < GroupVector.zero(n):
        cap = cap + (-rho) * (P.order() * P.degree())
    return cap


def residual_of(P: DiffPoly, y: Series):
    r = P.evaluate(y)
    if r.is_zero():
        return "zero"
    if r.terms:
        return r.valuation()
    return BeyondFrontier(r.frontier)


def _beyond(res, target):
    if res == "zero":
        return True
    if isinstance(res, BeyondFrontier):
        return res.frontier > target
    return res > target


def dh_solve(P: DiffPoly, target, max_steps: int = 32, search_radius: int = 8,
             bound: int = 16) -> SolverReport:
    """Refine y in m until v(P(y)) > target."""
    target = GroupVector(target)
    if len(target) != P.rank:
        raise PreconditionViolated(f"target rank {len(target)} differs from rank {P.rank}")
    prem = dh_premise(P)
    if not prem:
        raise PreconditionViolated(prem.reason)
    for k, c in P.terms.items():
        if not c.frontier > target:
            raise PreconditionViolated(f"coefficient of {k} known only below {list(c.frontier)}")
    field = P.field
    trivial = P.deriv.residue_trivial(field)
    work = P.truncate(_cap(P, target))
    y = Series.zero(P.rank, field)
    steps = []

    def finish(status, reason=""):
        res = residual_of(P, y)
        if status == SOLVED and not _beyond(res, target):
            status, reason = FAILED, "ResidualCheck"
        return SolverReport(y, res, steps, status, reason, target)

    prev = None
    for _ in range(max_steps + 1):
        Q = work.add_conj(y) if steps else work
        Q0 = Q.coefficient(())
        if not Q0.terms:
            if steps:
                steps[-1] = Step(steps[-1].gamma, steps[-1].equation, steps[-1].z,
                                 BeyondFrontier(Q0.frontier))
            if Q0.frontier > target:
                return finish(SOLVED)
            return finish(FRONTIER_EXHAUSTED, f"P_0 unknown from {list(Q0.frontier)}")
        beta = Q0.valuation()
        if prev is not None:
            steps[-1] = Step(steps[-1].gamma, steps[-1].equation, steps[-1].z, beta)
            if not beta > prev:
                return finish(FAILED, "NonContraction")
        if beta > target:
            return finish(SOLVED)
        if len(steps) == max_steps:
            return finish(FAILED, "StepBudget")
        try:
            gamma = _find_gamma(Q.hom_part(1), beta, search_radius)
            if gamma is None:
                return finish(FAILED, "NoValuationMatch")
            Qg = Q.mul_conj_monomial(gamma)
            if Qg.v_poly() < beta:
                return finish(FAILED, "DominantDegreeAbove1")
            dom = Qg.dominant().dpart
        except InsufficientPrecision as e:
            return finish(FRONTIER_EXHAUSTED, str(e))
        if dom.degree() >= 2:
            return finish(FAILED, "DominantDegreeAbove1")
        c0 = dom.terms[()]
        r = dom.order()
        lin = [dom.terms.get((0,) * i + (1,), field.zero) / c0 for i in range(r + 1)]
        while lin and lin[-1] == 0:
            lin.pop()
        equation = format_poly_terms(dom.terms, field.format) + " = 0"
        try:
            z = lin_solve(field, lin, bound=bound, trivial=trivial)
        except Unsolvable:
            steps.append(Step(gamma, equation, None, None))
            return finish(FAILED, "ResidueSolverFailed")
        steps.append(Step(gamma, equation, z, None))
        y = y + Series.monomial(gamma, z, field)
        prev = beta
    return finish(FAILED, "StepBudget")  # pragma: no cover


@dataclass(frozen=True)
class AsymptoticReport:
    passed: bool
    asymptotic: object
    few_constants: object = None


def asymptotic_witness(D: DerivationSpec, field: ResidueField, samples=None,
                       count: int = 100, seed: int = 0) -> AsymptoticReport:
    """Sampled asymptoticity; on a pass, also the few-constants consequence."""
    a = asymptotic_check(D, field, samples=samples, count=count, seed=seed)
    if not a.passed:
        return AsymptoticReport(False, a)
    fc = few_constants_check(D, field, samples=samples, count=count, seed=seed)
    return AsymptoticReport(fc.passed, a, fc)
