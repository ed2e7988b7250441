"""Finite pc-sequence prefixes and dominant degree along them.

A cut in K is an equivalence class of pseudocauchy sequences, a transfinite
object.  Here a :class:`CutApprox` is a finite prefix a_0, ..., a_m whose
gaps gamma_i = v(a_{i+1} - a_i) strictly increase.  Anything defined by an
"eventually" clause is read off the tail of the prefix and comes with a
``stabilized`` flag; nothing is extrapolated.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .coarsen import CoarseContext, ddeg_coarse, in_dot_o, specialize_series
from .diffpoly import DiffPoly
from .errors import NotPseudoCauchy
from .ordgroup import ConvexLevel, GroupVector, arch_class, quotient_project
from .series import Series


@dataclass(frozen=True)
class CutApprox:
    points: tuple
    gammas: tuple

    @property
    def m(self):
        return len(self.points) - 1


def validate_cut(points) -> CutApprox:
    points = tuple(points)
    if len(points) < 3:
        raise NotPseudoCauchy("a cut approximation needs at least three points")
    gammas = []
    for i in range(len(points) - 1):
        diff = points[i + 1] - points[i]
        if diff.is_zero():
            raise NotPseudoCauchy(f"points {i} and {i + 1} coincide")
        gammas.append(diff.valuation())
    for i in range(len(gammas) - 1):
        if not gammas[i] < gammas[i + 1]:
            raise NotPseudoCauchy(
                f"gaps not strictly increasing at {i}: {list(gammas[i])} then {list(gammas[i + 1])}")
    return CutApprox(points, tuple(gammas))


@dataclass(frozen=True)
class CutDdeg:
    values: tuple
    stabilized: bool

    @property
    def value(self):
        """Last value: the finite-prefix approximant of ddeg in the cut."""
        return self.values[-1]


def _stable(values):
    return len(values) >= 2 and values[-1] == values[-2]


def ddeg_along_cut(P: DiffPoly, cut: CutApprox) -> CutDdeg:
    values = tuple(P.add_conj(a).ddeg_geq(g) for a, g in zip(cut.points, cut.gammas))
    return CutDdeg(values, _stable(values))


def ddeg_along_cut_coarse(P: DiffPoly, cut: CutApprox, ctx: CoarseContext) -> CutDdeg:
    """The K_Delta analogue: ddeg^Delta of P_{+a_i} at the coarse gap."""
    values = tuple(ddeg_coarse(P.add_conj(a), ctx.project(g), ctx)
                   for a, g in zip(cut.points, cut.gammas))
    return CutDdeg(values, _stable(values))


class CutClass(str, enum.Enum):
    FLUENT = "Fluent"
    JAMMED = "Jammed"
    MIXED = "Mixed"


def classify_delta(cut: CutApprox, level: ConvexLevel) -> CutClass:
    """Fluent if every gap increment exceeds Delta, Jammed if every one lies in it."""
    if not level.proper_nontrivial:
        raise ValueError("classification needs a proper nontrivial convex subgroup")
    signs = set()
    g = cut.gammas
    for i in range(len(g)):
        for j in range(i + 1, len(g)):
            signs.add(quotient_project(g[j] - g[i], level).sign())
    if signs == {1}:
        return CutClass.FLUENT
    if signs == {0}:
        return CutClass.JAMMED
    return CutClass.MIXED


def shift_cut(cut: CutApprox, y: Series) -> CutApprox:
    return validate_cut(a + y for a in cut.points)


def scale_cut(cut: CutApprox, g: Series) -> CutApprox:
    if g.is_zero():
        raise ValueError("scaling a cut by zero")
    return validate_cut(a * g for a in cut.points)


def specialize_cut(cut: CutApprox, ctx: CoarseContext) -> CutApprox:
    """Specialize the points lying in the coarse valuation ring."""
    kept = [specialize_series(a, ctx) for a in cut.points if in_dot_o(a, ctx)]
    return validate_cut(kept)


@dataclass(frozen=True)
class GrowthReport:
    passed: bool
    degree: int
    values: tuple
    violation: tuple | None = None


def growth_diagnostic(Pe: DiffPoly, cut: CutApprox) -> GrowthReport:
    """Check  v_P(g_j) - v_P(g_i) = e (g_j - g_i) + o(g_j - g_i)  for i < j."""
    degs = {sum(k) for k in Pe.terms}
    if len(degs) != 1 or 0 in degs:
        raise ValueError("growth diagnostic needs a homogeneous polynomial of degree >= 1")
    (e,) = degs
    vals = tuple(Pe.vp_gamma(g) for g in cut.gammas)
    g = cut.gammas
    for i in range(len(g)):
        for j in range(i + 1, len(g)):
            step = g[j] - g[i]
            resid = vals[j] - vals[i] - e * step
            cr = arch_class(resid)
            if cr is not None and cr <= arch_class(step):
                return GrowthReport(False, e, vals, (i, j))
    return GrowthReport(True, e, vals)


def gap_increments(cut: CutApprox):
    g = cut.gammas
    return [g[j] - g[i] for i in range(len(g)) for j in range(i + 1, len(g))]


__all__ = [
    "CutApprox", "CutDdeg", "CutClass", "GrowthReport", "validate_cut", "ddeg_along_cut",
    "ddeg_along_cut_coarse", "classify_delta", "shift_cut", "scale_cut", "specialize_cut",
    "growth_diagnostic", "gap_increments", "GroupVector",
]
