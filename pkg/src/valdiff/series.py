"""Truncated Hahn series k((t^Gamma)) with Gamma = Z^n lex.

A :class:`Series` is a finite map exponent -> coefficient together with a
*frontier*: every coefficient at an exponent below the frontier is known
(absent means zero), nothing is known at or above it.  Exact series have
frontier :data:`~valdiff.ordgroup.INF`.

Derivations come from the family

    d(c t^g) = d_k(c) t^g + c * w(g) t^(g + rho)

with an additive weight map ``w(g) = sum g_i w_i`` and a uniform shift
``rho`` (:class:`DerivationSpec`).  The family is closed under Leibniz and
makes smallness and monotonicity decidable by finitely many lex checks.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    DivisionByZero,
    InsufficientPrecision,
    NotInValuationRing,
    RankMismatch,
    ZeroHasNoValuation,
)
from .ordgroup import INF, GroupVector, arch_class
from .residue import QQ_TRIVIAL, ResidueField, _is_elem


def _min(a, b):
    return a if a <= b else b


class Series:
    """A Hahn series known below its frontier.

    >>> t = Series.monomial((1,))
    >>> (1 - t).inverse(frontier=(3,))
    1 + t + t^2 + O(t^3)
    """

    __slots__ = ("terms", "frontier", "field", "rank")

    def __init__(self, terms=None, frontier=INF, field: ResidueField = QQ_TRIVIAL, rank=None):
        if frontier is not INF:
            frontier = GroupVector(frontier)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = GroupVector(exp)
            if not _is_elem(field, c):
                c = field.coerce(c)
            if c != 0 and exp < frontier:
                clean[exp] = clean.get(exp, field.zero) + c
                if clean[exp] == 0:
                    del clean[exp]
        if rank is None:
            if clean:
                rank = len(next(iter(clean)))
            elif frontier is not INF:
                rank = len(frontier)
            else:
                raise ValueError("rank required for an exact zero series")
        for exp in clean:
            if len(exp) != rank:
                raise RankMismatch(f"exponent {list(exp)} in a rank-{rank} series")
        if frontier is not INF and len(frontier) != rank:
            raise RankMismatch(f"frontier {list(frontier)} in a rank-{rank} series")
        self.terms = clean
        self.frontier = frontier
        self.field = field
        self.rank = rank

    @classmethod
    def _raw(cls, terms, frontier, field, rank):
        # trusted constructor: terms already clean and below the frontier
        obj = object.__new__(cls)
        obj.terms = terms
        obj.frontier = frontier
        obj.field = field
        obj.rank = rank
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, rank, field=QQ_TRIVIAL, frontier=INF):
        return cls({}, frontier, field, rank)

    @classmethod
    def constant(cls, c, rank=1, field=QQ_TRIVIAL):
        return cls({GroupVector.zero(rank): c}, INF, field, rank)

    @classmethod
    def monomial(cls, exp, coef=1, field=QQ_TRIVIAL):
        exp = GroupVector(exp)
        return cls({exp: coef}, INF, field, len(exp))

    def like(self, terms=None, frontier=INF):
        """A series over the same field and rank."""
        return Series(terms or {}, frontier, self.field, self.rank)

    def _coerce(self, other):
        if isinstance(other, Series):
            if other.rank != self.rank:
                raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")
            if other.field is not self.field:
                raise TypeError(f"field {self.field.name} vs field {other.field.name}")
            return other
        if isinstance(other, (int, Fraction)) or _is_elem(self.field, other):
            return Series.constant(other, self.rank, self.field)
        return None

    # -- inspection ---------------------------------------------------------

    @property
    def is_exact(self):
        return self.frontier is INF

    def known_zero(self):
        """No known terms (the series may still be nonzero at or above the frontier)."""
        return not self.terms

    def is_zero(self):
        """Exactly zero."""
        return not self.terms and self.frontier is INF

    def __bool__(self):
        return not self.is_zero()

    def valuation(self) -> GroupVector:
        if self.terms:
            return min(self.terms)
        if self.frontier is INF:
            raise ZeroHasNoValuation("the zero series has no valuation")
        raise InsufficientPrecision(f"no known terms below frontier {list(self.frontier)}")

    def lower_bound(self):
        """A lower bound for the valuation: the valuation, or the frontier."""
        return min(self.terms) if self.terms else self.frontier

    def leading(self):
        v = self.valuation()
        return v, self.terms[v]

    def coefficient(self, exp):
        exp = GroupVector(exp)
        if not exp < self.frontier:
            raise InsufficientPrecision(f"coefficient at {list(exp)} is beyond the frontier")
        return self.terms.get(exp, self.field.zero)

    def residue(self):
        """Image in the residue field; requires v(a) >= 0."""
        zero = GroupVector.zero(self.rank)
        if self.terms and min(self.terms) < zero:
            raise NotInValuationRing(f"valuation {list(min(self.terms))} < 0")
        if not zero < self.frontier:
            raise InsufficientPrecision("constant coefficient is beyond the frontier")
        return self.terms.get(zero, self.field.zero)

    def truncate(self, frontier):
        if frontier is not INF:
            frontier = GroupVector(frontier)
        f = _min(self.frontier, frontier)
        return Series._raw({e: c for e, c in self.terms.items() if e < f}, f, self.field, self.rank)

    def shift(self, exp):
        """Multiply by the monomial t^exp."""
        exp = GroupVector(exp)
        return Series._raw({e + exp: c for e, c in self.terms.items()},
                           self.frontier + exp if self.frontier is not INF else INF,
                           self.field, self.rank)

    def scale(self, c):
        if not _is_elem(self.field, c):
            c = self.field.coerce(c)
        if c == 0:
            return Series._raw({}, self.frontier, self.field, self.rank)
        return Series._raw({e: c * v for e, v in self.terms.items()}, self.frontier, self.field, self.rank)

    def agrees_with(self, other, below=None):
        """Coefficients agree below the smaller frontier (and below ``below``)."""
        f = _min(self.frontier, other.frontier)
        if below is not None:
            f = _min(f, GroupVector(below) if below is not INF else INF)
        return self.truncate(f).terms == other.truncate(f).terms

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        f = _min(self.frontier, other.frontier)
        out = {e: c for e, c in self.terms.items() if e < f}
        zero = self.field.zero
        for e, c in other.terms.items():
            if e < f:
                s = out.get(e, zero) + c
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Series._raw(out, f, self.field, self.rank)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw({e: -c for e, c in self.terms.items()}, self.frontier, self.field, self.rank)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or (not isinstance(other, Series) and _is_elem(self.field, other)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        lb_a, lb_b = self.lower_bound(), other.lower_bound()
        f = _min(self.frontier + lb_b, other.frontier + lb_a)
        out = {}
        zero = self.field.zero
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if e < f:
                    out[e] = out.get(e, zero) + c1 * c2
        out = {e: c for e, c in out.items() if c != 0}
        return Series._raw(out, f, self.field, self.rank)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Series.constant(1, self.rank, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self, frontier=None):
        """1/a by geometric expansion, known below ``frontier``.

        The result can never be known beyond ``frontier(a) - 2 v(a)``.  An
        exact non-monomial input needs an explicit frontier.
        """
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        gamma, c = self.leading()
        normalized = self.shift(-gamma).scale(1 / c)
        h = normalized - 1
        if frontier is not None and frontier is not INF:
            frontier = GroupVector(frontier)
        if h.is_zero():
            inv = Series.constant(1, self.rank, self.field)
        else:
            bound = h.frontier
            if frontier is not None:
                bound = _min(bound, frontier + gamma)
            if bound is INF:
                raise InsufficientPrecision("exact inverse of a non-monomial needs a frontier")
            mu = h.lower_bound()
            if bound > GroupVector.zero(self.rank):
                cm, cb = arch_class(mu), arch_class(bound)
                if cm is not None and cm > cb:
                    raise InsufficientPrecision(
                        f"geometric expansion cannot reach {list(bound)} in steps of {list(mu)}")
            inv = Series.constant(1, self.rank, self.field).truncate(bound)
            power = inv
            neg_h = -h
            while power.lower_bound() < bound and power.terms:
                power = (power * neg_h).truncate(bound)
                inv = inv + power
            inv = inv.truncate(bound)
        out = inv.scale(1 / c).shift(-gamma)
        if frontier is not None:
            out = out.truncate(frontier)
        return out

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        if other == 0:
            raise DivisionByZero("division by zero")
        c = other if _is_elem(self.field, other) else self.field.coerce(other)
        return self.scale(1 / c)

    # -- comparison and display --------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Series):
            other_s = self._coerce(other) if isinstance(other, (int, Fraction)) else None
            if other_s is None:
                return NotImplemented
            other = other_s
        return (self.rank == other.rank and self.field is other.field
                and self.frontier == other.frontier and self.terms == other.terms)

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.frontier, self.rank))

    def __repr__(self):
        return format_series(self)

    __str__ = __repr__


def format_exponent(exp) -> str:
    if len(exp) == 1:
        (m,) = exp
        return "t" if m == 1 else f"t^{m}"
    return "t^(" + ",".join(str(c) for c in exp) + ")"


def format_series(a: Series) -> str:
    """Human rendering, e.g. ``-1/2 t + 3 t^2 + O(t^5)``."""
    pieces = []
    for exp in sorted(a.terms):
        c = a.field.format(a.terms[exp])
        if not any(exp):
            pieces.append(c)
            continue
        mono = format_exponent(exp)
        if c == "1":
            pieces.append(mono)
        elif c == "-1":
            pieces.append("-" + mono)
        else:
            if any(ch in c[1:] for ch in "+-/") and a.field is not QQ_TRIVIAL:
                c = f"({c})"
            pieces.append(f"{c} {mono}")
    if a.frontier is not INF:
        pieces.append(f"O({format_exponent(a.frontier)})")
    if not pieces:
        return "0"
    out = pieces[0]
    for p in pieces[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def series_arith(op, a: Series, b: Series = None, frontier=None) -> Series:
    if op == "add":
        return a + b
    if op == "neg":
        return -a
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse(frontier)
    raise ValueError(f"unknown operation {op!r}")


def valuation(a: Series) -> GroupVector:
    return a.valuation()


def residue_map(a: Series):
    return a.residue()


# -- derivations -------------------------------------------------------------


@dataclass(frozen=True)
class DerivationSpec:
    """d(c t^g) = d_k(c) t^g + c w(g) t^(g + rho).

    ``coef_derivation`` is ``"trivial"`` (d_k = 0) or ``"field"`` (the
    residue field's own derivation).
    """

    rho: GroupVector
    weights: tuple
    coef_derivation: str = "trivial"

    def __post_init__(self):
        object.__setattr__(self, "rho", GroupVector(self.rho))
        object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.weights) != len(self.rho):
            raise RankMismatch("weights and rho differ in rank")
        if self.coef_derivation not in ("trivial", "field"):
            raise ValueError(f"coef_derivation must be 'trivial' or 'field', not {self.coef_derivation!r}")

    @classmethod
    def euler(cls, rank=1):
        """t d/dt on the first coordinate: d(t^g) = g_0 t^g."""
        return cls(GroupVector.zero(rank), (Fraction(1),) + (Fraction(0),) * (rank - 1))

    @property
    def rank(self):
        return len(self.rho)

    def weight(self, exp, field: ResidueField):
        w = sum((g * wi for g, wi in zip(exp, self.weights) if g), 0)
        if not _is_elem(field, w):
            w = field.coerce(w)
        return w

    def weights_zero(self):
        return all(w == 0 for w in self.weights)

    def residue_trivial(self, field: ResidueField) -> bool:
        """Whether the induced derivation on the residue field is zero."""
        return self.coef_derivation == "trivial" or field.derivation_is_trivial

    def apply(self, a: Series) -> Series:
        if a.rank != self.rank:
            raise RankMismatch(f"rank-{a.rank} series, rank-{self.rank} derivation")
        field = a.field
        f = a.frontier
        if f is not INF:
            f = _min(f, f + self.rho)
        out = {}
        zero = field.zero
        use_coef = self.coef_derivation == "field" and not field.derivation_is_trivial
        for exp, c in a.terms.items():
            if use_coef:
                dc = field.derive(c)
                if dc != 0 and exp < f:
                    out[exp] = out.get(exp, zero) + dc
            w = self.weight(exp, field)
            if w != 0:
                e2 = exp + self.rho
                if e2 < f:
                    out[e2] = out.get(e2, zero) + c * w
        out = {e: c for e, c in out.items() if c != 0}
        return Series._raw(out, f, field, a.rank)

    def derivatives(self, a: Series, r: int):
        out = [a]
        for _ in range(r):
            out.append(self.apply(out[-1]))
        return out


def derive(a: Series, D: DerivationSpec) -> Series:
    return D.apply(a)


# -- dominance ---------------------------------------------------------------


class Dominance(str, enum.Enum):
    PRECEQ = "≼"
    PREC = "≺"
    ASYMP = "≍"
    SIM = "∼"


def dominance_relate(a: Series, b: Series) -> frozenset:
    """All of {≼, ≺, ≍, ∼} that hold between nonzero a and b."""
    va, vb = a.valuation(), b.valuation()
    rel = set()
    if va >= vb:
        rel.add(Dominance.PRECEQ)
    if va > vb:
        rel.add(Dominance.PREC)
    if va == vb:
        rel.add(Dominance.ASYMP)
    diff = a - b
    if diff.is_zero() or (diff.terms and diff.valuation() > vb) or (
            not diff.terms and diff.frontier > vb):
        rel.add(Dominance.SIM)
    return frozenset(rel)


# -- field-level checks --------------------------------------------------------


@dataclass
class CheckReport:
    mode: str
    passed: bool
    witness: Series | None = None
    detail: str = ""
    samples: int = 0
    extra: dict = dc_field(default_factory=dict)


def _zero(n):
    return GroupVector.zero(n)


def small_check(D: DerivationSpec, field: ResidueField = QQ_TRIVIAL) -> CheckReport:
    """Exact decision of d(m) ⊆ m.

    On monomials c t^g with g > 0 only the shifted term t^(g+rho) can leave
    the maximal ideal, so smallness says: w vanishes on every g in (0, -rho].
    That interval spans Delta_j for j the class of rho, and always contains
    an element with coordinate j equal to 1; hence for rho < 0 the condition
    is w_i == 0 for all i >= class(rho).
    """
    n = D.rank
    if D.rho >= _zero(n):
        return CheckReport("small", True, detail="rho >= 0")
    j = arch_class(D.rho)
    bad = [i for i in range(j, n) if D.weights[i] != 0]
    if not bad:
        return CheckReport("small", True, detail=f"weights vanish on coordinates >= {j}")
    later = [i for i in bad if i > j]
    gamma = GroupVector.unit(n, later[0]) if later else -D.rho
    w = Series.monomial(gamma, 1, field)
    return CheckReport("small", False, witness=w,
                       detail=f"v(t^{list(gamma)}') = {list(gamma + D.rho)} is not > 0")


def monotone_check(D: DerivationSpec, field: ResidueField = QQ_TRIVIAL) -> CheckReport:
    """Exact decision of v(a') >= v(a) on m: rho >= 0 or w identically zero."""
    n = D.rank
    if D.rho >= _zero(n):
        return CheckReport("monotone", True, detail="rho >= 0")
    if D.weights_zero():
        return CheckReport("monotone", True, detail="weights vanish")
    i = next(i for i in range(n) if D.weights[i] != 0)
    gamma = GroupVector.unit(n, i)
    return CheckReport("monotone", False, witness=Series.monomial(gamma, 1, field),
                       detail=f"v(t^{list(gamma)}') = {list(gamma + D.rho)} < {list(gamma)}")


def random_series(rng: random.Random, field: ResidueField, rank: int, box: int = 3,
                  nterms: int = 3, positive: bool = False, nonneg: bool = False) -> Series:
    """A random exact series with exponents in [-box, box]^rank."""
    terms = {}
    zero = GroupVector.zero(rank)
    while not terms:
        for _ in range(rng.randint(1, nterms)):
            exp = GroupVector(rng.randint(-box, box) for _ in range(rank))
            if positive and not exp > zero:
                continue
            if nonneg and exp < zero:
                continue
            c = field.random_element(rng)
            if c != 0:
                terms[exp] = terms.get(exp, field.zero) + c
        terms = {e: c for e, c in terms.items() if c != 0}
    return Series(terms, INF, field, rank)


def _val_or_inf(a: Series):
    return INF if a.is_zero() else a.valuation()


def asymptotic_check(D: DerivationSpec, field: ResidueField = QQ_TRIVIAL, samples=None,
                     count: int = 200, seed: int = 0) -> CheckReport:
    """Sampled check of  v(f) > v(g) <=> v(f') > v(g')  on m \\ {0}."""
    if samples is None:
        rng = random.Random(seed)
        samples = [random_series(rng, field, D.rank, positive=True) for _ in range(count)]
    vals = [(s, s.valuation(), _val_or_inf(D.apply(s))) for s in samples]
    for f, vf, vdf in vals:
        for g, vg, vdg in vals:
            if (vf > vg) != (vdf > vdg):
                return CheckReport("asymptotic", False, witness=f, samples=len(samples),
                                   detail=f"pair breaks the equivalence: f={f}, g={g}",
                                   extra={"g": g})
    return CheckReport("asymptotic", True, samples=len(samples), detail="no counterexample in sample")


def few_constants_check(D: DerivationSpec, field: ResidueField = QQ_TRIVIAL, samples=None,
                        count: int = 200, seed: int = 0) -> CheckReport:
    """Sampled check that constants lie in O.

    The default sample mixes random series with monomials whose coefficients
    are rationals, the likeliest constants of the family.
    """
    if samples is None:
        rng = random.Random(seed)
        samples = []
        for i in range(count):
            if i % 2:
                samples.append(random_series(rng, field, D.rank))
            else:
                exp = GroupVector(rng.randint(-3, 3) for _ in range(D.rank))
                samples.append(Series.monomial(exp, Fraction(rng.randint(1, 5)), field))
    zero = GroupVector.zero(D.rank)
    for a in samples:
        if a.is_zero():
            continue
        if D.apply(a).is_zero() and a.valuation() < zero:
            return CheckReport("fewConstants", False, witness=a, samples=len(samples),
                               detail=f"constant {a} has negative valuation")
    return CheckReport("fewConstants", True, samples=len(samples), detail="no counterexample in sample")


def field_checks(D: DerivationSpec, mode: str, field: ResidueField = QQ_TRIVIAL, **kw) -> CheckReport:
    if mode == "small":
        return small_check(D, field)
    if mode == "monotone":
        return monotone_check(D, field)
    if mode in ("asymptotic", "asymptoticSample"):
        return asymptotic_check(D, field, **kw)
    if mode in ("fewConstants", "fewConstantsSample"):
        return few_constants_check(D, field, **kw)
    raise ValueError(f"unknown check mode {mode!r}")
