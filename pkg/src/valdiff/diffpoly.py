"""Differential polynomials K{Y} over truncated Hahn series.

A :class:`DiffPoly` maps exponent tuples ``(e_0, ..., e_r)`` of
``Y, Y', ..., Y^(r)`` (no trailing zeros) to :class:`Series` coefficients.
The derivation of K travels with the polynomial, since conjugation and
evaluation both differentiate.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import InsufficientPrecision, RankMismatch, ZeroConjugate, ZeroPolynomial
from .ordgroup import INF, GroupVector
from .residue import QQ_TRIVIAL, ResidueField, ResiduePoly, _add_keys, _trim, format_poly_terms
from .series import DerivationSpec, Series


@dataclass(frozen=True)
class DominantData:
    dpart: ResiduePoly
    dmonomial: Series
    ddeg: int


class DiffPoly:
    __slots__ = ("terms", "deriv", "field")

    def __init__(self, terms, deriv: DerivationSpec, field: ResidueField = QQ_TRIVIAL):
        self.deriv = deriv
        self.field = field
        clean = {}
        for key, c in terms.items():
            key = _trim(key)
            if not isinstance(c, Series):
                c = Series.constant(c, deriv.rank, field)
            if c.rank != deriv.rank:
                raise RankMismatch(f"rank-{c.rank} coefficient in a rank-{deriv.rank} ring")
            if key in clean:
                c = clean[key] + c
            if c.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms, deriv, field):
        obj = object.__new__(cls)
        obj.terms = terms
        obj.deriv = deriv
        obj.field = field
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def var(cls, i: int, deriv: DerivationSpec, field: ResidueField = QQ_TRIVIAL):
        """The indeterminate Y^(i)."""
        key = (0,) * i + (1,)
        return cls({key: Series.constant(1, deriv.rank, field)}, deriv, field)

    @classmethod
    def const(cls, c, deriv: DerivationSpec, field: ResidueField = QQ_TRIVIAL):
        return cls({(): c}, deriv, field)

    def _like(self, terms):
        return DiffPoly(terms, self.deriv, self.field)

    def _lift(self, other):
        if isinstance(other, DiffPoly):
            if other.deriv != self.deriv or other.field is not self.field:
                raise TypeError("differential polynomials over different fields")
            return other
        try:
            return DiffPoly.const(other, self.deriv, self.field)
        except (TypeError, ValueError):
            return None

    # -- inspection -------------------------------------------------------

    @property
    def rank(self):
        return self.deriv.rank

    def is_zero(self):
        return not self.terms

    def _nonzero(self):
        if not self.terms:
            raise ZeroPolynomial("operation undefined on the zero polynomial")

    def order(self):
        return max((len(k) - 1 for k in self.terms if k), default=0)

    def degree(self):
        self._nonzero()
        return max(sum(k) for k in self.terms)

    def coefficient(self, key):
        return self.terms.get(_trim(key), Series.zero(self.rank, self.field))

    def hom_part(self, d: int) -> "DiffPoly":
        return DiffPoly._raw({k: c for k, c in self.terms.items() if sum(k) == d}, self.deriv, self.field)

    def hom_parts(self):
        degs = sorted({sum(k) for k in self.terms})
        return {d: self.hom_part(d) for d in degs}

    def complexity(self):
        """(order, degree in the highest derivative, total degree)."""
        self._nonzero()
        r = self.order()
        s = max((k[r] if len(k) > r else 0) for k in self.terms)
        return (r, s, self.degree())

    def v_poly(self) -> GroupVector:
        """Minimum valuation of the coefficients."""
        self._nonzero()
        known = [min(c.terms) for c in self.terms.values() if c.terms]
        unknown = [c.frontier for c in self.terms.values() if not c.terms]
        if not known:
            raise InsufficientPrecision("no coefficient has a known term")
        m = min(known)
        if any(f <= m for f in unknown):
            raise InsufficientPrecision("a coefficient is unknown below the minimum")
        return m

    def dominant(self) -> DominantData:
        v = self.v_poly()
        coeffs = {}
        for k, c in self.terms.items():
            if not v < c.frontier:
                raise InsufficientPrecision(f"coefficient of {k} unknown at {list(v)}")
            if v in c.terms:
                coeffs[k] = c.terms[v]
        dpart = ResiduePoly(self.field, coeffs)
        return DominantData(dpart, Series.monomial(v, 1, self.field), dpart.degree())

    def ddeg(self) -> int:
        return self.dominant().ddeg

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                s = out[k] + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = c
        return DiffPoly._raw(out, self.deriv, self.field)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly._raw({k: -c for k, c in self.terms.items()}, self.deriv, self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, DiffPoly):
            other = self._lift(other)
            if other is None:
                return NotImplemented
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = _add_keys(k1, k2)
                p = c1 * c2
                out[k] = out[k] + p if k in out else p
        return DiffPoly._raw({k: c for k, c in out.items() if not c.is_zero()}, self.deriv, self.field)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out = DiffPoly.const(1, self.deriv, self.field)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self.deriv == other.deriv and self.field is other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return format_poly_terms(self.terms, str)

    # -- substitution -----------------------------------------------------

    def substitute(self, images) -> "DiffPoly":
        """Replace Y^(i) by the differential polynomial ``images[i]``."""
        powers = [[DiffPoly.const(1, self.deriv, self.field)] for _ in images]
        result = DiffPoly._raw({}, self.deriv, self.field)
        for key, c in self.terms.items():
            prod = DiffPoly._raw({(): c}, self.deriv, self.field)
            for i, e in enumerate(key):
                if not e:
                    continue
                cache = powers[i]
                while len(cache) <= e:
                    cache.append(cache[-1] * images[i])
                prod = prod * cache[e]
            result = result + prod
        return result

    def evaluate(self, a: Series) -> Series:
        r = self.order()
        ders = self.deriv.derivatives(a, r)
        powers = [[Series.constant(1, self.rank, self.field)] for _ in ders]
        total = Series.zero(self.rank, self.field)
        for key, c in self.terms.items():
            prod = c
            for i, e in enumerate(key):
                cache = powers[i]
                while len(cache) <= e:
                    cache.append(cache[-1] * ders[i])
                if e:
                    prod = prod * cache[e]
            total = total + prod
        return total

    def add_conj(self, a: Series) -> "DiffPoly":
        """P(a + Y)."""
        r = self.order()
        ders = self.deriv.derivatives(a, r)
        images = [DiffPoly.var(i, self.deriv, self.field) + DiffPoly.const(d, self.deriv, self.field)
                  for i, d in enumerate(ders)]
        return self.substitute(images)

    def mul_conj(self, a: Series) -> "DiffPoly":
        """P(aY), expanding (aY)^(i) by Leibniz."""
        if a.is_zero():
            raise ZeroConjugate("multiplicative conjugate by zero")
        r = self.order()
        ders = self.deriv.derivatives(a, r)
        images = []
        for i in range(r + 1):
            terms = {}
            for k in range(i + 1):
                c = ders[i - k] * comb(i, k)
                if not c.is_zero():
                    terms[(0,) * k + (1,)] = c
            images.append(DiffPoly._raw(terms, self.deriv, self.field))
        return self.substitute(images)

    def mul_conj_monomial(self, gamma) -> "DiffPoly":
        return self.mul_conj(Series.monomial(gamma, 1, self.field))

    def ddeg_geq(self, gamma) -> int:
        """Dominant degree after conjugating by t^gamma."""
        self._nonzero()
        return self.mul_conj_monomial(gamma).ddeg()

    def vp_gamma(self, gamma) -> GroupVector:
        """v(P_{×t^gamma})."""
        self._nonzero()
        return self.mul_conj_monomial(gamma).v_poly()

    def scaled_by(self, a: Series) -> "DiffPoly":
        return self * a

    def truncate(self, frontier):
        """Truncate every coefficient at ``frontier``."""
        out = {}
        for k, c in self.terms.items():
            c = c.truncate(frontier)
            if not c.is_zero():
                out[k] = c
        return DiffPoly._raw(out, self.deriv, self.field)

    @property
    def is_exact(self):
        return all(c.frontier is INF for c in self.terms.values())


# functional aliases mirroring the operation names
def eval_poly(P: DiffPoly, a: Series) -> Series:
    return P.evaluate(a)


def add_conj(P: DiffPoly, a: Series) -> DiffPoly:
    return P.add_conj(a)


def mul_conj(P: DiffPoly, a: Series) -> DiffPoly:
    return P.mul_conj(a)


def hom_part(P: DiffPoly, d: int) -> DiffPoly:
    return P.hom_part(d)


def complexity(P: DiffPoly):
    return P.complexity()


def v_poly(P: DiffPoly) -> GroupVector:
    return P.v_poly()


def dominant(P: DiffPoly) -> DominantData:
    return P.dominant()


def ddeg_geq(P: DiffPoly, gamma) -> int:
    return P.ddeg_geq(gamma)


def vp_gamma(P: DiffPoly, gamma) -> GroupVector:
    return P.vp_gamma(gamma)
