"""Residue differential fields and differential polynomials over them.

Two concrete fields are provided:

* :data:`QQ_TRIVIAL` -- the rationals with the zero derivation;
* :data:`QQ_X` -- the rational functions Q(x) with d/dx.

Elements are plain Python values (``fractions.Fraction`` for Q, sympy
``FracElement`` for Q(x)), so ordinary operators do the arithmetic.
"""
from __future__ import annotations

import abc
import random
import re
from fractions import Fraction

import sympy
from sympy import QQ as _SYMPY_QQ
from sympy.polys.fields import field as _sympy_field
from sympy.polys.matrices import DomainMatrix

from .errors import DivisionByZero, ParseError, Unsolvable


class ResidueField(abc.ABC):
    """A differential field of characteristic 0 usable as a residue field."""

    name: str

    @property
    @abc.abstractmethod
    def zero(self): ...

    @property
    @abc.abstractmethod
    def one(self): ...

    @abc.abstractmethod
    def coerce(self, value): ...

    @abc.abstractmethod
    def derive(self, a): ...

    @abc.abstractmethod
    def parse(self, text: str): ...

    @abc.abstractmethod
    def format(self, a) -> str: ...

    @abc.abstractmethod
    def random_element(self, rng: random.Random, size: int = 3): ...

    @property
    def derivation_is_trivial(self) -> bool:
        return False

    def is_zero(self, a) -> bool:
        return a == 0

    def __repr__(self):
        return f"<ResidueField {self.name}>"


class Rationals(ResidueField):
    """Q with the zero derivation."""

    name = "Q"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        try:
            return Fraction(value)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"cannot coerce {value!r} to Q") from exc

    def derive(self, a):
        return Fraction(0)

    @property
    def derivation_is_trivial(self):
        return True

    def parse(self, text):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {text!r}") from exc

    def format(self, a):
        return str(Fraction(a))

    def random_element(self, rng, size=3):
        num = rng.randint(-size, size)
        den = rng.randint(1, size)
        return Fraction(num, den)


_POLY_CHARS = re.compile(r"^[0-9x+\-*/^() .]*$")


class RationalFunctions(ResidueField):
    """Q(x) with the derivation d/dx, so that x' = 1."""

    name = "Q(x)"

    def __init__(self):
        self._K, self._x = _sympy_field("x", _SYMPY_QQ)

    @property
    def x(self):
        return self._x

    @property
    def zero(self):
        return self._K.zero

    @property
    def one(self):
        return self._K.one

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return self._K(_SYMPY_QQ(value.numerator, value.denominator))
        try:
            return self._K(value)
        except Exception as exc:  # sympy raises a zoo of types here
            raise ParseError(f"cannot coerce {value!r} to Q(x)") from exc

    def derive(self, a):
        return a.diff(self._x)

    def parse(self, text):
        if not _POLY_CHARS.match(text):
            raise ParseError(f"not a rational function in x: {text!r}")
        try:
            expr = sympy.sympify(text.replace("^", "**"))
            return self._K.from_expr(expr)
        except Exception as exc:
            raise ParseError(f"not a rational function in x: {text!r}") from exc

    def _format_poly(self, p):
        s = str(p).replace("**", "^").replace(" ", "")
        return s

    def format(self, a):
        num, den = a.numer, a.denom
        # canonical form: monic denominator
        lc = den.LC
        num, den = num.quo_ground(lc), den.quo_ground(lc)
        if den == 1:
            return self._format_poly(num)
        n = self._format_poly(num)
        if len(num.terms()) > 1:
            n = f"({n})"
        return f"{n}/({self._format_poly(den)})"

    def random_element(self, rng, size=3):
        x = self._x

        def poly(deg):
            return sum((rng.randint(-size, size) * x**i for i in range(deg + 1)), self._K.zero)

        num = poly(rng.randint(0, 2))
        den = poly(rng.randint(0, 1))
        while den == 0:
            den = poly(rng.randint(0, 1))
        return num / den

    def poly_ring(self):
        return self._K.ring


QQ_TRIVIAL = Rationals()
QQ_X = RationalFunctions()

FIELDS = {f.name: f for f in (QQ_TRIVIAL, QQ_X)}


def field_by_name(name: str) -> ResidueField:
    try:
        return FIELDS[name]
    except KeyError:
        raise ParseError(f"unknown residue field {name!r}; expected one of {sorted(FIELDS)}") from None


def residue_arith(op: str, a, b=None, field: ResidueField | None = None):
    """Field arithmetic by operation name: add, sub, mul, div, neg, inv, der.

    ``der`` uses ``field`` when given, else the field the element lives in.
    """
    if op == "der":
        if field is None:
            field = QQ_TRIVIAL if isinstance(a, (int, Fraction)) else QQ_X
        return field.derive(a)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op in ("div", "inv"):
        den = b if op == "div" else a
        if den == 0:
            raise DivisionByZero("division by zero in residue field")
        return a / b if op == "div" else 1 / a
    raise ValueError(f"unknown operation {op!r}")


def iterated_derivatives(field: ResidueField, a, r: int, trivial: bool = False):
    out = [a]
    for _ in range(r):
        out.append(field.zero if trivial else field.derive(out[-1]))
    return out


def lin_solve(field: ResidueField, coeffs, bound: int = 16, trivial: bool | None = None):
    """Find y with 1 + a_0 y + a_1 y' + ... + a_r y^(r) = 0.

    ``trivial`` forces the zero derivation (the field's own flag otherwise).
    Raises :class:`Unsolvable` when the search class is exhausted; for Q(x)
    that class is y = N / s^m with s the squarefree part of the leading
    (cleared) coefficient, deg N <= bound and deg s^m <= bound.
    """
    coeffs = [field.coerce(c) for c in coeffs]
    if not coeffs or coeffs[-1] == 0:
        raise ValueError("leading coefficient a_r must be nonzero")
    if trivial is None:
        trivial = field.derivation_is_trivial
    if trivial:
        if coeffs[0] == 0:
            raise Unsolvable("a_0 = 0 under the zero derivation leaves 1 = 0",
                             searched={"class": "constants"})
        y = -field.one / coeffs[0]
    elif len(coeffs) == 1:
        y = -field.one / coeffs[0]
    elif isinstance(field, RationalFunctions):
        y = _lin_solve_ratfunc(field, coeffs, bound)
    else:
        raise Unsolvable(f"no solver for {field.name} with nontrivial derivation")
    if _lin_residual(field, coeffs, y, trivial) != 0:
        raise AssertionError("lin_solve produced a non-solution")  # pragma: no cover
    return y


def _lin_residual(field, coeffs, y, trivial):
    ders = iterated_derivatives(field, y, len(coeffs) - 1, trivial)
    return field.one + sum((a * d for a, d in zip(coeffs, ders)), field.zero)


def _lin_solve_ratfunc(F: RationalFunctions, coeffs, bound):
    R = F.poly_ring()
    L = R.one
    for a in coeffs:
        L = L.lcm(a.denom)
    # clear denominators; poles of a solution sit at roots of the leading coefficient
    lead = coeffs[-1] * F._K(L)
    s = lead.numer.sqf_part()
    s_frac = F._K(s)
    x = F.x
    tried = []
    m = 0
    while True:
        D = s_frac**m
        if D.numer.degree() > bound:
            break
        tried.append(F.format(D))
        y = _undetermined(F, coeffs, D, bound, x)
        if y is not None:
            return y
        if s.degree() <= 0:
            break
        m += 1
    raise Unsolvable(
        "no rational solution in the searched class",
        searched={"denominators": tried, "numerator_degree": bound},
    )


def _undetermined(F, coeffs, D, bound, x):
    r = len(coeffs) - 1
    columns = []
    for j in range(bound + 1):
        basis = x**j / D
        ders = iterated_derivatives(F, basis, r)
        columns.append(sum((a * d for a, d in zip(coeffs, ders)), F.zero))
    M = F.poly_ring().one
    for c in columns:
        M = M.lcm(c.denom)
    polys = [c.numer * M.exquo(c.denom) for c in columns]
    rhs = -M
    width = max([p.degree() for p in polys] + [rhs.degree(), 0]) + 1
    dicts = [dict(p.terms()) for p in polys] + [dict(rhs.terms())]
    rows = [[_SYMPY_QQ(d.get((e,), 0)) for d in dicts] for e in range(width)]
    A = DomainMatrix(rows, (width, bound + 2), _SYMPY_QQ)
    red, pivots = A.rref()
    if bound + 1 in pivots:
        return None
    sol = [_SYMPY_QQ(0)] * (bound + 1)
    dense = red.to_list()
    for row, col in enumerate(pivots):
        sol[col] = dense[row][bound + 1]
    N = sum((F.coerce(Fraction(int(c.numerator), int(c.denominator))) * x**j
             for j, c in enumerate(sol)), F.zero)
    return N / D


class ResiduePoly:
    """A differential polynomial over a residue field.

    ``terms`` maps exponent tuples (e_0, ..., e_r) of Y, Y', ..., Y^(r) to
    nonzero coefficients; keys carry no trailing zeros.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: ResidueField, terms=None):
        self.field = field
        clean = {}
        for key, c in (terms or {}).items():
            key = _trim(key)
            c = field.coerce(c) if not _is_elem(field, c) else c
            if c != 0:
                clean[key] = clean.get(key, field.zero) + c
                if clean[key] == 0:
                    del clean[key]
        self.terms = clean

    def is_zero(self):
        return not self.terms

    def degree(self):
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return max(sum(k) for k in self.terms)

    def order(self):
        return max((len(k) - 1 for k in self.terms if k), default=0)

    def __eq__(self, other):
        if not isinstance(other, ResiduePoly):
            return NotImplemented
        return self.field is other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, self.field.zero) + c
        return ResiduePoly(self.field, out)

    def __neg__(self):
        return ResiduePoly(self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ResiduePoly):
            c = self.field.coerce(other) if not _is_elem(self.field, other) else other
            return ResiduePoly(self.field, {k: c * v for k, v in self.terms.items()})
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = _add_keys(k1, k2)
                out[k] = out.get(k, self.field.zero) + c1 * c2
        return ResiduePoly(self.field, out)

    __rmul__ = __mul__

    def scalar_ratio(self, other):
        """Return c with self == c * other, or None if there is none."""
        if self.is_zero() or other.is_zero():
            return None
        if self.terms.keys() != other.terms.keys():
            return None
        key = next(iter(other.terms))
        c = self.terms[key] / other.terms[key]
        if all(self.terms[k] == c * v for k, v in other.terms.items()):
            return c
        return None

    def hom_part(self, d):
        return ResiduePoly(self.field, {k: c for k, c in self.terms.items() if sum(k) == d})

    def __str__(self):
        return format_poly_terms(self.terms, self.field.format)

    def __repr__(self):
        return f"ResiduePoly({self})"


def _is_elem(field, c):
    if isinstance(field, Rationals):
        return isinstance(c, Fraction)
    return type(c) is type(field.zero)


def _trim(key):
    key = tuple(int(e) for e in key)
    n = len(key)
    while n and key[n - 1] == 0:
        n -= 1
    return key[:n]


def _add_keys(k1, k2):
    if len(k1) < len(k2):
        k1, k2 = k2, k1
    return tuple(a + (k2[i] if i < len(k2) else 0) for i, a in enumerate(k1))


def derivative_name(i):
    if i <= 3:
        return "Y" + "'" * i
    return f"Y^({i})"


def monomial_name(key):
    parts = []
    for i, e in enumerate(key):
        if e == 0:
            continue
        name = derivative_name(i)
        if e > 1:
            name = f"({name})^{e}" if i > 3 else f"{name}^{e}"
        parts.append(name)
    return "*".join(parts)


def _monomial_sort_key(key):
    return (sum(key), len(key), key)


def format_poly_terms(terms, fmt):
    """Render {key: coefficient} as e.g. ``1 + 2*Y + Y'``."""
    if not terms:
        return "0"
    pieces = []
    for key in sorted(terms, key=_monomial_sort_key):
        c = fmt(terms[key])
        mono = monomial_name(key)
        if not mono:
            pieces.append(c)
            continue
        if c == "1":
            pieces.append(mono)
        elif c == "-1":
            pieces.append("-" + mono)
        else:
            if any(ch in c[1:] for ch in "+- ") and not (c.startswith("(") and c.endswith(")")):
                c = f"({c})"
            pieces.append(f"{c}*{mono}")
    out = pieces[0]
    for p in pieces[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out
