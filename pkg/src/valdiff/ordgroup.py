"""The value groups Z^n under lexicographic order.

Group elements are :class:`GroupVector` tuples, most significant coordinate
first.  Z^n lex has exactly n+1 convex subgroups,

    Delta_k = {g : g[0] == ... == g[k-1] == 0},    k = 0..n,

so Delta_0 is the whole group and Delta_n is trivial.  The archimedean class
of a nonzero element is the index of its first nonzero coordinate; a larger
class index means an infinitesimally smaller element.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import RankMismatch


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class GroupVector(tuple):
    """An element of Z^n; tuple comparison already is lexicographic."""

    __slots__ = ()

    def __new__(cls, coords=()):
        return super().__new__(cls, (int(c) for c in coords))

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    @classmethod
    def unit(cls, n, i):
        return cls(1 if j == i else 0 for j in range(n))

    @property
    def rank(self):
        return len(self)

    def _check(self, other):
        if len(self) != len(other):
            raise RankMismatch(f"rank {len(self)} vs rank {len(other)}")

    def __add__(self, other):
        if not isinstance(other, GroupVector):
            return NotImplemented
        self._check(other)
        return GroupVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        if not isinstance(other, GroupVector):
            return NotImplemented
        self._check(other)
        return GroupVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return GroupVector(-a for a in self)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return GroupVector(k * a for a in self)

    __rmul__ = __mul__

    def __lt__(self, other):
        if not isinstance(other, GroupVector):
            return NotImplemented
        self._check(other)
        return tuple.__lt__(self, other)

    def __le__(self, other):
        if not isinstance(other, GroupVector):
            return NotImplemented
        self._check(other)
        return tuple.__le__(self, other)

    def __gt__(self, other):
        if not isinstance(other, GroupVector):
            return NotImplemented
        self._check(other)
        return tuple.__gt__(self, other)

    def __ge__(self, other):
        if not isinstance(other, GroupVector):
            return NotImplemented
        self._check(other)
        return tuple.__ge__(self, other)

    __eq__ = tuple.__eq__
    __ne__ = tuple.__ne__
    __hash__ = tuple.__hash__

    def is_zero(self):
        return not any(self)

    def sign(self):
        for c in self:
            if c:
                return 1 if c > 0 else -1
        return 0

    def __repr__(self):
        return f"GroupVector({list(self)})"


class _Infinity:
    """+infinity: the frontier of an exact series."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ValueError("inf - inf")
        return self

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def lex_compare(a: GroupVector, b: GroupVector) -> Ordering:
    a._check(b)
    if a == b:
        return Ordering.EQUAL
    return Ordering.LESS if tuple.__lt__(a, b) else Ordering.GREATER


def arch_class(a: GroupVector):
    """Index of the first nonzero coordinate, None for the zero element."""
    for i, c in enumerate(a):
        if c:
            return i
    return None


def is_little_o(x: GroupVector, y: GroupVector) -> bool:
    """x is o(y): x lies in a strictly smaller archimedean class than y.

    Zero is o(y) for every nonzero y.
    """
    cy = arch_class(y)
    if cy is None:
        return False
    cx = arch_class(x)
    return cx is None or cx > cy


@dataclass(frozen=True)
class ConvexLevel:
    """Delta_k inside Z^n."""

    n: int
    k: int

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError(f"level {self.k} outside 0..{self.n}")

    def contains(self, a: GroupVector) -> bool:
        if len(a) != self.n:
            raise RankMismatch(f"rank {len(a)} vs rank {self.n}")
        return not any(a[: self.k])

    def above(self, a: GroupVector) -> bool:
        """a > Delta_k, i.e. a exceeds every element of Delta_k."""
        return quotient_project(a, self).sign() > 0

    def below(self, a: GroupVector) -> bool:
        return quotient_project(a, self).sign() < 0

    @property
    def proper_nontrivial(self):
        return 0 < self.k < self.n


def convex_subgroups(n: int) -> list[ConvexLevel]:
    if n < 1:
        raise ValueError("rank must be at least 1")
    return [ConvexLevel(n, k) for k in range(n + 1)]


def quotient_project(a: GroupVector, level: ConvexLevel) -> GroupVector:
    """The image of a in Gamma/Delta_k, identified with Z^k lex."""
    if len(a) != level.n:
        raise RankMismatch(f"rank {len(a)} vs rank {level.n}")
    return GroupVector(a[: level.k])


def residual_part(a: GroupVector, level: ConvexLevel) -> GroupVector:
    """Last n-k coordinates; the identification Delta_k = Z^(n-k)."""
    return GroupVector(a[level.k:])
