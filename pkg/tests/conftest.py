from fractions import Fraction

import pytest
from hypothesis import settings

from valdiff.diffpoly import DiffPoly
from valdiff.ordgroup import GroupVector
from valdiff.residue import QQ_TRIVIAL
from valdiff.series import DerivationSpec, Series

settings.register_profile("valdiff", max_examples=60, deadline=None)
settings.load_profile("valdiff")

EULER = DerivationSpec.euler(1)
EULER2 = DerivationSpec.euler(2)
# rho = (0,-1), d((a,b)) = a: small but not monotone
SMALL2 = DerivationSpec((0, -1), (Fraction(1), Fraction(0)))


def mono(exp, coef=1, field=QQ_TRIVIAL):
    if isinstance(exp, int):
        exp = (exp,)
    return Series.monomial(exp, coef, field)


def ser(*pairs, frontier=None, rank=1, field=QQ_TRIVIAL):
    """ser((1, 2), (3, -1)) == 2 t + -1 t^3."""
    terms = {}
    for e, c in pairs:
        terms[(e,) if isinstance(e, int) else tuple(e)] = Fraction(c)
    f = None if frontier is None else ((frontier,) if isinstance(frontier, int) else frontier)
    from valdiff.ordgroup import INF
    return Series(terms, INF if f is None else f, field, rank)


def Y(deriv=EULER, i=0, field=QQ_TRIVIAL):
    return DiffPoly.var(i, deriv, field)


def gv(*c):
    return GroupVector(c)


@pytest.fixture
def t():
    return mono(1)
