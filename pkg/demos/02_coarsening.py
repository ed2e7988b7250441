# coding: utf-8

# # Coarsening Z^2 down to its last coordinate
#
# Exponents are pairs (i, j) ordered lexicographically. Forgetting j gives a coarser
# valuation; the terms with i = 0 form a field one level down.

# In[1]:

from fractions import Fraction

from valdiff.coarsen import CoarseContext, ddeg_coarse, specialize_derivation, specialize_poly, specialize_series
from valdiff.diffpoly import DiffPoly
from valdiff.ordgroup import GroupVector
from valdiff.series import DerivationSpec, Series

ctx = CoarseContext.of(2, 1)
D = DerivationSpec((0, -1), (Fraction(1), Fraction(0)))
Y = DiffPoly.var(0, D)

def m(i, j, c=1):
    return Series.monomial((i, j), c)


# A series with coarse valuation 0 specializes to its i = 0 part.

# In[2]:

a = m(0, -2) + 3 * m(0, 1) + m(1, 5)
print(specialize_series(a, ctx))


# This derivation sends t^(i,j) to i t^(i,j-1). Downstairs it is the zero derivation.

# In[3]:

print(specialize_derivation(D, ctx))


# The fine dominant degree can be smaller than the coarse one.

# In[4]:

P = Y * Y + m(0, -1) * Y
print(P.ddeg(), ddeg_coarse(P, GroupVector((0,)), ctx))
print(specialize_poly(P, ctx))
