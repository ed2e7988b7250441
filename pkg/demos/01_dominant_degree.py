# coding: utf-8

# # Dominant degree by hand
#
# Series live in Q((t)) with exponents in Z (rank 1) and the derivation t d/dt.
# We build a few differential polynomials and read off where they "live" after scaling.

# In[1]:

from valdiff.diffpoly import DiffPoly
from valdiff.ordgroup import GroupVector
from valdiff.series import DerivationSpec, Series

D = DerivationSpec.euler(1)
Y = DiffPoly.var(0, D)
t = Series.monomial((1,), 1)


# Y^2 + tY + t: the Y^2 coefficient has the least valuation, so it wins.

# In[2]:

P = Y * Y + t * Y + t
dom = P.dominant()
print(dom.dpart, dom.ddeg)


# Scaling Y by t^g shifts the balance. At g = 1 everything sits at valuation 2 except the
# constant, which is still at 1.

# In[3]:

for g in range(-1, 4):
    print(g, P.ddeg_geq(GroupVector((g,))), P.vp_gamma(GroupVector((g,))))


# The dominant degree of a product adds up.

# In[4]:

Q = Y - t
print((P * Q).ddeg(), P.ddeg() + Q.ddeg())


# Additive conjugation: P(Y + a) as a new polynomial, evaluated back at y.

# In[5]:

a = 2 + t
Pa = P.add_conj(a)
print(Pa)
print(Pa.evaluate(t) == P.evaluate(a + t))
