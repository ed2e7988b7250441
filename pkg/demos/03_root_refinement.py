# coding: utf-8

# # Refining a root step by step
#
# For P with v(P_0) > 0 and v(P_1) = 0 the solver adds one monomial correction at a time
# and prints the residue equation it solved.

# In[1]:

from valdiff.cuts import ddeg_along_cut, validate_cut
from valdiff.dhensel import dh_solve
from valdiff.diffpoly import DiffPoly
from valdiff.ordgroup import GroupVector
from valdiff.series import DerivationSpec, Series

D = DerivationSpec.euler(1)
Y, Yp = DiffPoly.var(0, D), DiffPoly.var(1, D)
t = Series.monomial((1,), 1)


# In[2]:

r = dh_solve(t + Y + t * Y * Y, GroupVector((9,)))
print(r.status, r.y)
for s in r.steps:
    print(s.gamma, s.equation, s.z, s.new_v)


# A derivative term changes the residue equation, not the mechanics.

# In[3]:

r2 = dh_solve(t + Y + Yp + t * Yp * Yp, GroupVector((8,)))
print(r2.status, r2.y, r2.residual)


# The partial sums form a pc-sequence, and the dominant degree along it settles at 1.

# In[4]:

cut = validate_cut(r.partial_sums())
print(cut.gammas)
print(ddeg_along_cut(t + Y + t * Y * Y, cut))
