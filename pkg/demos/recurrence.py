"""Peel one particle off at x_k = 1: both sides of the recurrence, for h and for psi."""
from fractions import Fraction as F

from qboson.fock import recurrence_check_psi
from qboson.recurrence import recurrence_check_h, recurrence_terms
from qboson.scalars import format_rational

q = F(1, 3)
z = (F(2), F(-3, 2), F(5, 4))
counts = (2, 1)          # mu = (2, 1, 1)
x = (4, 2, 1)

for a, weight, zr in recurrence_terms(counts, z, q):
    print("colour %d  weight %-24s z' = %s" % (a, format_rational(weight), [format_rational(t) for t in zr]))

print("h:  ", bool(recurrence_check_h(counts, z, x, q)))
print("psi:", bool(recurrence_check_psi(counts, z, x, q)))
