"""psi from vacuum matrix elements of monodromy entries, compared with h."""
from fractions import Fraction as F

from qboson import fock, hecke
from qboson.scalars import format_rational

q = F(2, 5)
z = (F(3), F(-2, 7))
x = (3, 1)

# one site, one particle: <vac| C(z) beta* |vac> = z (1 - q^2)
print("<C(z) b*> on [1,1] =", format_rational(fock.matrix_element((1,), (z[0],), (1,), (1,), (1, 1), q, 1)))

for mu in [(1, 2), (2, 1)]:
    psi = fock.psi(mu, z, x, q)
    h = hecke.eigenfunction_h(mu, z, x, q)
    print("mu =", mu, " psi == h:", psi == h)

# the weighted bracket does not see how far the interval extends
nu = (2, 1)
for interval in [(1, 3), (0, 3), (-1, 5)]:
    val = fock.weighted_bracket((1, 2), z, nu, x, q, 2, interval)
    print("interval", interval, "->", format_rational(val))

print("E =", format_rational(fock.eigenfunction_E((1, 2), z, x, nu, q)))
