"""The multi-species process: a configuration, its outgoing moves, and the eigenvalue check."""
from fractions import Fraction as F

from qboson.process import Configuration, outgoing_moves
from qboson.scalars import format_rational
from qboson.verify import check_generator

q = F(1, 3)
c = Configuration.from_particles([(2, 1), (2, 2), (0, 1)])
print("configuration", c.to_json())
for dest, rate in outgoing_moves(c, 2, q):
    print("  ->", dest.to_json(), "at rate", format_rational(rate))

z = (F(2), F(-5, 3), F(9, 4))
print("sum 1/z_i =", format_rational(sum(1 / t for t in z)))
for mu in [(2, 1, 1), (1, 2, 1)]:
    for check in check_generator(mu, z, c, q, 2):
        print("  mu=%s %-15s %s" % (mu, check.name, "ok" if check else check.failure))
