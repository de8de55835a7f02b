"""Periodic transfer matrix on a colour sector: commuting charges and the rate matrix."""
from fractions import Fraction as F

from qboson import integrability as ib
from qboson.scalars import format_rational

q = F(1, 2)
sector = ib.PeriodicSector.build(3, (1, 1))
print("sector dimension", sector.dim)
Hs = ib.all_Hn(sector, q)
print(ib.check_H0(sector, q, Hs).name, bool(ib.check_H0(sector, q, Hs)))
print("H1 - M = (1 - q^2) Q:", bool(ib.check_H1_vs_rates(sector, q, Hs)))
for m in range(4):
    for n in range(m + 1, 4):
        assert ib.check_commutativity(sector, m, n, q, Hs)
print("all H_m commute")

print("tau(z) tau(w) = tau(w) tau(z):", bool(ib.check_transfer_commute(sector, F(2), F(-3, 5), q)))
vac = ib.PeriodicSector.build(4, (0, 0))
print("tau(1/2) on the empty chain:", format_rational(ib.transfer_apply(F(1, 2), vac, [1], q)[0]))
