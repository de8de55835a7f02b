"""Check operator identities typed in the small operator syntax, exactly, on probe kets."""
from fractions import Fraction as F

from qboson import fock, identities
from qboson.oplang import default_env, parse_operator

q = F(1, 2)
env = default_env([F(2), F(-3, 4)])
probes = fock.standard_probes(range(1, 3), 2)

lhs = parse_operator("C[1,2;a=2](z) * A[1,2](w)", env, q)
rhs = parse_operator("f(z,w) * A[1,2](w) * C[1,2;a=2](z) + g(z,w) * A[1,2](z) * C[1,2;a=2](w)", env, q)
print(fock.check_congruence(lhs, rhs, (1, 2), (), probes, q))

# dropping the g-term breaks it, and the report says where
print(fock.check_congruence(lhs, parse_operator("f(z,w) * A[1,2](w) * C[1,2;a=2](z)", env, q),
                            (1, 2), (), probes, q).failure)

for check in identities.check_splits(3, 2, F(5, 3), q):
    print("%-18s %s" % (check.name, "ok" if check else "FAILED"))
