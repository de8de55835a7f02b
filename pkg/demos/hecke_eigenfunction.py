"""Build h from the Hecke-algebra action on (C^r)^{(x) k} and look at a few of its properties."""
from fractions import Fraction as F

from qboson import hecke
from qboson.scalars import f_factor, format_rational

q = F(1, 2)
z = (F(3, 2), F(-4, 5), F(7, 3))

# R_1 on the two-colour words of length 2
for word in [(1, 1), (1, 2), (2, 1)]:
    v = hecke.apply_R(1, hecke.TensorVector.basis(word, 2), q)
    print("R_1 u%s =" % (word,), {w: format_rational(c) for w, c in v.items()})

# phi(tau) does not depend on the reduced word used to build it
v = hecke.random_tensor(__import__("random").Random(0), 3, 2)
longest = (3, 2, 1)
results = [hecke.phi_apply(longest, z, v, q, word=w) for w in hecke.all_reduced_words(longest)]
print("phi(w0) agrees along", len(results), "reduced words:", all(r == results[0] for r in results))

x = (3, 1, 1)
for mu in [(2, 1, 1), (1, 2, 1), (1, 1, 2)]:
    h = hecke.eigenfunction_h(mu, z, x, q)
    print("h^%s(%s):" % (mu, x))
    for word, c in sorted(h.items()):
        print("   ", word, format_rational(c))

# rank one: the u_1 (x) ... (x) u_1 coefficient is the familiar symmetric sum
closed = hecke.bcps_closed_form(z, x, q)
print("r = 1 closed form matches h:", closed == hecke.eigenfunction_h((1, 1, 1), z, x, q)[(1, 1, 1)])
print("f(z1, z2) =", format_rational(f_factor(z[0], z[1], q)))
