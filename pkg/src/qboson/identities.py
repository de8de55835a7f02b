"""
Operator identities of the monodromy entries, checked on probe kets.

Every builder returns ``(lhs, rhs)`` as ``Operator`` objects; the ``check_*``
helpers compare them exactly, either as plain operator identities, modulo a
right ideal generated by beta*_{p,1} (see ``fock.check_congruence``), or
under the vacuum bra.
"""

from fractions import Fraction
from typing import List, Sequence, Tuple

from .fock import (A, C, Operator, T, b, bstar, check_congruence, check_vacuum_bra, qN,
                   standard_probes)
from .recurrence import chain_terms
from .report import Check
from .scalars import f_factor, g_factor

Pair = Tuple[Operator, Operator]


def weight_factor(site: int, colors, e: int = 2) -> Operator:
    """q^{e sum_{p in colors} N_{p,site}}."""
    out = Operator.identity()
    for p in colors:
        out = out * qN(p, site, e)
    return out


def product(ops) -> Operator:
    out = Operator.identity()
    for op in ops:
        out = out * op
    return out


# -- exchange relations on a fixed interval ------------------------------------

def rel_AA(lo, hi, z, w) -> Pair:
    return A(lo, hi, z) * A(lo, hi, w), A(lo, hi, w) * A(lo, hi, z)


def rel_CC_same(lo, hi, a, z, w) -> Pair:
    return C(lo, hi, a, z) * C(lo, hi, a, w), C(lo, hi, a, w) * C(lo, hi, a, z)


def rel_CA(lo, hi, a, z, w, q) -> Pair:
    lhs = C(lo, hi, a, z) * A(lo, hi, w)
    rhs = (f_factor(z, w, q) * (A(lo, hi, w) * C(lo, hi, a, z))
           + g_factor(z, w, q) * (A(lo, hi, z) * C(lo, hi, a, w)))
    return lhs, rhs


def rel_CC(lo, hi, b_, a, z, w, q) -> Pair:
    """b < a."""
    lhs = Fraction(q) ** 2 * (C(lo, hi, b_, z) * C(lo, hi, a, w))
    rhs = (f_factor(z, w, q) * (C(lo, hi, a, w) * C(lo, hi, b_, z))
           - g_factor(w, z, q) * (C(lo, hi, a, z) * C(lo, hi, b_, w)))
    return lhs, rhs


def exchange_relations(lo, hi, r, z, w, q) -> List[Tuple[str, Pair]]:
    out = [("A(z)A(w)", rel_AA(lo, hi, z, w))]
    for a in range(1, r + 1):
        out.append(("C_%d C_%d" % (a, a), rel_CC_same(lo, hi, a, z, w)))
        out.append(("C_%d A" % a, rel_CA(lo, hi, a, z, w, q)))
    for a in range(1, r + 1):
        for b_ in range(1, a):
            out.append(("C_%d C_%d" % (b_, a), rel_CC(lo, hi, b_, a, z, w, q)))
    return out


# -- splitting off an end site ---------------------------------------------------

def rel_A_split_left(M, r, z) -> Pair:
    z = Fraction(z)
    rhs = (Operator.identity() + z * weight_factor(1, range(1, r + 1))) * A(2, M, z)
    for p in range(1, r + 1):
        rhs = rhs + bstar(p, 1) * C(2, M, p, z)
    return A(1, M, z), rhs


def rel_C_split_left(M, r, a, z) -> Pair:
    z = Fraction(z)
    inner = A(2, M, z)
    for p in range(1, a):
        inner = inner + bstar(p, 1) * C(2, M, p, z)
    rhs = z * weight_factor(1, range(a + 1, r + 1)) * (b(a, 1) * inner + C(2, M, a, z))
    return C(1, M, a, z), rhs


def rel_C_split_right(M, r, a, z) -> Pair:
    z = Fraction(z)
    rhs = C(1, M - 1, a, z) * (Operator.identity() + z * weight_factor(M, range(1, r + 1)))
    for c in range(1, r + 1):
        rhs = rhs + z * (T(1, M - 1, a, c, z) * b(c, M) * weight_factor(M, range(c + 1, r + 1)))
    return C(1, M, a, z), rhs


def split_relations(M, r, z) -> List[Tuple[str, Pair]]:
    if M < 2:
        raise ValueError("splitting needs M >= 2")
    out = [("A split left", rel_A_split_left(M, r, z))]
    for a in range(1, r + 1):
        out.append(("C_%d split left" % a, rel_C_split_left(M, r, a, z)))
        out.append(("C_%d split right" % a, rel_C_split_right(M, r, a, z)))
    return out


# -- moving creation operators at site 1 ---------------------------------------

def A_tilde(M, r, a, z) -> Operator:
    """q^{2 sum_{p>=a} N_{p,1}} A^{[2,M]}(z)."""
    return weight_factor(1, range(a, r + 1)) * A(2, M, z)


def rel_C_bstar(M, a, b_, z, q) -> Pair:
    lhs = C(1, M, b_, z) * bstar(a, 1)
    rhs = bstar(a, 1) * C(1, M, b_, z)
    if a > b_:
        rhs = Fraction(q) ** 2 * rhs
    return lhs, rhs


def rel_C_block_A_tilde(M, r, a, b_, zs, w, q) -> Pair:
    """prod_i C_b(z_i) A~_a(w), modulo beta*_{p,1}, p < b (a <= b)."""
    w = Fraction(w)
    zs = [Fraction(v) for v in zs]
    Cs = [C(1, M, b_, v) for v in zs]
    lhs = product(Cs) * A_tilde(M, r, a, w)
    coeff = Fraction(1)
    for v in zs:
        coeff *= f_factor(v, w, q)
    rhs = coeff * (A_tilde(M, r, a, w) * product(Cs))
    for l, zl in enumerate(zs):
        c = zl / w * g_factor(zl, w, q)
        for i, v in enumerate(zs):
            if i != l:
                c *= f_factor(v, zl, q)
        rest = [C(1, M, b_, v) for i, v in enumerate(zs) if i != l]
        rhs = rhs + c * (A_tilde(M, r, a, zl) * C(1, M, b_, w) * product(rest))
    return lhs, rhs


def rel_C_block_bstar(M, r, a, zs, q) -> Pair:
    """prod_i C_a(z_i) beta*_{a,1}, modulo beta*_{p,1}, p < a."""
    zs = [Fraction(v) for v in zs]
    q = Fraction(q)
    lhs = product(C(1, M, a, v) for v in zs) * bstar(a, 1)
    rhs = bstar(a, 1) * product(C(1, M, a, v) for v in zs)
    for l, zl in enumerate(zs):
        c = (1 - q * q) * zl
        for i, v in enumerate(zs):
            if i != l:
                c *= f_factor(v, zl, q)
        rest = [C(1, M, a, v) for i, v in enumerate(zs) if i != l]
        rhs = rhs + c * (A_tilde(M, r, a, zl) * product(rest))
    return lhs, rhs


def sorted_C_product(M, counts: Sequence[int], z: Sequence) -> Operator:
    """C_r(z_1) ... C_1(z_k) with colour p repeated k_p times, highest colour leftmost."""
    r = len(counts)
    ops, i = [], 0
    for p in range(r, 0, -1):
        for _ in range(counts[p - 1]):
            ops.append(C(1, M, p, z[i]))
            i += 1
    return product(ops)


def rel_vacuum_bra_expansion(M, counts: Sequence[int], a: int, z: Sequence, q) -> Pair:
    """<vac| C^{(k_r, ..., k_a)}(z) beta*_{a,1} expanded in <vac| C^{(..., k_a - 1)}.

    ``counts`` is (k_1, ..., k_r) with k_p = 0 for p < a and k_a >= 1.
    """
    if any(counts[:a - 1]) or counts[a - 1] < 1:
        raise ValueError("need k_p = 0 for p < a and k_a >= 1")
    q = Fraction(q)
    lhs = sorted_C_product(M, counts, z) * bstar(a, 1)
    reduced = list(counts)
    reduced[a - 1] -= 1
    rhs = Operator.zero()
    for top, weight, zr in chain_terms(counts, a, z, q):
        c = (1 - q * q) * weight * top * (1 + top) ** (M - 1)
        rhs = rhs + c * sorted_C_product(M, reduced, zr)
    return lhs, rhs


# -- drivers -------------------------------------------------------------------

def check_pair(name: str, pair: Pair, interval, q, probes, killed=()) -> Check:
    lhs, rhs = pair
    return check_congruence(lhs, rhs, interval, killed, probes, q, name=name)


def check_exchange(lo, hi, r, z, w, q, probes=None) -> List[Check]:
    probes = probes if probes is not None else standard_probes(range(lo, hi + 1), r)
    return [check_pair(n, p, (lo, hi), q, probes) for n, p in exchange_relations(lo, hi, r, z, w, q)]


def check_splits(M, r, z, q, probes=None) -> List[Check]:
    probes = probes if probes is not None else standard_probes(range(1, M + 1), r)
    return [check_pair(n, p, (1, M), q, probes) for n, p in split_relations(M, r, z)]


def check_vacuum_bra_expansion(M, counts, a, z, q, probes=None) -> Check:
    r = len(counts)
    probes = probes if probes is not None else standard_probes(range(1, M + 1), r)
    lhs, rhs = rel_vacuum_bra_expansion(M, counts, a, z, q)
    return check_vacuum_bra(lhs, rhs, probes, q, name="vacuum bra expansion")
