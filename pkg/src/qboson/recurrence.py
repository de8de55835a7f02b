"""
The recurrence that peels the particle at site 1 off an eigenfunction with
colour order mu = (r^{k_r}, ..., 1^{k_1}).

``recurrence_rhs`` evaluates the right-hand side for any eigenfunction
family ``F(mu, z, x) -> TensorVector``; both the Hecke formula h and the
Fock matrix element psi are checked against it.
"""

import itertools
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from .hecke import TensorVector, compare_tensors, eigenfunction_h
from .report import Check
from .scalars import f_factor, g_factor

Family = Callable[[Tuple[int, ...], Sequence[Fraction], Sequence[int]], TensorVector]


def sorted_word(counts: Sequence[int]) -> Tuple[int, ...]:
    """(r^{k_r}, ..., 1^{k_1})."""
    r = len(counts)
    return tuple(a for a in range(r, 0, -1) for _ in range(counts[a - 1]))


def color_blocks(counts: Sequence[int]) -> dict:
    """p -> 1-based index range J_p of colour p inside sorted_word(counts)."""
    r = len(counts)
    out = {}
    start = 0
    for p in range(r, 0, -1):
        out[p] = list(range(start + 1, start + counts[p - 1] + 1))
        start += counts[p - 1]
    return out


def reduced_spectral(z: Sequence, chain: Sequence[int]) -> List:
    """z(l(t), ..., l(0)) for chain = [l(0), l(1), ..., l(t)] (1-based indices)."""
    k = len(z)
    l0 = chain[0]
    moved = {chain[s]: z[chain[s - 1] - 1] for s in range(1, len(chain))}
    out = []
    for i in range(1, k):
        if i >= l0:
            out.append(z[i])
        elif i in moved:
            out.append(moved[i])
        else:
            out.append(z[i - 1])
    return out


def chain_terms(counts: Sequence[int], a: int, z: Sequence, q):
    """Yield (top, weight, z') over chains a = p(0) < p(1) < ... < p(t) and l(s) in J_{p(s)}.

    ``weight`` is prod_s g(z_{l(s)}, z_{l(s-1)}) times the f-products over the
    blocks J_{p(s)} u ... u J_{p(s+1)-1} (the last one running up to J_r);
    ``top`` is z_{l(t)}.
    """
    r = len(counts)
    q = Fraction(q)
    J = color_blocks(counts)
    higher = [p for p in range(a + 1, r + 1) if counts[p - 1]]
    for t in range(0, r - a + 1):
        for ps in itertools.combinations(higher, t):
            colors = (a,) + ps
            for ells in itertools.product(*(J[p] for p in colors)):
                weight = Fraction(1)
                for s in range(1, t + 1):
                    weight *= g_factor(z[ells[s] - 1], z[ells[s - 1] - 1], q)
                for s in range(t + 1):
                    upper = colors[s + 1] - 1 if s < t else r
                    zl = z[ells[s] - 1]
                    for p in range(colors[s], upper + 1):
                        for i in J[p]:
                            if i != ells[s]:
                                weight *= f_factor(z[i - 1], zl, q)
                yield Fraction(z[ells[-1] - 1]), weight, reduced_spectral(z, ells)


def recurrence_terms(counts: Sequence[int], z: Sequence, q):
    """Yield (a, weight, z') for every summand of the right-hand side."""
    q = Fraction(q)
    for a in range(1, len(counts) + 1):
        if not counts[a - 1]:
            continue
        prefactor = q ** sum(counts[:a - 1])
        for top, weight, zr in chain_terms(counts, a, z, q):
            yield a, prefactor * weight * top / (1 + top), zr


def reduce_counts(counts: Sequence[int], a: int) -> Tuple[int, ...]:
    c = list(counts)
    c[a - 1] -= 1
    return tuple(c)


def recurrence_rhs(F: Family, counts: Sequence[int], z: Sequence, x: Sequence[int], q) -> TensorVector:
    r = len(counts)
    k = sum(counts)
    total = TensorVector.zero(k, r)
    cache = {}
    for a, weight, zr in recurrence_terms(counts, z, q):
        mu = sorted_word(reduce_counts(counts, a))
        key = (mu, tuple(zr))
        if key not in cache:
            cache[key] = F(mu, zr, tuple(x[:-1]))
        total = total + weight * cache[key].append_color(a)
    return total


def recurrence_check(F: Family, counts: Sequence[int], z: Sequence, x: Sequence[int], q,
                     name: str = "recurrence") -> Check:
    """Both sides of the recurrence at x = (x_1, ..., x_{k-1}, 1)."""
    x = tuple(x)
    if x[-1] != 1 or any(xi < 1 for xi in x):
        raise ValueError("recurrence needs x_1 >= ... >= x_{k-1} >= 1 = x_k")
    lhs = F(sorted_word(counts), tuple(z), x)
    rhs = recurrence_rhs(F, counts, z, x, q)
    return compare_tensors(name, lhs, rhs)


def h_family(q, r: int) -> Family:
    def F(mu, z, x):
        if not mu:
            return TensorVector(0, r, {(): 1})
        return eigenfunction_h(mu, z, x, q, r)
    return F


def recurrence_check_h(counts: Sequence[int], z: Sequence, x: Sequence[int], q) -> Check:
    return recurrence_check(h_family(q, len(counts)), counts, z, x, q, "recurrence (h)")
