"""
Intermediate identities on U_0 (x) U^m used to derive the recurrence for h.

Vectors live in a (m+1)-slot TensorVector whose first slot is U_0; slot
labels run 0..m and Y_{i-1} acts on labels (i-1, i).  Spectral parameters
are passed as z = (z_1, ..., z_m) plus a separate w for the zeroth slot.

Each check returns a ``Check``; these are intermediate statements, so a
failure here is reported, not patched.  The recurrence itself is the
authority (see ``recurrence``).
"""

import itertools
from fractions import Fraction
from typing import Dict, List, Sequence

from .hecke import TensorVector, apply_Y, apply_Z, compare_tensors
from .report import Check
from .scalars import f_factor, g_factor


def _labels(z: Sequence) -> Dict[int, Fraction]:
    return {i + 1: Fraction(v) for i, v in enumerate(z)}


def _word(word: Sequence[int], r: int) -> TensorVector:
    return TensorVector.basis(tuple(word), r)


def sweep(w, z: Sequence, v: TensorVector, q, labels: Sequence[int] = None) -> TensorVector:
    """prod^{<-}_{i in labels} f(w, z_i) Y_{i-1}(w, z_i) v, smallest label acting first."""
    zl = _labels(z)
    if labels is None:
        labels = range(1, len(z) + 1)
    for i in sorted(labels):
        v = f_factor(w, zl[i], q) * apply_Y(i, w, zl[i], v, q)
    return v


def blocks_from(counts: Sequence[int]) -> Dict[int, List[int]]:
    """J_p for p = a..1 with counts = (k_1, ..., k_a), labels starting at 1."""
    a = len(counts)
    out, start = {}, 0
    for p in range(a, 0, -1):
        out[p] = list(range(start + 1, start + counts[p - 1] + 1))
        start += counts[p - 1]
    return out


def _apply_chain(ells, colors, J, top, zl, v, q):
    """prod^{<-}_{1<=s<=t} Z_{l(s)}^{J_{p(s+1)-1} u ... u J_{p(s)}} v with J_{p(t+1)-1} = J_top."""
    t = len(ells)
    for s in range(t):
        upper = colors[s + 1] - 1 if s + 1 < t else top
        interval = [i for p in range(colors[s], upper + 1) for i in J[p]]
        v = apply_Z(ells[s], interval, zl, v, q)
    return v


def check_block_pass(b: int, a: int, w, z: Sequence, q, r: int) -> Check:
    """Pushing u_b in the zeroth slot through a block a^m (b > a)."""
    if not r >= b > a >= 1:
        raise ValueError("need r >= b > a >= 1")
    m = len(z)
    zl = _labels(z)
    start = _word((b,) + (a,) * m, r)
    lhs = sweep(w, z, start, q)
    rhs = Fraction(q) ** m * _word((a,) * m + (b,), r)
    for ell in range(1, m + 1):
        rhs = rhs + g_factor(w, zl[ell], q) * apply_Z(ell, range(1, m + 1), zl, start, q)
    return compare_tensors("block pass", lhs, rhs)


def _alternating_sum(b, counts, w, zl, q, r):
    """Right side shared by the b-return identities: chains 1 = p(1) < ... < p(t) <= a."""
    a = len(counts)
    J = blocks_from(counts)
    n = sum(counts)
    start = _word((b,) + tuple(p for p in range(a, 0, -1) for _ in range(counts[p - 1])), r)
    total = TensorVector.zero(n + 1, r)
    for t in range(1, a + 1):
        for rest in itertools.combinations(range(2, a + 1), t - 1):
            colors = (1,) + rest
            for ells in itertools.product(*(J[p] for p in colors)):
                coeff = Fraction((-1) ** (t - 1))
                prev = Fraction(w)
                for s in range(t):
                    coeff *= g_factor(prev, zl[ells[s]], q)
                    prev = zl[ells[s]]
                total = total + coeff * _apply_chain(ells, colors, J, a, zl, start, q)
    return total


def check_block_return(b: int, counts: Sequence[int], w, z: Sequence, q, r: int) -> Check:
    """u_b sitting just before the 1-block, moved back to the zeroth slot (b > a = len(counts))."""
    a = len(counts)
    if not r >= b > a >= 1:
        raise ValueError("need r >= b > a >= 1")
    n = sum(counts)
    if len(z) != n:
        raise ValueError("need one spectral parameter per slot")
    zl = _labels(z)
    J = blocks_from(counts)
    word = tuple(p for p in range(a, 1, -1) for _ in range(counts[p - 1])) + (b,) + (1,) * counts[0]
    start = _word(word, r)
    lhs = TensorVector.zero(n + 1, r)
    for ell in J[1]:
        lhs = lhs + g_factor(w, zl[ell], q) * apply_Z(ell, J[1], zl, start, q)
    lhs = Fraction(q) ** sum(counts[1:]) * lhs
    rhs = _alternating_sum(b, counts, w, zl, q, r)
    return compare_tensors("block return", lhs, rhs)


def check_block_return_sweep(counts: Sequence[int], w, z: Sequence, q, r: int) -> Check:
    """Sweep over the 1-block with u_{a+1} sitting just before it."""
    a = len(counts)
    if not r > a >= 1:
        raise ValueError("need r > a >= 1")
    zl = _labels(z)
    J = blocks_from(counts)
    word = tuple(p for p in range(a, 1, -1) for _ in range(counts[p - 1])) + (a + 1,) + (1,) * counts[0]
    lhs = Fraction(q) ** sum(counts[1:]) * sweep(w, z, _word(word, r), q, J[1])
    rhs = Fraction(q) ** sum(counts) * _word(
        tuple(p for p in range(a, 0, -1) for _ in range(counts[p - 1])) + (a + 1,), r)
    rhs = rhs + _alternating_sum(a + 1, counts, w, zl, q, r)
    return compare_tensors("block return sweep", lhs, rhs)


def check_full_sweep(counts: Sequence[int], w, z: Sequence, q, r: int) -> Check:
    """Sweep u_{a+1} from the zeroth slot through the sorted word (a^{k_a}, ..., 1^{k_1}).

    The g-chain closes on w at the top colour: prod_s g(z_{l(s+1)}, z_{l(s)})
    with z_{l(t+1)} = w.
    """
    a = len(counts)
    if not r > a >= 1:
        raise ValueError("need r > a >= 1")
    n = sum(counts)
    zl = _labels(z)
    J = blocks_from(counts)
    body = tuple(p for p in range(a, 0, -1) for _ in range(counts[p - 1]))
    lhs = sweep(w, z, _word((a + 1,) + body, r), q)
    rhs = Fraction(q) ** n * _word(body + (a + 1,), r)
    for t in range(1, a + 1):
        for colors in itertools.combinations(range(1, a + 1), t):
            p1 = colors[0]
            reduced = list(counts)
            reduced[p1 - 1] -= 1
            if reduced[p1 - 1] < 0:
                continue
            word = (a + 1,) + tuple(p for p in range(a, 0, -1) for _ in range(reduced[p - 1])) + (p1,)
            start = _word(word, r)
            prefactor = Fraction(q) ** sum(counts[:p1 - 1])
            for ells in itertools.product(*(J[p] for p in colors)):
                coeff = prefactor
                for s in range(t):
                    above = zl[ells[s + 1]] if s + 1 < t else Fraction(w)
                    coeff *= g_factor(above, zl[ells[s]], q)
                rhs = rhs + coeff * _apply_chain(ells, colors, J, a, zl, start, q)
    return compare_tensors("full sweep", lhs, rhs)
