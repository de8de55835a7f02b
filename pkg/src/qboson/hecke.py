"""
Hecke-algebra side: the operators R_i and Y_i(z, w) on U^{(x)k}, the
intertwiners phi(tau; z), the eigenfunction h and the auxiliary Z operators.

Tensor slots are addressed 1..k as in ``R_i`` acting on slots (i, i+1).
Vectors carrying a distinguished zeroth slot U_0 are plain TensorVectors
with one extra leading slot; ``apply_Z(..., zeroth=True)`` reads slot
labels 0..m in that case.
"""

import itertools
import json
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .scalars import (PoleError, check_params, f_factor, format_rational,
                      g_factor, parse_rational)


class SingularYError(ZeroDivisionError):
    """Y_i(z, w) is undefined when f(z, w) = 0, i.e. z = q^2 w."""


class TensorVector:
    """Sparse element of U^{(x)k}: colour word -> nonzero Fraction."""

    __slots__ = ("k", "r", "_c")

    def __init__(self, k: int, r: int, coeffs=None):
        self.k = k
        self.r = r
        c = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for word, x in items:
                word = tuple(word)
                if len(word) != k:
                    raise ValueError("word %r has length %d, expected %d" % (word, len(word), k))
                if x:
                    c[word] = c.get(word, 0) + Fraction(x)
        self._c = {w: x for w, x in c.items() if x != 0}

    @classmethod
    def basis(cls, word: Sequence[int], r: int) -> "TensorVector":
        return cls(len(word), r, {tuple(word): 1})

    @classmethod
    def zero(cls, k: int, r: int) -> "TensorVector":
        return cls(k, r)

    def __getitem__(self, word) -> Fraction:
        return self._c.get(tuple(word), Fraction(0))

    def items(self):
        return self._c.items()

    def words(self):
        return self._c.keys()

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __iter__(self):
        return iter(self._c)

    def _check(self, other):
        if not isinstance(other, TensorVector) or other.k != self.k:
            raise TypeError("incompatible tensor vectors")

    def __add__(self, other):
        self._check(other)
        c = dict(self._c)
        for w, x in other._c.items():
            c[w] = c.get(w, 0) + x
        return TensorVector(self.k, max(self.r, other.r), c)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, s):
        s = Fraction(s)
        return TensorVector(self.k, self.r, {w: s * x for w, x in self._c.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / Fraction(s))

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.k == other.k and self._c == other._c

    def __hash__(self):
        return hash((self.k, frozenset(self._c.items())))

    def __repr__(self):
        terms = " + ".join("%s*u%s" % (format_rational(x), w) for w, x in sorted(self._c.items()))
        return "TensorVector(%s)" % (terms or "0")

    def tensor(self, other: "TensorVector") -> "TensorVector":
        r = max(self.r, other.r)
        c = {}
        for w1, x1 in self._c.items():
            for w2, x2 in other._c.items():
                c[w1 + w2] = x1 * x2
        return TensorVector(self.k + other.k, r, c)

    def append_color(self, a: int) -> "TensorVector":
        """v (x) u_a."""
        return TensorVector(self.k + 1, max(self.r, a), {w + (a,): x for w, x in self._c.items()})

    def to_json(self) -> dict:
        return {"k": self.k, "r": self.r,
                "coeffs": {",".join(map(str, w)): format_rational(x) for w, x in sorted(self._c.items())}}

    @classmethod
    def from_json(cls, data) -> "TensorVector":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = {}
        for key, val in data["coeffs"].items():
            word = tuple(int(a) for a in key.split(",")) if key else ()
            coeffs[word] = parse_rational(val)
        return cls(int(data["k"]), int(data["r"]), coeffs)


def random_tensor(rng, k: int, r: int, nterms: int = 6, bound: int = 9) -> TensorVector:
    c = {}
    for _ in range(nterms):
        word = tuple(rng.randint(1, r) for _ in range(k))
        c[word] = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return TensorVector(k, r, c)


# -- R and Y ----------------------------------------------------------------

def _local_R(a: int, b: int, q: Fraction):
    if a > b:
        return ((b, a, q),)
    if a == b:
        return ((a, a, Fraction(1)),)
    return ((a, b, 1 - q * q), (b, a, q))


def apply_R(i: int, v: TensorVector, q) -> TensorVector:
    """R acting on tensor slots (i, i+1), 1 <= i < k."""
    if not 1 <= i < v.k:
        raise IndexError("R_%d undefined on %d slots" % (i, v.k))
    q = Fraction(q)
    c: Dict[tuple, Fraction] = {}
    for w, x in v.items():
        a, b = w[i - 1], w[i]
        for a2, b2, s in _local_R(a, b, q):
            w2 = w[:i - 1] + (a2, b2) + w[i + 1:]
            c[w2] = c.get(w2, 0) + s * x
    return TensorVector(v.k, v.r, c)


def apply_Y(i: int, z, w, v: TensorVector, q) -> TensorVector:
    """Y_i(z, w) = (R_i + g(z, w)) / f(z, w)."""
    if z == w:
        raise PoleError("Y_%d(z, w) with z = w" % i)
    fz = f_factor(z, w, q)
    if fz == 0:
        raise SingularYError("Y_%d(z, w) with z = q^2 w" % i)
    return (apply_R(i, v, q) + g_factor(z, w, q) * v) / fz


# -- permutations and phi ---------------------------------------------------

def perm_inverse(tau: Sequence[int]) -> Tuple[int, ...]:
    inv = [0] * len(tau)
    for j, t in enumerate(tau, 1):
        inv[t - 1] = j
    return tuple(inv)


def perm_compose(s: Sequence[int], t: Sequence[int]) -> Tuple[int, ...]:
    """(s t)(j) = s(t(j)), one-line forms."""
    return tuple(s[t[j] - 1] for j in range(len(t)))


def transposition(i: int, k: int) -> Tuple[int, ...]:
    p = list(range(1, k + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def length(tau: Sequence[int]) -> int:
    return sum(1 for i in range(len(tau)) for j in range(i + 1, len(tau)) if tau[i] > tau[j])


def reduced_word(tau: Sequence[int]) -> List[int]:
    """Indices i_1..i_L with tau = s_{i_1} ... s_{i_L}, found by peeling left descents."""
    tau = tuple(tau)
    k = len(tau)
    word = []
    while True:
        inv = perm_inverse(tau)
        for i in range(1, k):
            if inv[i - 1] > inv[i]:
                word.append(i)
                tau = perm_compose(transposition(i, k), tau)
                break
        else:
            return word


def all_reduced_words(tau: Sequence[int]) -> List[List[int]]:
    tau = tuple(tau)
    k = len(tau)
    if length(tau) == 0:
        return [[]]
    out = []
    inv = perm_inverse(tau)
    for i in range(1, k):
        if inv[i - 1] > inv[i]:
            rest = perm_compose(transposition(i, k), tau)
            out.extend([i] + w for w in all_reduced_words(rest))
    return out


def phi_apply(tau: Sequence[int], z: Sequence, v: TensorVector, q,
              word: Optional[Sequence[int]] = None) -> TensorVector:
    """phi(tau; z) v built from phi(s_i t) = Y_i(z_{t^-1(i)}, z_{t^-1(i+1)}) phi(t).

    ``word`` is any expression tau = s_{i_1} ... s_{i_L}; defaults to the
    word from ``reduced_word``.
    """
    tau = tuple(tau)
    k = len(tau)
    if word is None:
        word = reduced_word(tau)
    current = tuple(range(1, k + 1))
    for i in reversed(list(word)):
        inv = perm_inverse(current)
        v = apply_Y(i, z[inv[i - 1] - 1], z[inv[i] - 1], v, q)
        current = perm_compose(transposition(i, k), current)
    if current != tau:
        raise ValueError("word %r does not multiply to %r" % (list(word), tau))
    return v


def phi_all(z: Sequence, v: TensorVector, q) -> Dict[tuple, TensorVector]:
    """phi(tau; z) v for every tau in S_k, grown breadth-first along left multiplication."""
    k = len(z)
    ident = tuple(range(1, k + 1))
    out = {ident: v}
    frontier = [ident]
    while frontier:
        nxt = []
        for t in frontier:
            inv = perm_inverse(t)
            for i in range(1, k):
                # s_i t is longer than t iff t^-1(i) < t^-1(i+1)
                if inv[i - 1] < inv[i]:
                    s = perm_compose(transposition(i, k), t)
                    if s not in out:
                        out[s] = apply_Y(i, z[inv[i - 1] - 1], z[inv[i] - 1], out[t], q)
                        nxt.append(s)
        frontier = nxt
    return out


# -- eigenfunction h ----------------------------------------------------------

def _plane_wave(z: Sequence[Fraction], tau, x) -> Fraction:
    inv = perm_inverse(tau)
    out = Fraction(1)
    for i, xi in enumerate(x):
        zi = z[inv[i] - 1]
        out *= (zi / (1 + zi)) ** xi
    return out


def pair_product(z: Sequence, q) -> Fraction:
    out = Fraction(1)
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            out *= f_factor(z[i], z[j], q)
    return out


def eigenfunction_h(mu: Sequence[int], z: Sequence, x: Sequence[int], q, r: Optional[int] = None) -> TensorVector:
    """h^mu_z(x), by direct summation over S_k."""
    mu = tuple(mu)
    k = len(mu)
    if len(z) != k or len(x) != k:
        raise ValueError("mu, z and x must have the same length")
    if any(x[i] < x[i + 1] for i in range(k - 1)):
        raise ValueError("x must be weakly decreasing")
    p = check_params(q, z)
    q, z = p.q, p.z
    r = r or max(mu, default=1)
    images = phi_all(z, TensorVector.basis(mu, r), q)
    total = TensorVector.zero(k, r)
    for tau, vec in images.items():
        total = total + _plane_wave(z, tau, x) * vec
    return pair_product(z, q) * total


def bcps_closed_form(z: Sequence, x: Sequence[int], q) -> Fraction:
    """Single-species eigenfunction as a sum over permutations of z."""
    p = check_params(q, z)
    q, z = p.q, p.z
    k = len(z)
    q2 = q * q
    total = Fraction(0)
    for sigma in itertools.permutations(range(k)):
        term = Fraction(1)
        for i in range(k):
            for j in range(i + 1, k):
                a, b = z[sigma[i]], z[sigma[j]]
                if a == b:
                    raise PoleError("coincident spectral parameters")
                term *= (a - q2 * b) / (a - b)
        for i in range(k):
            zi = z[sigma[i]]
            term *= (zi / (1 + zi)) ** x[i]
        total += term
    return total


# -- Z operators --------------------------------------------------------------

def apply_Z(ell: int, J: Iterable[int], z, v: TensorVector, q, zeroth: bool = True) -> TensorVector:
    """Z_ell^J(z) v.

    ``z`` is indexed by slot label: ``z[i]`` is z_i (a dict or a sequence with
    a placeholder at index 0).  With ``zeroth=True`` the vector has labels
    0..m (slot 0 first); otherwise labels 1..m.  Y_{i-1} acts on labels
    (i-1, i).
    """
    J = sorted(J)
    if ell not in J:
        raise ValueError("ell must belong to J")
    scalar = Fraction(1)
    for i in J:
        if i < ell:
            scalar *= f_factor(z[ell], z[i], q)
        elif i > ell:
            scalar *= f_factor(z[i], z[ell], q)
    shift = 0 if zeroth else -1
    for i in sorted((i for i in J if i < ell)):
        # the reverse-ordered product puts the smallest i rightmost, so it acts first
        v = apply_Y(i + shift, z[ell], z[i], v, q)
    return scalar * v


def recurrence_check_h(counts: Sequence[int], z: Sequence, x: Sequence[int], q):
    """Both sides of the colour-peeling recurrence for F = h (see ``recurrence``)."""
    from .recurrence import recurrence_check_h as run
    return run(counts, z, x, q)


def compare_tensors(name: str, lhs: TensorVector, rhs: TensorVector):
    """Exact componentwise comparison; a failure reports the first differing word."""
    from .report import Check
    diff = lhs - rhs
    if not diff:
        return Check(name, True, max(len(lhs), 1))
    word = sorted(diff.words())[0]
    return Check(name, False, max(len(lhs), 1), {
        "component": list(word), "lhs": format_rational(lhs[word]), "rhs": format_rational(rhs[word])})
