"""
q-deformed bosons on sparse multi-site Fock states.

An occupation is a sorted tuple ``((site, (m_1, ..., m_r)), ...)`` with
empty sites omitted; a SparseKet maps occupations to Fractions.  All
operators act on finite kets without any truncation.

The rank-r L-operator has entries

    L_00 = 1 + z q^{2 sum_p N_p}        L_0a = beta*_a
    L_a0 = z beta_a q^{2 sum_{p>a} N_p}
    L_ab = 0 (a < b),  z q^{2 sum_{p>a} N_p} (a = b),
           z beta_a beta*_b q^{2 sum_{p>a} N_p} (b < a)

and the monodromy matrix T^{[M', M]}(z) = L^{(M')}(z) ... L^{(M)}(z).
C_a(z) = T_{a0} and A(z) = T_{00}.
"""

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .hecke import TensorVector
from .process import inversion_number, words_with_counts, color_counts
from .report import Check
from .scalars import check_params, format_rational, parse_rational


class IntervalError(ValueError):
    pass


# -- occupations ---------------------------------------------------------------

Occupation = Tuple[Tuple[int, Tuple[int, ...]], ...]

VACUUM: Occupation = ()


def occupation(table: Dict[int, Sequence[int]]) -> Occupation:
    return tuple(sorted((int(s), tuple(m)) for s, m in table.items() if any(m)))


def site_counts(occ: Occupation, site: int, r: int) -> Tuple[int, ...]:
    for s, m in occ:
        if s == site:
            return m
    return (0,) * r


def replace_site(occ: Occupation, site: int, m: Tuple[int, ...]) -> Occupation:
    rest = [(s, mm) for s, mm in occ if s != site]
    if any(m):
        rest.append((site, m))
    return tuple(sorted(rest))


def support(occ: Occupation) -> List[int]:
    return [s for s, _ in occ]


class SparseKet:
    """Finite linear combination of occupation basis vectors."""

    __slots__ = ("r", "_c")

    def __init__(self, r: int, coeffs=None):
        self.r = r
        c: Dict[Occupation, Fraction] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for occ, x in items:
                if x:
                    c[occ] = c.get(occ, 0) + Fraction(x)
        self._c = {o: x for o, x in c.items() if x != 0}

    @classmethod
    def vacuum(cls, r: int) -> "SparseKet":
        return cls(r, {VACUUM: 1})

    @classmethod
    def basis(cls, r: int, table: Dict[int, Sequence[int]]) -> "SparseKet":
        return cls(r, {occupation(table): 1})

    def items(self):
        return self._c.items()

    def __getitem__(self, occ) -> Fraction:
        return self._c.get(occ, Fraction(0))

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __add__(self, other: "SparseKet") -> "SparseKet":
        c = dict(self._c)
        for o, x in other._c.items():
            c[o] = c.get(o, 0) + x
        return SparseKet(self.r, c)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, s):
        s = Fraction(s)
        return SparseKet(self.r, {o: s * x for o, x in self._c.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        if not isinstance(other, SparseKet):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        return "SparseKet(%d terms)" % len(self._c)

    def sites(self) -> set:
        return {s for occ in self._c for s in support(occ)}

    def particle_counts(self) -> set:
        """Set of per-colour totals occurring in the ket."""
        out = set()
        for occ in self._c:
            tot = [0] * self.r
            for _, m in occ:
                for a in range(self.r):
                    tot[a] += m[a]
            out.add(tuple(tot))
        return out

    def to_json(self) -> dict:
        terms = []
        for occ, x in sorted(self._c.items()):
            terms.append({"occ": {str(s): list(m) for s, m in occ}, "coef": format_rational(x)})
        return {"terms": terms}

    @classmethod
    def from_json(cls, data, r: Optional[int] = None) -> "SparseKet":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = {}
        for term in data["terms"]:
            table = {int(s): tuple(int(v) for v in m) for s, m in term["occ"].items()}
            if r is None and table:
                r = len(next(iter(table.values())))
            if any(len(m) != r for m in table.values()):
                raise ValueError("inconsistent number of colours in SparseKet JSON")
            occ = occupation(table)
            coeffs[occ] = coeffs.get(occ, 0) + parse_rational(term["coef"])
        return cls(r or 1, coeffs)


def vacuum_pairing(ket: SparseKet) -> Fraction:
    """<vac| ket>: the coefficient of the empty occupation."""
    return ket[VACUUM]


# -- site-local actions --------------------------------------------------------

def _map_site(ket: SparseKet, site: int, local) -> SparseKet:
    """Apply a site-local map ``local(m) -> [(m', coef)]`` linearly."""
    r = ket.r
    out: Dict[Occupation, Fraction] = {}
    for occ, x in ket.items():
        m = site_counts(occ, site, r)
        for m2, c in local(m):
            if c:
                o2 = replace_site(occ, site, m2) if m2 != m else occ
                out[o2] = out.get(o2, 0) + c * x
    return SparseKet(r, out)


def _bump(m, a, d):
    m = list(m)
    m[a - 1] += d
    return tuple(m)


def local_beta(a, m, q2):
    if m[a - 1] == 0:
        return ()
    return ((_bump(m, a, -1), 1 - q2 ** m[a - 1]),)


def local_beta_star(a, m):
    return ((_bump(m, a, 1), Fraction(1)),)


def local_L(row: int, col: int, m, z: Fraction, q2: Fraction):
    """L(z)_{row,col} |m>, as a tuple of (m', coef)."""
    r = len(m)
    if not (0 <= row <= r and 0 <= col <= r):
        raise IndexError("L-operator entry (%d, %d) out of range for r = %d" % (row, col, r))
    if row == 0:
        if col == 0:
            return ((m, 1 + z * q2 ** sum(m)),)
        return ((_bump(m, col, 1), Fraction(1)),)
    a = row
    if col > a:
        return ()
    weight = z * q2 ** sum(m[a:])
    if col == a:
        return ((m, weight),)
    if m[a - 1] == 0:
        return ()
    m2 = _bump(m, a, -1)
    if col > 0:
        m2 = _bump(m2, col, 1)
    return ((m2, weight * (1 - q2 ** m[a - 1])),)


def apply_beta(a: int, site: int, ket: SparseKet, q) -> SparseKet:
    q2 = Fraction(q) ** 2
    return _map_site(ket, site, lambda m: local_beta(a, m, q2))


def apply_beta_star(a: int, site: int, ket: SparseKet, q=None) -> SparseKet:
    return _map_site(ket, site, lambda m: local_beta_star(a, m))


def apply_qN(a: int, site: int, exponent: int, ket: SparseKet, q) -> SparseKet:
    """q^{exponent N_{a,site}}."""
    q = Fraction(q)
    return _map_site(ket, site, lambda m: ((m, q ** (exponent * m[a - 1])),))


def apply_L_entry(site: int, row: int, col: int, z, ket: SparseKet, q) -> SparseKet:
    z = Fraction(z)
    q2 = Fraction(q) ** 2
    return _map_site(ket, site, lambda m: local_L(row, col, m, z, q2))


def _check_support(ket: SparseKet, lo: int, hi: int):
    bad = [s for s in ket.sites() if not lo <= s <= hi]
    if bad:
        raise IntervalError("ket occupies sites %r outside [%d, %d]" % (sorted(bad), lo, hi))


def monodromy_column(lo: int, hi: int, col: int, z, ket: SparseKet, q,
                     strict: bool = True) -> List[SparseKet]:
    """[T^{[lo,hi]}(z)_{c,col} ket for c = 0..r], by a right-to-left sweep.

    With ``strict=False`` sites outside [lo, hi] are spectators (the entry is
    embedded in a larger lattice) instead of an error.
    """
    if lo > hi:
        raise IntervalError("empty interval [%d, %d]" % (lo, hi))
    if strict:
        _check_support(ket, lo, hi)
    r = ket.r
    z = Fraction(z)
    q2 = Fraction(q) ** 2
    zero = SparseKet(r)
    carry = [zero] * (r + 1)
    carry[col] = ket
    # z and q are fixed along the sweep, so L entries depend only on (col, m)
    entries: Dict[tuple, list] = {}
    for site in range(hi, lo - 1, -1):
        acc: List[Dict[Occupation, Fraction]] = [dict() for _ in range(r + 1)]
        for d, part in enumerate(carry):
            for occ, x in part.items():
                m = site_counts(occ, site, r)
                terms = entries.get((d, m))
                if terms is None:
                    terms = entries[(d, m)] = [(c, m2, coef) for c in range(r + 1)
                                               for m2, coef in local_L(c, d, m, z, q2)]
                for c, m2, coef in terms:
                    o2 = replace_site(occ, site, m2) if m2 != m else occ
                    bucket = acc[c]
                    bucket[o2] = bucket.get(o2, 0) + coef * x
        carry = [SparseKet(r, a) for a in acc]
    return carry


def apply_monodromy_entry(lo: int, hi: int, row: int, col: int, z, ket: SparseKet, q,
                          strict: bool = True) -> SparseKet:
    r = ket.r
    if not (0 <= row <= r and 0 <= col <= r):
        raise IndexError("monodromy entry (%d, %d) out of range for r = %d" % (row, col, r))
    return monodromy_column(lo, hi, col, z, ket, q, strict)[row]


def apply_C(lo: int, hi: int, a: int, z, ket: SparseKet, q) -> SparseKet:
    return apply_monodromy_entry(lo, hi, a, 0, z, ket, q)


def apply_A(lo: int, hi: int, z, ket: SparseKet, q) -> SparseKet:
    return apply_monodromy_entry(lo, hi, 0, 0, z, ket, q)


# -- operator words ------------------------------------------------------------

@dataclass(frozen=True)
class Beta:
    a: int
    i: int

    def apply(self, ket, q):
        return apply_beta(self.a, self.i, ket, q)

    def sites(self):
        return {self.i}


@dataclass(frozen=True)
class BetaStar:
    a: int
    i: int

    def apply(self, ket, q):
        return apply_beta_star(self.a, self.i, ket)

    def sites(self):
        return {self.i}


@dataclass(frozen=True)
class QN:
    """q^{e N_{a,i}}."""
    a: int
    i: int
    e: int = 1

    def apply(self, ket, q):
        return apply_qN(self.a, self.i, self.e, ket, q)

    def sites(self):
        return {self.i}


@dataclass(frozen=True)
class LEntry:
    i: int
    row: int
    col: int
    z: Fraction

    def apply(self, ket, q):
        return apply_L_entry(self.i, self.row, self.col, self.z, ket, q)

    def sites(self):
        return {self.i}


@dataclass(frozen=True)
class TEntry:
    lo: int
    hi: int
    row: int
    col: int
    z: Fraction

    def apply(self, ket, q):
        return apply_monodromy_entry(self.lo, self.hi, self.row, self.col, self.z, ket, q, strict=False)

    def sites(self):
        return set(range(self.lo, self.hi + 1))


def C(lo: int, hi: int, a: int, z) -> "Operator":
    return Operator.word(TEntry(lo, hi, a, 0, Fraction(z)))


def A(lo: int, hi: int, z) -> "Operator":
    return Operator.word(TEntry(lo, hi, 0, 0, Fraction(z)))


def T(lo: int, hi: int, row: int, col: int, z) -> "Operator":
    return Operator.word(TEntry(lo, hi, row, col, Fraction(z)))


def L(i: int, row: int, col: int, z) -> "Operator":
    return Operator.word(LEntry(i, row, col, Fraction(z)))


def b(a: int, i: int) -> "Operator":
    return Operator.word(Beta(a, i))


def bstar(a: int, i: int) -> "Operator":
    return Operator.word(BetaStar(a, i))


def qN(a: int, i: int, e: int = 1) -> "Operator":
    return Operator.word(QN(a, i, e))


class Operator:
    """Linear combination of operator words; ``X * Y`` applies Y first."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = tuple((Fraction(c), tuple(w)) for c, w in terms if c)

    @classmethod
    def word(cls, *prims) -> "Operator":
        return cls([(1, prims)])

    @classmethod
    def identity(cls) -> "Operator":
        return cls([(1, ())])

    @classmethod
    def zero(cls) -> "Operator":
        return cls()

    def __add__(self, other):
        other = _as_operator(other)
        return Operator(self.terms + other.terms)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1) * _as_operator(other)

    def __rsub__(self, other):
        return _as_operator(other) - self

    def __neg__(self):
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, Operator):
            return Operator([(c1 * c2, w1 + w2) for c1, w1 in self.terms for c2, w2 in other.terms])
        s = Fraction(other)
        return Operator([(s * c, w) for c, w in self.terms])

    def __rmul__(self, other):
        s = Fraction(other)
        return Operator([(s * c, w) for c, w in self.terms])

    def __pow__(self, n: int):
        out = Operator.identity()
        for _ in range(n):
            out = out * self
        return out

    def apply(self, ket: SparseKet, q) -> SparseKet:
        total = SparseKet(ket.r)
        for c, word in self.terms:
            v = ket
            for prim in reversed(word):
                v = prim.apply(v, q)
                if not v:
                    break
            total = total + c * v
        return total

    def sites(self) -> set:
        out = set()
        for _, word in self.terms:
            for prim in word:
                out |= prim.sites()
        return out

    def __repr__(self):
        return "Operator(%d words)" % len(self.terms)


def _as_operator(x) -> Operator:
    if isinstance(x, Operator):
        return x
    return Fraction(x) * Operator.identity()


# -- matrix elements, psi and E -----------------------------------------------

def creation_ket(nu: Sequence[int], x: Sequence[int], r: int) -> SparseKet:
    """prod_i beta*_{nu_i, x_i} |vac>."""
    table: Dict[int, List[int]] = {}
    for a, xi in zip(nu, x):
        table.setdefault(xi, [0] * r)[a - 1] += 1
    return SparseKet.basis(r, table)


def _interval(x, interval):
    if interval is None:
        return x[-1], x[0]
    lo, hi = interval
    if lo > min(x) or hi < max(x):
        raise IntervalError("interval [%d, %d] does not contain positions %r" % (lo, hi, tuple(x)))
    return lo, hi


def matrix_element(mu: Sequence[int], z: Sequence, nu: Sequence[int], x: Sequence[int],
                   interval, q, r: int) -> Fraction:
    """< C_{mu_1}(z_1) ... C_{mu_k}(z_k) beta*_{nu_1,x_1} ... beta*_{nu_k,x_k} > on [M', M]."""
    lo, hi = _interval(x, interval)
    ket = creation_ket(nu, x, r)
    for a, za in reversed(list(zip(mu, z))):
        ket = apply_C(lo, hi, a, za, ket, q)
        if not ket:
            return Fraction(0)
    return vacuum_pairing(ket)


def bracket_weight(z: Sequence, lo: int, hi: int) -> Fraction:
    w = Fraction(1)
    for zi in z:
        zi = Fraction(zi)
        w *= zi ** (lo - 1) / (1 + zi) ** hi
    return w


def weighted_bracket(mu, z, nu, x, q, r: int, interval=None) -> Fraction:
    """prod_i z_i^{M'-1} (1+z_i)^{-M} times the matrix element; independent of [M', M]."""
    lo, hi = _interval(x, interval)
    return bracket_weight(z, lo, hi) * matrix_element(mu, z, nu, x, (lo, hi), q, r)


def eigenfunction_E(mu: Sequence[int], z: Sequence, x: Sequence[int], nu: Sequence[int], q,
                    r: Optional[int] = None, interval=None) -> Fraction:
    p = check_params(q, z)
    r = r or max(max(mu), max(nu))
    if len(mu) == 0:
        return Fraction(1)
    return weighted_bracket(mu, p.z, nu, x, p.q, r, interval)


def psi(mu: Sequence[int], z: Sequence, x: Sequence[int], q, r: Optional[int] = None,
        interval=None) -> TensorVector:
    """psi^mu_z(x) as a TensorVector over the words with mu's colour content."""
    p = check_params(q, z)
    q, z = p.q, p.z
    mu = tuple(mu)
    k = len(mu)
    r = r or max(mu, default=1)
    if len(x) != k or len(z) != k:
        raise ValueError("mu, z and x must have the same length")
    if any(x[i] < x[i + 1] for i in range(k - 1)):
        raise ValueError("x must be weakly decreasing")
    if k == 0:
        return TensorVector(0, r, {(): 1})
    lo, hi = _interval(x, interval)
    weight = bracket_weight(z, lo, hi) / (1 - q * q) ** k
    t_mu = inversion_number(mu)
    coeffs = {}
    for nu in words_with_counts(color_counts(mu, r)):
        me = matrix_element(mu, z, nu, x, (lo, hi), q, r)
        if me:
            coeffs[nu] = weight * me * q ** (inversion_number(nu) - t_mu)
    return TensorVector(k, r, coeffs)


# -- congruence checking -------------------------------------------------------

def basis_probes(sites: Sequence[int], r: int, max_total: int = 3) -> List[SparseKet]:
    """Every occupation on ``sites`` with at most ``max_total`` particles."""
    modes = [(s, a) for s in sites for a in range(1, r + 1)]
    out = []
    for n in range(max_total + 1):
        for combo in itertools.combinations_with_replacement(modes, n):
            table: Dict[int, List[int]] = {}
            for s, a in combo:
                table.setdefault(s, [0] * r)[a - 1] += 1
            out.append(SparseKet.basis(r, table))
    return out


def random_probes(rng, sites: Sequence[int], r: int, count: int = 5, nterms: int = 4,
                  max_total: int = 3) -> List[SparseKet]:
    pool = basis_probes(sites, r, max_total)
    out = []
    for _ in range(count):
        ket = SparseKet(r)
        for _ in range(nterms):
            ket = ket + Fraction(rng.randint(-9, 9), rng.randint(1, 9)) * rng.choice(pool)
        out.append(ket)
    return out


def standard_probes(sites: Sequence[int], r: int, rng=None, max_total: int = 3) -> List[SparseKet]:
    import random as _random
    rng = rng or _random.Random(0)
    return basis_probes(sites, r, max_total) + random_probes(rng, sites, r, max_total=max_total)


def check_congruence(lhs: Operator, rhs: Operator, interval, killed_colors: Iterable[int],
                     probes: Sequence[SparseKet], q, bra_site: Optional[int] = None,
                     name: str = "congruence") -> Check:
    """Compare <bra| lhs |probe> with <bra| rhs |probe> for every bra with m_p = 0 at the
    left end of the interval for all killed colours p.

    Such bras annihilate the right ideal generated by beta*_{p, M'}, so agreement on all
    of them is equality modulo that ideal.
    """
    lhs, rhs = _as_operator(lhs), _as_operator(rhs)
    lo, hi = interval
    site = lo if bra_site is None else bra_site
    killed = tuple(killed_colors)
    checks = 0
    for n, ketp in enumerate(probes):
        _check_support(ketp, lo, hi)
        left = lhs.apply(ketp, q)
        right = rhs.apply(ketp, q)
        diff = left - right
        for occ in set(o for o, _ in left.items()) | set(o for o, _ in right.items()):
            m = site_counts(occ, site, ketp.r)
            if any(m[p - 1] for p in killed):
                continue
            checks += 1
            if diff[occ] != 0:
                return Check(name, False, checks, {
                    "probe": ketp.to_json(),
                    "bra": {str(s): list(mm) for s, mm in occ},
                    "lhs": format_rational(left[occ]),
                    "rhs": format_rational(right[occ]),
                })
    return Check(name, True, checks,
                 note="probes: %d kets on sites [%d, %d]" % (len(probes), lo, hi))


def check_vacuum_bra(lhs: Operator, rhs: Operator, probes: Sequence[SparseKet], q,
                     name: str = "vacuum bra") -> Check:
    """<vac| lhs |probe> = <vac| rhs |probe> for every probe."""
    lhs, rhs = _as_operator(lhs), _as_operator(rhs)
    for n, ketp in enumerate(probes):
        a = vacuum_pairing(lhs.apply(ketp, q))
        c = vacuum_pairing(rhs.apply(ketp, q))
        if a != c:
            return Check(name, False, n + 1, {
                "probe": ketp.to_json(), "bra": {}, "lhs": format_rational(a), "rhs": format_rational(c)})
    return Check(name, True, len(probes))


def psi_family(q, r: int):
    def F(mu, z, x):
        return psi(mu, z, x, q, r)
    return F


def recurrence_check_psi(counts: Sequence[int], z: Sequence, x: Sequence[int], q):
    """Both sides of the colour-peeling recurrence for F = psi, sharing the right-side evaluator with h."""
    from .recurrence import recurrence_check
    return recurrence_check(psi_family(q, len(counts)), counts, z, x, q, "recurrence (psi)")
