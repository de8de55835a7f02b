"""
Periodic-chain integrability: the R-check matrix, the Yang-Baxter equation
for the L-operator, the transfer matrix tau(z) on fixed-colour sectors and
its expansion coefficients H_n.

Matrices are dense lists of rows of Fractions, indexed by the enumerated
sector basis.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from .fock import (Occupation, SparseKet, apply_L_entry, monodromy_column,
                   occupation, site_counts, replace_site)
from .process import hop_rate
from .report import Check
from .scalars import format_rational

AuxVector = Dict[Tuple[int, int], Fraction]


class SectorLeakError(RuntimeError):
    """tau(z) produced an amplitude outside the colour sector (never expected)."""


# -- R-check ---------------------------------------------------------------------

def rcheck_entries(z, q, r: int) -> Dict[Tuple[int, int], List[Tuple[Tuple[int, int], Fraction]]]:
    """Column form of R-check(z): input pair (a, c) -> [(output pair, coefficient)].

    All sums run over 0..r with 0 the smallest index; this is the reading under
    which the Yang-Baxter equation holds.
    """
    z, q = Fraction(z), Fraction(q)
    q2 = q * q
    cols: Dict[Tuple[int, int], List] = {}
    for a in range(r + 1):
        cols[(a, a)] = [((a, a), z - q2)]
    for a in range(r + 1):
        for b in range(a + 1, r + 1):
            # E_aa x E_bb with weight (1-q^2) z, E_bb x E_aa with (1-q^2),
            # E_ab x E_ba with (z-1), E_ba x E_ab with (z-1) q^2
            cols[(a, b)] = [((a, b), (1 - q2) * z), ((b, a), (z - 1) * q2)]
            cols[(b, a)] = [((b, a), 1 - q2), ((a, b), z - 1)]
    return cols


def apply_Rcheck(z, v: AuxVector, q, r: int) -> AuxVector:
    cols = rcheck_entries(z, q, r)
    out: AuxVector = {}
    for pair, x in v.items():
        for tgt, c in cols[pair]:
            out[tgt] = out.get(tgt, 0) + c * x
    return {p: x for p, x in out.items() if x != 0}


def rcheck_matrix(z, q, r: int) -> List[List[Fraction]]:
    """Dense (r+1)^2 square matrix, rows/cols enumerated as a*(r+1)+c."""
    n = (r + 1) ** 2
    mat = [[Fraction(0)] * n for _ in range(n)]
    for (a, c), lst in rcheck_entries(z, q, r).items():
        for (i, j), x in lst:
            mat[i * (r + 1) + j][a * (r + 1) + c] += x
    return mat


# -- Yang-Baxter -------------------------------------------------------------------

EntryOp = Callable[[Fraction, int, int, SparseKet], SparseKet]


def _ybe_entries(entry: EntryOp, z, w, q, r: int, probes: Sequence[SparseKet], name: str) -> Check:
    """R(z/w)[X(z) (x) X(w)] = [X(w) (x) X(z)] R(z/w) entrywise on every probe."""
    z, w = Fraction(z), Fraction(w)
    cols = rcheck_entries(z / w, q, r)
    rows: Dict[Tuple[int, int], List] = {}
    for inp, lst in cols.items():
        for out, c in lst:
            rows.setdefault(out, []).append((inp, c))
    idx = range(r + 1)
    checked = 0
    for n, ket in enumerate(probes):
        # X(z)_{ab} X(w)_{cd} ket and X(w)_{ia} X(z)_{jc} ket, cached
        inner_w = {(c, d): entry(w, c, d, ket) for c in idx for d in idx}
        inner_z = {(j, c): entry(z, j, c, ket) for j in idx for c in idx}
        lhs_cache = {}
        rhs_cache = {}
        for b, d in itertools.product(idx, idx):
            for i, j in itertools.product(idx, idx):
                lhs = SparseKet(r)
                for (a, c), coef in rows.get((i, j), ()):
                    key = (a, b, c, d)
                    if key not in lhs_cache:
                        lhs_cache[key] = entry(z, a, b, inner_w[(c, d)])
                    lhs = lhs + coef * lhs_cache[key]
                rhs = SparseKet(r)
                # column (b, d) of R reaches (a, c); pair it with X(w)_{ia} X(z)_{jc}
                for (a, c), coef in cols[(b, d)]:
                    key = (i, a, j, c)
                    if key not in rhs_cache:
                        rhs_cache[key] = entry(w, i, a, inner_z[(j, c)])
                    rhs = rhs + coef * rhs_cache[key]
                checked += 1
                if lhs != rhs:
                    diff = lhs - rhs
                    occ, _ = next(iter(diff.items()))
                    return Check(name, False, checked, {
                        "entry": [i, j, b, d], "probe": ket.to_json(),
                        "bra": {str(s): list(m) for s, m in occ},
                        "lhs": format_rational(lhs[occ]), "rhs": format_rational(rhs[occ])})
    return Check(name, True, checked, note="%d probes" % len(probes))


def check_YBE(z, w, probes: Sequence[SparseKet], q, r: int, site: int = 0) -> Check:
    """Single-site Yang-Baxter equation for L."""
    def entry(x, a, b, ket):
        return apply_L_entry(site, a, b, x, ket, q)
    return _ybe_entries(entry, z, w, q, r, probes, "YBE L")


def check_YBE_monodromy(z, w, lo: int, hi: int, probes: Sequence[SparseKet], q, r: int) -> Check:
    def entry(x, a, b, ket):
        return monodromy_column(lo, hi, b, x, ket, q)[a]
    return _ybe_entries(entry, z, w, q, r, probes, "YBE T[%d,%d]" % (lo, hi))


def ybe_probes(r: int, max_per_color: int = 2, site: int = 0) -> List[SparseKet]:
    return [SparseKet.basis(r, {site: m})
            for m in itertools.product(range(max_per_color + 1), repeat=r)]


# -- periodic sectors ----------------------------------------------------------------

def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


@dataclass
class PeriodicSector:
    M: int
    counts: Tuple[int, ...]
    basis: List[Occupation]

    def __post_init__(self):
        self.index = {occ: n for n, occ in enumerate(self.basis)}
        if len(self.index) != len(self.basis):
            raise ValueError("duplicate basis states")

    @property
    def r(self):
        return len(self.counts)

    @property
    def dim(self):
        return len(self.basis)

    @classmethod
    def build(cls, M: int, counts: Sequence[int]) -> "PeriodicSector":
        counts = tuple(counts)
        r = len(counts)
        per_color = [list(_compositions(ka, M)) for ka in counts]
        basis = []
        for choice in itertools.product(*per_color):
            table = {i + 1: tuple(choice[a][i] for a in range(r)) for i in range(M)}
            basis.append(occupation(table))
        return cls(M, counts, basis)

    def state(self, n: int) -> SparseKet:
        return SparseKet(self.r, {self.basis[n]: 1})

    def to_vector(self, ket: SparseKet) -> List[Fraction]:
        vec = [Fraction(0)] * self.dim
        for occ, x in ket.items():
            if occ not in self.index:
                raise SectorLeakError("amplitude on %r outside sector %r" % (occ, self.counts))
            vec[self.index[occ]] += x
        return vec

    def from_vector(self, vec: Sequence) -> SparseKet:
        return SparseKet(self.r, {self.basis[n]: x for n, x in enumerate(vec) if x})


def transfer_ket(z, ket: SparseKet, M: int, q) -> SparseKet:
    """tau(z) = sum_a T^{[1, M]}(z)_{aa} applied to ket."""
    total = SparseKet(ket.r)
    for a in range(ket.r + 1):
        total = total + monodromy_column(1, M, a, z, ket, q)[a]
    return total


def transfer_apply(z, sector: PeriodicSector, state: Sequence, q) -> List[Fraction]:
    """tau(z) on a vector of sector amplitudes."""
    return sector.to_vector(transfer_ket(z, sector.from_vector(state), sector.M, q))


def transfer_matrix(z, sector: PeriodicSector, q) -> List[List[Fraction]]:
    cols = [sector.to_vector(transfer_ket(z, sector.state(n), sector.M, q)) for n in range(sector.dim)]
    return transpose(cols)


def transpose(m):
    return [list(row) for row in zip(*m)] if m else []


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _poly_mul_linear(poly, root):
    """poly * (z - root), coefficients low to high."""
    out = [Fraction(0)] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] += c
        out[i] -= root * c
    return out


def lagrange_weights(nodes: Sequence[Fraction]) -> List[List[Fraction]]:
    """weights[n][j]: coefficient of z^n in the j-th Lagrange basis polynomial."""
    nodes = [Fraction(t) for t in nodes]
    out = [[Fraction(0)] * len(nodes) for _ in nodes]
    for j, tj in enumerate(nodes):
        poly = [Fraction(1)]
        denom = Fraction(1)
        for m, tm in enumerate(nodes):
            if m != j:
                poly = _poly_mul_linear(poly, tm)
                denom *= tj - tm
        for n, c in enumerate(poly):
            out[n][j] = c / denom
    return out


def all_Hn(sector: PeriodicSector, q) -> List[List[List[Fraction]]]:
    """[H_0, ..., H_M] from tau at the nodes z = 1, ..., M+1."""
    nodes = [Fraction(t) for t in range(1, sector.M + 2)]
    taus = [transfer_matrix(t, sector, q) for t in nodes]
    weights = lagrange_weights(nodes)
    d = sector.dim
    out = []
    for n in range(sector.M + 1):
        H = [[sum((weights[n][j] * taus[j][a][b] for j in range(len(nodes))), Fraction(0))
              for b in range(d)] for a in range(d)]
        out.append(H)
    return out


def extract_Hn(sector: PeriodicSector, n: int, q) -> List[List[Fraction]]:
    if not 0 <= n <= sector.M:
        raise IndexError("H_n defined for 0 <= n <= M")
    return all_Hn(sector, q)[n]


def evaluate_expansion(Hs, z) -> List[List[Fraction]]:
    z = Fraction(z)
    d = len(Hs[0])
    out = [[Fraction(0)] * d for _ in range(d)]
    for n, H in enumerate(Hs):
        zn = z ** n
        for a in range(d):
            for b in range(d):
                out[a][b] += zn * H[a][b]
    return out


def rate_matrix(sector: PeriodicSector, q) -> List[List[Fraction]]:
    """Q[s'][s] = rate s -> s' on the ring (site 0 is site M); diagonal = -total rate."""
    d, r, M = sector.dim, sector.r, sector.M
    Q = [[Fraction(0)] * d for _ in range(d)]
    for n, occ in enumerate(sector.basis):
        for site in range(1, M + 1):
            m = site_counts(occ, site, r)
            dest = M if site == 1 else site - 1
            for a in range(1, r + 1):
                if not m[a - 1] or dest == site:
                    continue
                rate = hop_rate(m, a, q)
                m_from = list(m)
                m_from[a - 1] -= 1
                o2 = replace_site(occ, site, tuple(m_from))
                m_to = list(site_counts(o2, dest, r))
                m_to[a - 1] += 1
                o2 = replace_site(o2, dest, tuple(m_to))
                Q[sector.index[o2]][n] += rate
                Q[n][n] -= rate
    return Q


def _first_mismatch(a, b):
    for i, (ra, rb) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                return i, j, x, y
    return None


def _matrix_check(name, a, b, sector) -> Check:
    bad = _first_mismatch(a, b)
    if bad is None:
        return Check(name, True, sector.dim ** 2)
    i, j, x, y = bad
    return Check(name, False, sector.dim ** 2, {
        "row": [list(m) for m in sector.basis[i]], "col": [list(m) for m in sector.basis[j]],
        "lhs": format_rational(x), "rhs": format_rational(y)})


def check_H0(sector: PeriodicSector, q, Hs=None) -> Check:
    Hs = Hs or all_Hn(sector, q)
    return _matrix_check("H_0 = Id", Hs[0], identity(sector.dim), sector)


def check_H1_vs_rates(sector: PeriodicSector, q, Hs=None) -> Check:
    """H_1 - M Id = (1 - q^2) Q."""
    Hs = Hs or all_Hn(sector, q)
    q = Fraction(q)
    d, M = sector.dim, sector.M
    lhs = [[Hs[1][i][j] - (M if i == j else 0) for j in range(d)] for i in range(d)]
    Q = rate_matrix(sector, q)
    rhs = [[(1 - q * q) * Q[i][j] for j in range(d)] for i in range(d)]
    return _matrix_check("H_1 - M = (1-q^2) rates", lhs, rhs, sector)


def check_commutativity(sector: PeriodicSector, m: int, n: int, q, Hs=None) -> Check:
    Hs = Hs or all_Hn(sector, q)
    return _matrix_check("[H_%d, H_%d] = 0" % (m, n), matmul(Hs[m], Hs[n]), matmul(Hs[n], Hs[m]), sector)


def check_transfer_commute(sector: PeriodicSector, z, w, q) -> Check:
    tz = transfer_matrix(z, sector, q)
    tw = transfer_matrix(w, sector, q)
    return _matrix_check("tau(z) tau(w) = tau(w) tau(z)", matmul(tz, tw), matmul(tw, tz), sector)


def check_interpolation(sector: PeriodicSector, z, q, Hs=None) -> Check:
    Hs = Hs or all_Hn(sector, q)
    return _matrix_check("sum H_n z^n = tau(z)", evaluate_expansion(Hs, z),
                         transfer_matrix(z, sector, q), sector)
