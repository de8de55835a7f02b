"""
Seeded verification suites.

Each suite draws ``cases`` independent admissible random points from a
generator seeded by (seed, suite, case index) and runs a fixed battery of
exact identity checks on each; the outcome is a ``Report``.  The per-identity
checks are also exported for direct use.
"""

import itertools
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from . import fock, hecke, identities, integrability, process, recurrence
from .hecke import TensorVector, apply_R, apply_Y, compare_tensors, phi_apply
from .process import Configuration, words_with_counts
from .report import Check, Report
from .scalars import format_rational, random_params, random_q

SUITES = ("hecke", "process", "boson", "ybe", "transfer", "recurrence", "main")


# -- Hecke relations -------------------------------------------------------------

def check_quadratic(i: int, v: TensorVector, q) -> Check:
    q2 = Fraction(q) ** 2
    w = apply_R(i, v, q) + q2 * v
    lhs = apply_R(i, w, q) - w
    return compare_tensors("(R-1)(R+q^2) = 0", lhs, TensorVector.zero(v.k, v.r))


def check_braid(i: int, v: TensorVector, q) -> Check:
    lhs = apply_R(i, apply_R(i + 1, apply_R(i, v, q), q), q)
    rhs = apply_R(i + 1, apply_R(i, apply_R(i + 1, v, q), q), q)
    return compare_tensors("braid", lhs, rhs)


def check_far_commute(i: int, j: int, v: TensorVector, q) -> Check:
    return compare_tensors("far commute", apply_R(i, apply_R(j, v, q), q), apply_R(j, apply_R(i, v, q), q))


def check_subspace(i: int, v: TensorVector, q) -> Check:
    sig = {tuple(sorted(w)) for w in v.words()}
    out = {tuple(sorted(w)) for w in apply_R(i, v, q).words()}
    ok = out <= sig
    return Check("colour content preserved", ok, len(v),
                 None if ok else {"lhs": None, "rhs": None, "extra": sorted(map(list, out - sig))})


def check_unitarity(i: int, z, w, v: TensorVector, q) -> Check:
    return compare_tensors("Y(z,w)Y(w,z) = 1", apply_Y(i, z, w, apply_Y(i, w, z, v, q), q), v)


def check_cocycle(tau2, tau, z, v: TensorVector, q) -> Check:
    k = len(z)
    lhs = phi_apply(hecke.perm_compose(tau2, tau), z, v, q)
    inv = hecke.perm_inverse(tau)
    zt = [z[inv[j] - 1] for j in range(k)]
    rhs = phi_apply(tau2, zt, phi_apply(tau, z, v, q), q)
    return compare_tensors("cocycle", lhs, rhs)


def check_word_independence(tau, z, v: TensorVector, q, limit: Optional[int] = None) -> Check:
    words = hecke.all_reduced_words(tau)
    if limit is not None:
        words = words[:limit]
    ref = phi_apply(tau, z, v, q, words[0])
    for word in words[1:]:
        c = compare_tensors("reduced-word independence", phi_apply(tau, z, v, q, word), ref)
        if not c:
            c.failure["word"] = list(word)
            return c
    return Check("reduced-word independence", True, len(words))


# -- eigenfunction properties ----------------------------------------------------

Family = Callable[[Sequence[int], Sequence, Sequence[int]], TensorVector]


def h_of(q, r) -> Family:
    return lambda mu, z, x: hecke.eigenfunction_h(mu, z, x, q, r)


def psi_of(q, r) -> Family:
    return lambda mu, z, x: fock.psi(mu, z, x, q, r)


def swapped(seq, i):
    s = list(seq)
    s[i], s[i + 1] = s[i + 1], s[i]
    return tuple(s)


def check_symmetry(F: Family, mu, z, x, q, name: str = "exchange symmetry") -> List[Check]:
    """Both exchange conditions at every adjacent pair i, i+1 of mu."""
    out = []
    q = Fraction(q)
    mu, z = tuple(mu), tuple(z)
    for i in range(len(mu) - 1):
        if mu[i] == mu[i + 1]:
            out.append(compare_tensors("%s (equal colours, i=%d)" % (name, i + 1),
                                       F(mu, z, x), F(mu, swapped(z, i), x)))
        elif mu[i] < mu[i + 1]:
            mu2 = swapped(mu, i)
            lhs = q * F(mu, z, x)
            rhs = (hecke.f_factor(z[i], z[i + 1], q) * F(mu2, swapped(z, i), x)
                   - hecke.g_factor(z[i + 1], z[i], q) * F(mu2, z, x))
            out.append(compare_tensors("%s (i=%d)" % (name, i + 1), lhs, rhs))
    return out


def check_shift(F: Family, mu, z, x, c: int, name: str = "shift") -> Check:
    factor = Fraction(1)
    for zi in z:
        factor *= (Fraction(zi) / (1 + zi)) ** c
    return compare_tensors(name, F(mu, z, tuple(xi + c for xi in x)), factor * F(mu, z, x))


def check_h_equals_psi(mu, z, x, q, r: int) -> Check:
    return compare_tensors("h = psi", hecke.eigenfunction_h(mu, z, x, q, r), fock.psi(mu, z, x, q, r))


def check_stabilization(mu, z, nu, x, q, r: int, widen: int = 2) -> Check:
    base = fock.weighted_bracket(mu, z, nu, x, q, r)
    lo, hi = x[-1], x[0]
    n = 0
    for dl in range(widen + 1):
        for dh in range(widen + 1):
            n += 1
            if dl == dh == 0:
                continue
            val = fock.weighted_bracket(mu, z, nu, x, q, r, (lo - dl, hi + dh))
            if val != base:
                return Check("stabilization", False, n, {
                    "interval": [lo - dl, hi + dh], "lhs": format_rational(val), "rhs": format_rational(base)})
    return Check("stabilization", True, n)


def check_eigen(gamma, c: Configuration, z, r: int, q, name: str) -> Check:
    lhs = process.apply_generator(gamma, c, r, q)
    rhs = sum(1 / Fraction(zi) for zi in z) * gamma(c)
    ok = lhs == rhs
    return Check(name, ok, 1, None if ok else {
        "configuration": c.to_json(), "lhs": format_rational(lhs), "rhs": format_rational(rhs)})


def h_configuration_function(mu, z, q, r):
    cache = {}

    def F(x):
        if x not in cache:
            cache[x] = hecke.eigenfunction_h(mu, z, x, q, r)
        return cache[x]
    return process.as_configuration_function(F, q)


def E_configuration_function(mu, z, q, r):
    return lambda c: fock.eigenfunction_E(mu, z, c.x, c.nu, q, r)


def check_generator(mu, z, c: Configuration, q, r: int) -> List[Check]:
    return [check_eigen(h_configuration_function(mu, z, q, r), c, z, r, q, "generator (h)"),
            check_eigen(E_configuration_function(mu, z, q, r), c, z, r, q, "generator (E)")]


def check_boundary(mu, z, x, q, r: int) -> List[Check]:
    """Coinciding positions carry no colour order: components agree under swaps at ties."""
    v = hecke.eigenfunction_h(mu, z, x, q, r)
    out = []
    for i in range(len(x) - 1):
        if x[i] != x[i + 1]:
            continue
        for nu in set(words_with_counts(process.color_counts(mu, r))):
            a = process.extract_component(v, nu, q)
            b = process.extract_component(v, swapped(nu, i), q)
            if a != b:
                out.append(Check("boundary", False, 1, {
                    "nu": list(nu), "lhs": format_rational(a), "rhs": format_rational(b)}))
                return out
        out.append(Check("boundary", True, 1))
    return out


def check_bcps(z, x, q) -> Check:
    k = len(z)
    closed = hecke.bcps_closed_form(z, x, q)
    h = hecke.eigenfunction_h((1,) * k, z, x, q, 1)[(1,) * k]
    bracket = fock.matrix_element((1,) * k, z, (1,) * k, x, None, q, 1)
    me = fock.bracket_weight(z, x[-1], x[0]) * bracket / (1 - Fraction(q) ** 2) ** k
    for label, val in (("h", h), ("matrix element", me)):
        if val != closed:
            return Check("r=1 closed form", False, 1, {
                "against": label, "lhs": format_rational(closed), "rhs": format_rational(val)})
    return Check("r=1 closed form", True, 2)


# -- sampling --------------------------------------------------------------------

def case_rng(seed: int, suite: str, index: int) -> random.Random:
    return random.Random("%d:%s:%d" % (seed, suite, index))


def random_positions(rng, k: int, top: int = 4, last_one: bool = True) -> tuple:
    x = sorted((rng.randint(1, top) for _ in range(k)), reverse=True)
    if last_one:
        x[-1] = 1
    return tuple(x)


def descending_positions(k: int, top: int):
    """All x with top >= x_1 >= ... >= x_k = 1."""
    if k == 0:
        return [()]
    out = []
    for head in itertools.combinations_with_replacement(range(top, 0, -1), k - 1):
        out.append(tuple(head) + (1,))
    return out


def _params(rng, k, cfg):
    return random_params(rng, k, q=cfg.get("q"))


def _counts(cfg):
    counts = cfg.get("counts")
    return tuple(counts) if counts is not None else (1,) * cfg["r"]


# -- suites ----------------------------------------------------------------------

def case_hecke(cfg, rng):
    r = cfg["r"]
    k = sum(cfg["counts"]) if cfg.get("counts") else rng.randint(2, 4)
    p = _params(rng, k, cfg)
    q, z = p.q, list(p.z)
    v = hecke.random_tensor(rng, k, r)
    checks = []
    for i in range(1, k):
        checks += [check_quadratic(i, v, q), check_subspace(i, v, q),
                   check_unitarity(i, z[0], z[-1], v, q)]
    for i in range(1, k - 1):
        checks.append(check_braid(i, v, q))
    for i in range(1, k):
        for j in range(i + 2, k):
            checks.append(check_far_commute(i, j, v, q))
    perms = list(itertools.permutations(range(1, k + 1)))
    tau, tau2 = rng.choice(perms), rng.choice(perms)
    checks.append(check_cocycle(tau2, tau, z, v, q))
    checks.append(check_word_independence(tau, z, v, q, limit=8))
    return {"q": format_rational(q), "z": [format_rational(t) for t in z], "k": k}, checks


def case_process(cfg, rng):
    r = cfg["r"]
    counts = _counts(cfg)
    k = sum(counts)
    p = random_params(rng, k, q=cfg.get("q") or random_q(rng))
    q, z = p.q, list(p.z)
    c = process.random_configuration(rng, counts)
    mu = rng.choice(words_with_counts(counts))
    checks = []
    ok = c.canonical() == c
    checks.append(Check("canonical idempotent", ok, 1))
    moves = process.outgoing_moves(c, r, q)
    bad = [m for m in moves if m[0].counts(r) != c.counts(r)]
    checks.append(Check("conservation", not bad, len(moves)))
    if 0 < q < 1:
        checks.append(Check("rates positive", all(rate > 0 for _, rate in moves), len(moves)))
    checks += check_generator(mu, z, c, q, r)
    x_tie = tuple(sorted(c.x, reverse=True))
    checks += check_boundary(mu, z, x_tie, q, r)
    return {"q": format_rational(q), "z": [format_rational(t) for t in z], "mu": list(mu),
            "configuration": c.to_json()}, checks


def case_boson(cfg, rng):
    r = cfg["r"]
    p = _params(rng, 2, cfg)
    q, (z, w) = p.q, p.z
    lo = rng.randint(-1, 1)
    hi = lo + rng.randint(0, 2)
    probes = fock.standard_probes(range(lo, hi + 1), r, rng)
    checks = identities.check_exchange(lo, hi, r, z, w, q, probes)
    M = rng.randint(2, 3)
    checks += identities.check_splits(M, r, z, q, fock.standard_probes(range(1, M + 1), r, rng))
    return {"q": format_rational(q), "z": format_rational(z), "w": format_rational(w),
            "interval": [lo, hi], "M": M}, checks


def case_ybe(cfg, rng):
    r = cfg["r"]
    p = _params(rng, 2, cfg)
    q, (z, w) = p.q, p.z
    checks = [integrability.check_YBE(z, w, integrability.ybe_probes(r), q, r)]
    if r <= 2:
        probes = fock.basis_probes([1, 2], r, 2)
        checks.append(integrability.check_YBE_monodromy(z, w, 1, 2, probes, q, r))
    return {"q": format_rational(q), "z": format_rational(z), "w": format_rational(w)}, checks


def case_transfer(cfg, rng):
    counts = _counts(cfg)
    k = sum(counts)
    M = cfg.get("sites") or max(k + 1, 2)
    q = cfg.get("q") or random_q(rng)
    sector = integrability.PeriodicSector.build(M, counts)
    Hs = integrability.all_Hn(sector, q)
    checks = [integrability.check_H0(sector, q, Hs), integrability.check_H1_vs_rates(sector, q, Hs)]
    for m in range(M + 1):
        for n in range(m + 1, M + 1):
            checks.append(integrability.check_commutativity(sector, m, n, q, Hs))
    pz = random_params(rng, 2, q=q)
    checks.append(integrability.check_transfer_commute(sector, pz.z[0], pz.z[1], q))
    checks.append(integrability.check_interpolation(sector, pz.z[0], q, Hs))
    return {"q": format_rational(q), "M": M, "counts": list(counts),
            "z": format_rational(pz.z[0]), "w": format_rational(pz.z[1])}, checks


def case_recurrence(cfg, rng):
    counts = _counts(cfg)
    k = sum(counts)
    p = _params(rng, k, cfg)
    q, z = p.q, list(p.z)
    x = random_positions(rng, k)
    checks = [recurrence.recurrence_check_h(counts, z, x, q),
              fock.recurrence_check_psi(counts, z, x, q)]
    return {"q": format_rational(q), "z": [format_rational(t) for t in z], "x": list(x)}, checks


def case_main(cfg, rng):
    r = cfg["r"]
    counts = _counts(cfg)
    k = sum(counts)
    p = _params(rng, k, cfg)
    q, z = p.q, list(p.z)
    x = random_positions(rng, k, last_one=False)
    checks = [check_h_equals_psi(mu, z, x, q, r) for mu in words_with_counts(counts)]
    return {"q": format_rational(q), "z": [format_rational(t) for t in z], "x": list(x)}, checks


CASES = {
    "hecke": case_hecke,
    "process": case_process,
    "boson": case_boson,
    "ybe": case_ybe,
    "transfer": case_transfer,
    "recurrence": case_recurrence,
    "main": case_main,
}


def _run_case(args):
    suite, index, cfg = args
    rng = case_rng(cfg["seed"], suite, index)
    inputs, checks = CASES[suite](cfg, rng)
    return index, inputs, checks


def worker_count() -> int:
    try:
        n = int(os.environ.get("QBOSON_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, min(n, os.cpu_count() or 1))


def run_suite(suite: str, cfg: dict) -> Report:
    """cfg keys: r, counts (optional), q (optional), seed, cases, sites (optional)."""
    names = SUITES if suite == "all" else (suite,)
    for n in names:
        if n not in CASES:
            raise ValueError("unknown suite %r" % n)
    params = {key: (format_rational(v) if isinstance(v, Fraction) else
                    list(v) if isinstance(v, tuple) else v)
              for key, v in sorted(cfg.items()) if v is not None}
    report = Report(suite, params)
    start = time.perf_counter()
    jobs, offset = [], 0
    for n in names:
        jobs += [(n, offset + i, cfg) for i in range(cfg["cases"])]
        offset += cfg["cases"]
    workers = worker_count()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run_case, _local_index(jobs)))
    else:
        results = [_run_case(j) for j in _local_index(jobs)]
    for (n, i, _), (_, inputs, checks) in zip(jobs, results):
        if suite == "all":
            inputs = dict(inputs, suite=n)
        report.add_case(i, checks, inputs)
    report.wall_time = time.perf_counter() - start
    return report


def _local_index(jobs):
    """Seed each case by its index within its own suite so 'all' reproduces the single-suite runs."""
    out = []
    for n, i, c in jobs:
        out.append((n, i % c["cases"], c))
    return out
