"""
Command-line entry point ``qboson``.

    qboson eval {h,psi,E} --q 1/2 --z 2 --mu 1 --x 1 [--nu ...]
    qboson verify --suite main --r 2 --counts 1,1 --cases 5 --seed 7
    qboson generator-check --r 2 --counts 1,1 --cases 10
    qboson congruence --lhs "C[1,2;a=1](z)*A[1,2](w)" --rhs "..." --interval 1,2

JSON goes to stdout, diagnostics to stderr.  Exit status: 0 success, 1 an
identity failed, 2 bad input, 3 the computation itself failed.
"""

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from typing import List, Optional

from . import fock, hecke, verify
from .fock import IntervalError
from .hecke import SingularYError
from .oplang import OpSyntaxError, default_env, parse_operator
from .process import Configuration, ConfigurationError, color_counts, words_with_counts
from .report import Report
from .scalars import (ParamError, PoleError, check_params, format_rational, parse_rational,
                      random_params)

MAX_K = 6
MAX_SECTOR = 200_000

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _ints(text: Optional[str]) -> Optional[tuple]:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InputError("expected comma-separated integers, got %r" % text)


def _rationals(text: Optional[str]) -> Optional[List[Fraction]]:
    if text is None:
        return None
    try:
        return [parse_rational(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise InputError("expected comma-separated rationals n/d, got %r" % text)


def _rational(text: Optional[str]) -> Optional[Fraction]:
    if text is None:
        return None
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise InputError("expected a rational n/d, got %r" % text)


def word_key(word) -> str:
    return "(" + ",".join(str(a) for a in word) + ")"


def tensor_values(v) -> dict:
    return {word_key(w): format_rational(c) for w, c in sorted(v.items())}


def _emit(obj, output: Optional[str] = None, compact: bool = False):
    text = json.dumps(obj, sort_keys=True, indent=None if compact else 2)
    print(text)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")


def _resolve_r(args, words=()) -> int:
    if args.r is not None:
        if args.r < 1:
            raise InputError("--r must be at least 1")
        return args.r
    if args.counts:
        return len(args.counts)
    used = [a for w in words if w for a in w]
    return max(used) if used else 1


def _guard_k(k: int, unsafe: bool):
    if k > MAX_K and not unsafe:
        raise InputError("k = %d exceeds the desk-scale limit %d (pass --unsafe to override)" % (k, MAX_K))


def _check_word(name, word, r, k):
    if len(word) != k:
        raise InputError("--%s has %d entries but --z has %d" % (name, len(word), k))
    bad = [a for a in word if not 1 <= a <= r]
    if bad:
        raise InputError("--%s uses colours %r outside 1..%d" % (name, bad, r))


def _check_positions(x, k):
    if len(x) != k:
        raise InputError("--x has %d entries but --z has %d" % (len(x), k))
    if any(x[i] < x[i + 1] for i in range(k - 1)):
        raise InputError("--x must be weakly decreasing")


# -- commands --------------------------------------------------------------------

def cmd_eval(args) -> int:
    q = _rational(args.q)
    z = _rationals(args.z)
    mu = _ints(args.mu)
    x = _ints(args.x)
    if q is None or z is None or mu is None or x is None:
        raise InputError("eval needs --q, --z, --mu and --x")
    check_params(q, z)
    k = len(z)
    _guard_k(k, args.unsafe)
    nu = _ints(args.nu) if args.nu is not None else mu
    r = _resolve_r(args, (mu, nu))
    _check_word("mu", mu, r, k)
    _check_word("nu", nu, r, k)
    _check_positions(x, k)
    if args.counts is not None and color_counts(mu, r) != tuple(args.counts):
        raise InputError("--mu does not have the colour counts given by --counts")
    if args.kind == "h":
        _emit(tensor_values(hecke.eigenfunction_h(mu, z, x, q, r)), args.output, compact=True)
    elif args.kind == "psi":
        _emit(tensor_values(fock.psi(mu, z, x, q, r)), args.output, compact=True)
    else:
        if sorted(nu) != sorted(mu):
            raise InputError("--nu must be a rearrangement of --mu")
        _emit(format_rational(fock.eigenfunction_E(mu, z, x, nu, q, r)), args.output, compact=True)
    return EXIT_OK


def _verify_config(args) -> dict:
    r = _resolve_r(args)
    if args.counts is not None and len(args.counts) != r:
        raise InputError("--counts must have r = %d entries" % r)
    if args.counts is not None and any(c < 0 for c in args.counts):
        raise InputError("--counts must be non-negative")
    if args.cases < 0:
        raise InputError("--cases must be non-negative")
    q = _rational(args.q)
    if q is not None:
        check_params(q, [])
    k = sum(args.counts) if args.counts else r
    _guard_k(k, args.unsafe)
    return {"r": r, "counts": args.counts, "q": q, "seed": args.seed, "cases": args.cases,
            "sites": args.sites}


def _sector_guard(cfg, unsafe):
    from math import comb
    counts = cfg["counts"] or (1,) * cfg["r"]
    k = sum(counts)
    M = cfg["sites"] or max(k + 1, 2)
    dim = 1
    for c in counts:
        dim *= comb(M + c - 1, c)
    if dim > MAX_SECTOR and not unsafe:
        raise InputError("sector dimension %d exceeds %d (pass --unsafe to override)" % (dim, MAX_SECTOR))


def cmd_verify(args) -> int:
    cfg = _verify_config(args)
    if args.suite in ("transfer", "all"):
        _sector_guard(cfg, args.unsafe)
    report = verify.run_suite(args.suite, cfg)
    _emit(report.to_json(), args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_generator_check(args) -> int:
    cfg = _verify_config(args)
    r = cfg["r"]
    report = Report("generator-check", {k: v for k, v in
                                         (("r", r), ("seed", args.seed), ("cases", args.cases)) if v is not None})
    start = time.perf_counter()
    configs = []
    if args.x is not None:
        x = _ints(args.x)
        nu = _ints(args.nu)
        if nu is None:
            raise InputError("--x needs --nu to define a configuration")
        try:
            c = Configuration(x, nu)
        except ConfigurationError as exc:
            raise InputError(str(exc))
        configs = [c]
        counts = c.counts(r)
    else:
        counts = tuple(args.counts) if args.counts else (1,) * r
    k = sum(counts)
    _guard_k(k, args.unsafe)
    mu = _ints(args.mu) if args.mu is not None else None
    if mu is not None:
        _check_word("mu", mu, r, k)
        if color_counts(mu, r) != counts:
            raise InputError("--mu does not match the colour counts of the configuration")
    given_q, given_z = _rational(args.q), _rationals(args.z)
    if given_z is not None:
        if given_q is None:
            raise InputError("--z needs --q")
        check_params(given_q, given_z)
        if len(given_z) != k:
            raise InputError("--z must have k = %d entries" % k)
    n = len(configs) if configs else args.cases
    report.params["counts"] = list(counts)
    for i in range(n):
        rng = verify.case_rng(args.seed, "generator", i)
        c = configs[i] if configs else verify.process.random_configuration(rng, counts)
        if given_z is not None:
            q, z = given_q, given_z
        else:
            p = random_params(rng, k, q=given_q)
            q, z = p.q, list(p.z)
        m = mu if mu is not None else rng.choice(words_with_counts(counts))
        checks = verify.check_generator(m, z, c, q, r)
        report.add_case(i, checks, {"configuration": c.to_json(), "mu": list(m), "q": format_rational(q),
                                    "z": [format_rational(t) for t in z]})
    report.wall_time = time.perf_counter() - start
    _emit(report.to_json(), args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_congruence(args) -> int:
    r = args.r or 1
    q = _rational(args.q)
    z = _rationals(args.z) or []
    if q is None:
        raise InputError("congruence needs --q")
    check_params(q, z)
    interval = _ints(args.interval)
    if not interval or len(interval) != 2 or interval[0] > interval[1]:
        raise InputError("--interval must be lo,hi with lo <= hi")
    killed = _ints(args.killed) or ()
    env = default_env(z)
    try:
        lhs = parse_operator(args.lhs, env, q)
        rhs = parse_operator(args.rhs, env, q)
    except OpSyntaxError as exc:
        raise InputError("operator syntax: %s" % exc)
    lo, hi = interval
    if hi - lo + 1 > 4 and not args.unsafe:
        raise InputError("interval longer than 4 sites (pass --unsafe to override)")
    probes = fock.standard_probes(range(lo, hi + 1), r, random.Random(args.seed), max_total=args.max_total)
    start = time.perf_counter()
    check = fock.check_congruence(lhs, rhs, (lo, hi), killed, probes, q)
    report = Report("congruence", {"lhs": args.lhs, "rhs": args.rhs, "interval": [lo, hi],
                                   "killed": list(killed), "r": r, "q": format_rational(q),
                                   "z": [format_rational(t) for t in z], "seed": args.seed,
                                   "max_total": args.max_total})
    report.add_case(0, [check], {"probes": len(probes), "checked": check.checked})
    report.wall_time = time.perf_counter() - start
    _emit(report.to_json(), args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


# -- parser ----------------------------------------------------------------------

def _common(p, suite=False):
    p.add_argument("--r", type=int, help="number of colours")
    p.add_argument("--counts", type=_ints, help="k_1,...,k_r")
    p.add_argument("--q", help="deformation parameter n/d")
    p.add_argument("--z", help="spectral parameters, comma-separated n/d (use --z=-1/2,... for a leading minus)")
    p.add_argument("--mu", help="colour word, comma-separated")
    p.add_argument("--nu", help="colour word, comma-separated")
    p.add_argument("--x", help="positions, comma-separated, weakly decreasing")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=5)
    p.add_argument("--output", help="also write the JSON result to this file")
    p.add_argument("--unsafe", action="store_true", help="lift the desk-scale size guards")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qboson", description="Exact checks for the multi-species q-Boson eigenfunctions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate h, psi or E at one point")
    p.add_argument("kind", choices=("h", "psi", "E"))
    _common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run a seeded verification suite")
    _common(p)
    p.add_argument("--suite", required=True, choices=verify.SUITES + ("all",))
    p.add_argument("--sites", type=int, help="periodic chain length for the transfer suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generator-check", help="check the eigenfunction property of phi^-1 h and E")
    _common(p)
    p.set_defaults(func=cmd_generator_check, sites=None)

    p = sub.add_parser("congruence", help="compare two operator expressions on probe kets")
    _common(p)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--interval", required=True, help="lo,hi")
    p.add_argument("--killed", help="colours p whose beta*_{p,lo} ideal is quotiented out")
    p.add_argument("--max-total", type=int, default=3, help="particle bound for basis probes")
    p.set_defaults(func=cmd_congruence, sites=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, ParamError, ConfigurationError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (PoleError, SingularYError, IntervalError, ZeroDivisionError, ArithmeticError) as exc:
        print("computation error: %s" % exc, file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
