"""
State space, hop rates and the backward generator of the multi-species
q-Boson system on Z.

A configuration is stored as (x, nu) with x weakly decreasing and colours
weakly increasing inside each cluster of equal positions.
"""

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple


class EmptyClusterError(ValueError):
    pass


class ConfigurationError(ValueError):
    pass


def inversion_number(nu: Sequence[int]) -> int:
    """#{(i, j) : i < j, nu_i > nu_j}."""
    n = len(nu)
    return sum(1 for i in range(n) for j in range(i + 1, n) if nu[i] > nu[j])


def color_counts(nu: Sequence[int], r: int) -> Tuple[int, ...]:
    c = Counter(nu)
    return tuple(c.get(a, 0) for a in range(1, r + 1))


def words_with_counts(counts: Sequence[int]) -> List[Tuple[int, ...]]:
    """All colour words in I_{k_1,...,k_r}, lexicographically sorted."""
    out = []
    remaining = list(counts)
    k = sum(counts)
    word = []

    def rec():
        if len(word) == k:
            out.append(tuple(word))
            return
        for a, left in enumerate(remaining, 1):
            if left:
                remaining[a - 1] -= 1
                word.append(a)
                rec()
                word.pop()
                remaining[a - 1] += 1

    rec()
    return out


@dataclass(frozen=True, order=True)
class Configuration:
    x: Tuple[int, ...]
    nu: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "nu", tuple(self.nu))
        if len(self.x) != len(self.nu):
            raise ConfigurationError("x and nu have different lengths")
        for i in range(len(self.x) - 1):
            if self.x[i] < self.x[i + 1]:
                raise ConfigurationError("positions must be weakly decreasing: %r" % (self.x,))
            if self.x[i] == self.x[i + 1] and self.nu[i] > self.nu[i + 1]:
                raise ConfigurationError(
                    "colours must be weakly increasing inside a cluster: %r %r" % (self.x, self.nu))

    @classmethod
    def from_particles(cls, pairs) -> "Configuration":
        """Canonical representative of an unordered collection of (position, colour)."""
        ordered = sorted(pairs, key=lambda p: (-p[0], p[1]))
        return cls(tuple(p[0] for p in ordered), tuple(p[1] for p in ordered))

    @property
    def k(self):
        return len(self.x)

    def canonical(self) -> "Configuration":
        return Configuration.from_particles(zip(self.x, self.nu))

    def clusters(self, r: int) -> Dict[int, List[int]]:
        """site -> per-colour counts (n_1, ..., n_r)."""
        out: Dict[int, List[int]] = {}
        for xi, a in zip(self.x, self.nu):
            out.setdefault(xi, [0] * r)[a - 1] += 1
        return out

    def counts(self, r: int) -> Tuple[int, ...]:
        return color_counts(self.nu, r)

    def shifted(self, c: int) -> "Configuration":
        return Configuration(tuple(xi + c for xi in self.x), self.nu)

    def to_json(self) -> dict:
        return {"x": list(self.x), "nu": list(self.nu)}

    @classmethod
    def from_json(cls, data) -> "Configuration":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            x = tuple(int(v) for v in data["x"])
            nu = tuple(int(v) for v in data["nu"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigurationError("malformed configuration JSON: %r" % (data,)) from exc
        if any(a < 1 for a in nu):
            raise ConfigurationError("colours are positive integers")
        return cls(x, nu)


def hop_rate(cluster: Sequence[int], a: int, q) -> Fraction:
    """Rate at which one colour-a particle leaves a cluster with counts n_1..n_r."""
    q2 = Fraction(q) ** 2
    n_a = cluster[a - 1]
    if n_a <= 0:
        raise EmptyClusterError("no particle of colour %d in cluster %r" % (a, tuple(cluster)))
    heavier = sum(cluster[a:])
    return (1 - q2 ** n_a) / (1 - q2) * q2 ** heavier


def outgoing_moves(c: Configuration, r: int, q) -> List[Tuple[Configuration, Fraction]]:
    """Every distinct left hop out of c with its rate."""
    moves = []
    particles = list(zip(c.x, c.nu))
    for site, cluster in sorted(c.clusters(r).items(), reverse=True):
        for a in range(1, r + 1):
            if not cluster[a - 1]:
                continue
            j = particles.index((site, a))
            moved = particles[:j] + [(site - 1, a)] + particles[j + 1:]
            moves.append((Configuration.from_particles(moved), hop_rate(cluster, a, q)))
    return moves


RealizedFunction = Callable[[Configuration], Fraction]


def apply_generator(h: RealizedFunction, c: Configuration, r: int, q) -> Fraction:
    """(H h)(c) = sum over moves of rate * (h(target) - h(c))."""
    here = h(c)
    total = Fraction(0)
    for target, rate in outgoing_moves(c, r, q):
        total += rate * (h(target) - here)
    return total


def extract_component(v, nu: Sequence[int], q) -> Fraction:
    """gamma_nu from gamma = sum_nu q^{t(nu)} gamma_nu u_nu."""
    return v[tuple(nu)] / Fraction(q) ** inversion_number(nu)


def as_configuration_function(F: Callable, q) -> RealizedFunction:
    """phi^{-1}: turn x -> TensorVector into a scalar function on configurations."""

    def h(c: Configuration) -> Fraction:
        return extract_component(F(c.x), c.nu, q)

    return h


def random_configuration(rng, counts: Sequence[int], low: int = -2, high: int = 3) -> Configuration:
    pairs = []
    for a, ka in enumerate(counts, 1):
        pairs.extend((rng.randint(low, high), a) for _ in range(ka))
    return Configuration.from_particles(pairs)
