"""
Exact scalars for the q-Boson computations.

Everything is a ``fractions.Fraction``; parameters (q, z_1, ..., z_k) are
instantiated at rational points so every identity becomes an exact equality.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class PoleError(ZeroDivisionError):
    """A structure function was evaluated on its pole z = w."""


class ParamError(ValueError):
    """Spectral parameters violate an admissibility constraint."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'n/d' string")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse ``"n/d"`` or ``"n"``."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    if "." in text or "e" in text.lower():
        raise ValueError("rational must be written n/d, got %r" % text)
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def f_factor(z, w, q) -> Fraction:
    """(z - q^2 w) / (z - w)."""
    z, w, q = Fraction(z), Fraction(w), Fraction(q)
    if z == w:
        raise PoleError("f(z, w) has a pole at z = w = %s" % format_rational(z))
    return (z - q * q * w) / (z - w)


def g_factor(z, w, q) -> Fraction:
    """-(1 - q^2) z / (z - w); equal to f(w, z) - 1."""
    z, w, q = Fraction(z), Fraction(w), Fraction(q)
    if z == w:
        raise PoleError("g(z, w) has a pole at z = w = %s" % format_rational(z))
    return -(1 - q * q) * z / (z - w)


@dataclass(frozen=True)
class SpectralParams:
    q: Fraction
    z: tuple

    def __post_init__(self):
        object.__setattr__(self, "q", as_rational(self.q))
        object.__setattr__(self, "z", tuple(as_rational(zi) for zi in self.z))

    @property
    def k(self):
        return len(self.z)


def validate_params(p: SpectralParams) -> None:
    """Raise ParamError unless (q, z) is an admissible evaluation point."""
    q = p.q
    if q == 0:
        raise ParamError("q must be nonzero")
    if q in (1, -1):
        raise ParamError("q must differ from +1 and -1 (1 - q^2 appears in denominators)")
    q2 = q * q
    for i, zi in enumerate(p.z, 1):
        if zi == 0:
            raise ParamError("z_%d = 0 is not allowed" % i)
        if zi == -1:
            raise ParamError("z_%d = -1 is not allowed (1 + z_%d appears in denominators)" % (i, i))
    for i, zi in enumerate(p.z, 1):
        for j, zj in enumerate(p.z, 1):
            if i >= j:
                continue
            if zi == zj:
                raise ParamError("z_%d = z_%d" % (i, j))
            if zi == q2 * zj:
                raise ParamError("z_%d = q^2 z_%d" % (i, j))
            if q2 * zi == zj:
                raise ParamError("q^2 z_%d = z_%d" % (i, j))


def check_params(q, z: Sequence) -> SpectralParams:
    p = SpectralParams(q, tuple(z))
    validate_params(p)
    return p


BOUND = 64


def random_rational(rng: random.Random, bound: int = BOUND, positive: bool = False) -> Fraction:
    x = Fraction(rng.randint(1, bound), rng.randint(1, bound))
    if not positive and rng.random() < 0.5:
        x = -x
    return x


def random_q(rng: random.Random, bound: int = BOUND) -> Fraction:
    """A rational in (0, 1)."""
    den = rng.randint(2, bound)
    return Fraction(rng.randint(1, den - 1), den)


def random_params(rng: random.Random, k: int, q=None, bound: int = BOUND) -> SpectralParams:
    """Rejection-sample an admissible point; q is drawn from (0, 1) unless given."""
    if q is None:
        q = random_q(rng, bound)
    while True:
        z = tuple(random_rational(rng, bound) for _ in range(k))
        p = SpectralParams(q, z)
        try:
            validate_params(p)
        except ParamError:
            continue
        return p
