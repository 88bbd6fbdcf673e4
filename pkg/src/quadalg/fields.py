"""Exact coefficient arithmetic: the rationals and prime fields GF(p).

Field handles are small immutable objects exposing a uniform interface
(add, mul, inv, ...).  Rational elements are ``fractions.Fraction`` in
lowest terms; GF(p) elements are plain ints in the canonical range
0..p-1.  No wrapper class around elements: plain values keep the hot
loops in the Groebner and elimination code cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random

# Mersenne prime 2^31 - 1; keeps int64 products exact and makes the
# failure probability of randomized rank computations negligible.
DEFAULT_SAMPLING_PRIME = 2**31 - 1


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    """Description of a coefficient field: ``rational`` or ``prime`` (with p)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("rational", "prime"):
            raise FieldError(f"unknown field kind {self.kind!r}")
        if self.kind == "prime":
            if self.p is None or self.p < 2:
                raise FieldError("prime field needs a modulus p >= 2")
        elif self.p is not None:
            raise FieldError("rational field takes no modulus")

    def __str__(self):
        return "rational" if self.kind == "rational" else f"gf {self.p}"


def _smallest_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    for q in range(3, math.isqrt(n) + 1, 2):
        if n % q == 0:
            return q
    return n


class RationalField:
    """Exact rational arithmetic on ``Fraction`` values."""

    kind = "rational"
    p = None

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec("rational")

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x) -> Fraction:
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def random(self, rng: Random):
        raise FieldError("sampling requires a finite field")

    def serialize(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def parse(self, text: str) -> Fraction:
        return Fraction(text)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    """Arithmetic in GF(p), elements stored as canonical residues 0..p-1."""

    kind = "prime"

    def __init__(self, p: int):
        q = _smallest_factor(p) if p >= 2 else p
        if p < 2 or q != p:
            raise FieldError(f"{p} = {q}·{p // q} not prime")
        self.p = p

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec("prime", self.p)

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.p

    def coerce(self, x) -> int:
        if isinstance(x, Fraction):
            if math.gcd(x.denominator, self.p) != 1:
                raise FieldError(f"denominator {x.denominator} not invertible mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def random(self, rng: Random) -> int:
        return rng.randrange(self.p)

    def serialize(self, a) -> str:
        return str(a % self.p)

    def parse(self, text: str) -> int:
        if "/" in text:
            num, den = text.split("/")
            return self.div(int(num) % self.p, int(den) % self.p)
        return int(text) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def make_field(spec: FieldSpec):
    """Build a field handle from its spec."""
    if spec.kind == "rational":
        return RationalField()
    return PrimeField(spec.p)


def rationals() -> RationalField:
    return RationalField()


def gf(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str):
    """Parse a field description: ``rational``, ``gf <p>`` or ``gf<p>``."""
    text = text.strip().lower()
    if text in ("rational", "q", "qq"):
        return RationalField()
    if text.startswith("gf"):
        rest = text[2:].strip()
        if not rest.isdigit():
            raise FieldError(f"cannot parse field {text!r}")
        return PrimeField(int(rest))
    raise FieldError(f"cannot parse field {text!r}")


def random_element(field, rng: Random):
    """Uniform random element of a finite field; advances the caller's rng."""
    return field.random(rng)
