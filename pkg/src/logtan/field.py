"""Coefficient fields: exact rationals and prime fields."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random

MERSENNE31 = 2**31 - 1


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p % q == 0:
            return p == q
    # deterministic Miller-Rabin for p < 3.3e24
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or GF(p) for an odd prime p.

    Elements are ``Fraction`` over QQ and ``int`` in ``[0, p)`` over GF(p).
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
            if self.p == 2:
                raise ValueError("characteristic 2 is not supported")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def prime(cls, p: int = MERSENNE31) -> "FieldSpec":
        return cls(p)

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def to_json(self):
        return {"kind": "Rationals"} if self.p is None else {"kind": "PrimeField", "p": self.p}

    # element operations -------------------------------------------------

    def __call__(self, x) -> int | Fraction:
        """Coerce an int, Fraction or 'a/b' string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {x.denominator} vanishes in {self}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def reduce(self, x):
        """Normalize the result of +, -, * on representatives."""
        return x if self.p is None else x % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def neg(self, x):
        return -x if self.p is None else (-x) % self.p

    def to_fraction(self, x) -> Fraction:
        """Canonical rational representative; over GF(p) the symmetric lift."""
        if self.p is None:
            return x
        return Fraction(x - self.p if x > self.p // 2 else x)

    def random_element(self, rng: random.Random, nonzero: bool = False):
        if self.p is None:
            lo = 1 if nonzero else 0
            v = rng.randint(lo, 99) * rng.choice((1, -1))
            return Fraction(v)
        return rng.randrange(1 if nonzero else 0, self.p)

    def format(self, x) -> str:
        f = self.to_fraction(x)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


QQ = FieldSpec(None)
GF31 = FieldSpec(MERSENNE31)
