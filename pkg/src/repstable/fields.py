"""Exact scalar arithmetic: the rationals and prime fields.

Every rank, solvability and classification decision in this package is made
with exact arithmetic; there are no numerical tolerances anywhere.  Field
elements support ``+ - * /``, ``==`` and ``bool`` (nonzero test), so the
linear algebra in :mod:`repstable.linalg` is written once and runs over both
fields.
"""

from __future__ import annotations

from fractions import Fraction


class Mod:
    """An element of the prime field with ``p`` elements."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def __add__(self, other: "Mod") -> "Mod":
        return Mod(self.v + other.v, self.p)

    def __sub__(self, other: "Mod") -> "Mod":
        return Mod(self.v - other.v, self.p)

    def __neg__(self) -> "Mod":
        return Mod(-self.v, self.p)

    def __mul__(self, other: "Mod") -> "Mod":
        return Mod(self.v * other.v, self.p)

    def __truediv__(self, other: "Mod") -> "Mod":
        if other.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Mod(self.v * pow(other.v, self.p - 2, self.p), self.p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Mod) and self.p == other.p and self.v == other.v

    def __hash__(self) -> int:
        return hash((self.v, self.p))

    def __bool__(self) -> bool:
        return self.v != 0

    def __repr__(self) -> str:
        return "%d" % self.v


class RationalField:
    """The field of rational numbers; elements are ``fractions.Fraction``."""

    characteristic = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def of_int(self, n: int):
        return Fraction(n)

    def parse(self, text: str):
        return Fraction(text)

    def fmt(self, x) -> str:
        return "%d/%d" % (x.numerator, x.denominator)

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")


class PrimeField:
    """The field GF(p) for a prime p."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, min(p, 1000))
                        if d * d <= p):
            raise ValueError("characteristic must be prime, got %d" % p)
        self.characteristic = p

    def zero(self):
        return Mod(0, self.characteristic)

    def one(self):
        return Mod(1, self.characteristic)

    def of_int(self, n: int):
        return Mod(n, self.characteristic)

    def parse(self, text: str):
        frac = Fraction(text)
        return self.of_int(frac.numerator) / self.of_int(frac.denominator)

    def fmt(self, x) -> str:
        return "%d/1" % x.v

    def __repr__(self) -> str:
        return "GF(%d)" % self.characteristic

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, PrimeField)
                and other.characteristic == self.characteristic)

    def __hash__(self) -> int:
        return hash(("GF", self.characteristic))


QQ = RationalField()


def get_field(characteristic: int):
    """Field of the given characteristic: 0 for the rationals, p for GF(p)."""
    if characteristic == 0:
        return QQ
    return PrimeField(characteristic)
