"""Exact coefficient fields: GF(p) for prime p, and the rationals."""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import isprime

from src.errors import InvalidField

Scalar = Union[int, Fraction]

_GF_PATTERN = re.compile(r"^gf:?(\d+)$")


@dataclass(frozen=True)
class FieldTag:
    """
    A coefficient field identified by its characteristic (0 for the rationals).

    GF(p) elements are ints in ``range(p)``; rational elements are ``Fraction``.
    """

    characteristic: int

    def __post_init__(self):
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise InvalidField(f"GF({self.characteristic}) is not a field: {self.characteristic} is not prime")

    @classmethod
    def gf(cls, p: int) -> "FieldTag":
        return cls(int(p))

    @classmethod
    def rationals(cls) -> "FieldTag":
        return cls(0)

    @classmethod
    def parse(cls, text: str) -> "FieldTag":
        """Accepts gf2, gf3, gf7, gf:7, q, Q and rationals."""
        raw = str(text).strip()
        if raw in ("q", "Q", "rationals", "rational"):
            return cls.rationals()
        match = _GF_PATTERN.match(raw.lower())
        if not match:
            raise InvalidField(f"Unknown field '{text}' (expected gf2, gf3, gf:<p> or q)")
        p = int(match.group(1))
        if p < 2:
            raise InvalidField(f"GF({p}) is not a field")
        return cls.gf(p)

    # ── Naming ───────────────────────────────────────────────────────────────

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def label(self) -> str:
        if self.is_rational:
            return "q"
        if self.characteristic in (2, 3):
            return f"gf{self.characteristic}"
        return f"gf:{self.characteristic}"

    def __str__(self) -> str:
        return "Q" if self.is_rational else f"GF({self.characteristic})"

    # ── Arithmetic ───────────────────────────────────────────────────────────

    def element(self, value) -> Scalar:
        if self.is_rational:
            return Fraction(value)
        if isinstance(value, Fraction):
            return (value.numerator * pow(value.denominator, -1, self.characteristic)) % self.characteristic
        return int(value) % self.characteristic

    @property
    def zero(self) -> Scalar:
        return self.element(0)

    @property
    def one(self) -> Scalar:
        return self.element(1)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return self.element(a + b)

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self.element(a - b)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return self.element(a * b)

    def neg(self, a: Scalar) -> Scalar:
        return self.element(-a)

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.is_rational:
            return 1 / Fraction(a)
        return pow(int(a), -1, self.characteristic)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def render(self, a: Scalar) -> Union[int, str]:
        """JSON-safe exact value: ints stay ints, non-integral fractions become 'p/q'."""
        if self.is_rational:
            a = Fraction(a)
            return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return int(a)


GF2 = FieldTag(2)
GF3 = FieldTag(3)
Q = FieldTag(0)
