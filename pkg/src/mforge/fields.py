"""Exact scalar fields: the rationals and GF(p)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, PreconditionError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """``modulus == 0`` means the rationals, otherwise GF(modulus)."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus != 0 and not _is_prime(self.modulus):
            raise PreconditionError(f"GF({self.modulus}) is not a prime field")

    @property
    def is_rational(self) -> bool:
        return self.modulus == 0

    @property
    def tag(self) -> str:
        return "rational" if self.is_rational else f"gf {self.modulus}"

    def __repr__(self) -> str:
        return "QQ" if self.is_rational else f"GF({self.modulus})"

    zero = 0
    one = 1

    def coerce(self, value) -> int | Fraction:
        if self.is_rational:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.modulus == 0:
                raise PreconditionError(f"{value} has no image in GF({self.modulus})")
            return value.numerator * pow(value.denominator, -1, self.modulus) % self.modulus
        return int(value) % self.modulus

    def add(self, a, b):
        return a + b if self.is_rational else (a + b) % self.modulus

    def sub(self, a, b):
        return a - b if self.is_rational else (a - b) % self.modulus

    def mul(self, a, b):
        return a * b if self.is_rational else (a * b) % self.modulus

    def neg(self, a):
        return -a if self.is_rational else (-a) % self.modulus

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.is_rational else pow(a, -1, self.modulus)

    def format(self, value) -> str:
        return str(value)

    def parse(self, token: str):
        try:
            return self.coerce(Fraction(token))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar {token!r}") from exc


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    parts = text.split()
    if parts == ["rational"]:
        return QQ
    if len(parts) == 2 and parts[0] == "gf" and parts[1].isdigit():
        try:
            return GF(int(parts[1]))
        except PreconditionError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown field spec {text!r}")
