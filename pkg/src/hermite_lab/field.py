"""Exact scalars over the rationals and prime fields GF(p).

Hot code paths work on *raw* values and let the :class:`FieldSpec` normalize
them: a residue ``int`` in ``[0, p)`` for GF(p); an ``int`` (when integral) or a
reduced :class:`fractions.Fraction` for Q.  :class:`FieldElement` wraps a raw
value together with its field for the public arithmetic API.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, SpecMismatch

Raw = Union[int, Fraction]


class FieldKind(enum.Enum):
    RATIONALS = "Rationals"
    PRIME_FIELD = "PrimeField"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind
    modulus: int | None = None

    def __post_init__(self):
        if self.kind is FieldKind.PRIME_FIELD:
            if self.modulus is None or not is_prime(self.modulus):
                raise ValueError(f"modulus must be prime, got {self.modulus!r}")
        elif self.modulus is not None:
            raise ValueError("the rationals take no modulus")

    # -- construction / text form -------------------------------------------
    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME_FIELD, p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``"Q"`` or ``"Fp:<prime>"``."""
        text = text.strip()
        if text == "Q":
            return cls.rationals()
        if text.startswith("Fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise ValueError(f"bad field spec {text!r}") from None
            return cls.prime(p)
        raise ValueError(f"bad field spec {text!r}; expected 'Q' or 'Fp:<prime>'")

    def __str__(self) -> str:
        return "Q" if self.modulus is None else f"Fp:{self.modulus}"

    @property
    def is_prime_field(self) -> bool:
        return self.modulus is not None

    @property
    def characteristic(self) -> int:
        return self.modulus or 0

    # -- raw arithmetic -------------------------------------------------------
    def reduce(self, x: Raw) -> Raw:
        """Canonical raw form of an integer or fraction."""
        p = self.modulus
        if p is not None:
            if type(x) is Fraction:
                return x.numerator * pow(x.denominator, -1, p) % p
            return x % p
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x: Raw) -> Raw:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        p = self.modulus
        if p is not None:
            return pow(x, -1, p)
        return self.reduce(Fraction(1) / x)

    @property
    def zero(self) -> Raw:
        return 0

    @property
    def one(self) -> Raw:
        return 1

    def format(self, x: Raw) -> str:
        return str(x)

    def parse_value(self, text: str) -> Raw:
        text = text.strip()
        return self.reduce(Fraction(text) if "/" in text else int(text))

    def element(self, x: Raw) -> "FieldElement":
        return FieldElement(self, self.reduce(x))

    def from_integer(self, n: int) -> "FieldElement":
        return FieldElement(self, self.reduce(n))


QQ = FieldSpec.rationals()
GF2 = FieldSpec.prime(2)
GF3 = FieldSpec.prime(3)
GF5 = FieldSpec.prime(5)


def from_integer(spec: FieldSpec, n: int) -> "FieldElement":
    return spec.from_integer(n)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    raw: Raw

    @property
    def value(self) -> Raw:
        """Fraction over Q, residue in ``[0, p)`` over GF(p)."""
        if self.spec.modulus is None:
            return Fraction(self.raw)
        return self.raw

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.spec.from_integer(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.spec, self.spec.reduce(self.raw + other.raw))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.spec, self.spec.reduce(self.raw - other.raw))

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.spec, self.spec.reduce(self.raw * other.raw))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.spec, self.spec.reduce(-self.raw))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.raw))

    def is_zero(self) -> bool:
        return self.raw == 0

    def __bool__(self) -> bool:
        return self.raw != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.raw == self.spec.reduce(other)
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.raw == other.raw
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec, self.raw))

    def __str__(self) -> str:
        return self.spec.format(self.raw)

    def __repr__(self) -> str:
        return f"FieldElement({self.spec}, {self.raw})"


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "neg": lambda a, b: -a,
}


def arith(op: str, a: FieldElement, b: FieldElement) -> FieldElement:
    """Dispatch ``add``/``sub``/``mul``/``neg``; ``neg`` ignores ``b`` beyond the field check."""
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec} vs {b.spec}")
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None
    return fn(a, b)


def inverse(a: FieldElement) -> FieldElement:
    return a.inverse()
