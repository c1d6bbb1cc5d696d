"""
Truncated 2-adic arithmetic with absolute precision tracking.

A Padic2 is a 2-adic integer known modulo 2^A. Values with negative valuation
are carried as ScaledPadic2, a Padic2 "unit part" together with a shift e, so
that the represented value is 2^-e times the unit part. The Teichmueller
character and the angle component at p = 2 live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from errors import DomainError, PrecisionError
from numcore import as_rational, vp

EXACT = "exact"
BELOW_PRECISION = "below_precision"
EXACT_ZERO = "exact_zero"


@dataclass(frozen=True)
class Valuation2Result:
    """A 2-adic valuation reading.

    kind is "exact" (value holds v), "below_precision" (the quantity vanishes
    modulo 2^precision) or "exact_zero" (the quantity is exactly zero).
    """

    kind: str
    value: Optional[int] = None
    precision: Optional[int] = None

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT

    def at_least(self, bound: int) -> bool:
        """Return True when the reading proves valuation >= bound."""
        if self.kind == EXACT_ZERO:
            return True
        if self.kind == BELOW_PRECISION:
            return self.precision >= bound
        return self.value >= bound

    def to_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value, "precision": self.precision}


@dataclass(frozen=True)
class Padic2:
    """A 2-adic integer known modulo 2^precision; precision None marks exact zero."""

    residue: int
    precision: Optional[int]

    def __post_init__(self):
        if self.precision is None:
            if self.residue != 0:
                raise DomainError("exact zero must have residue 0")
            return
        if self.precision < 0:
            raise DomainError(f"negative precision {self.precision}")
        if not 0 <= self.residue < (1 << self.precision):
            raise DomainError(f"residue {self.residue} outside [0, 2^{self.precision})")

    @classmethod
    def exact_zero(cls) -> "Padic2":
        return cls(0, None)

    @classmethod
    def of(cls, residue: int, precision: int) -> "Padic2":
        return cls(residue % (1 << precision), precision)

    @property
    def is_exact_zero(self) -> bool:
        return self.precision is None

    def _val(self) -> int:
        """Valuation of the residue, capped at the precision."""
        if self.residue == 0:
            return self.precision
        return min((self.residue & -self.residue).bit_length() - 1, self.precision)

    def add(self, other: "Padic2") -> "Padic2":
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        precision = min(self.precision, other.precision)
        return Padic2.of(self.residue + other.residue, precision)

    def neg(self) -> "Padic2":
        if self.is_exact_zero:
            return self
        return Padic2.of(-self.residue, self.precision)

    def sub(self, other: "Padic2") -> "Padic2":
        return self.add(other.neg())

    def mul(self, other: "Padic2") -> "Padic2":
        """Multiply, keeping precision min(A1 + v2, A2 + v1)."""
        if self.is_exact_zero or other.is_exact_zero:
            return Padic2.exact_zero()
        precision = min(self.precision + other._val(), other.precision + self._val())
        return Padic2.of(self.residue * other.residue, precision)

    def inv(self) -> "Padic2":
        if self.is_exact_zero or self.precision == 0 or self.residue % 2 == 0:
            raise DomainError("non-unit has no inverse in Z_2")
        return Padic2(pow(self.residue, -1, 1 << self.precision), self.precision)

    __add__ = add
    __sub__ = sub
    __mul__ = mul
    __neg__ = neg

    def valuation(self) -> Valuation2Result:
        if self.is_exact_zero:
            return Valuation2Result(EXACT_ZERO)
        v = self._val()
        if v >= self.precision:
            return Valuation2Result(BELOW_PRECISION, precision=self.precision)
        return Valuation2Result(EXACT, v, self.precision)

    def agrees_with(self, other: "Padic2", precision: Optional[int] = None) -> bool:
        """Return True when both residues agree modulo 2^min(A1, A2[, precision])."""
        bounds = [a for a in (self.precision, other.precision, precision) if a is not None]
        if not bounds:
            return True
        mask = (1 << min(bounds)) - 1
        return (self.residue & mask) == (other.residue & mask)


def embed(x, precision: int) -> Padic2:
    """Embed a 2-integral rational into Z_2 modulo 2^precision."""
    x = as_rational(x)
    if x == 0:
        return Padic2.exact_zero()
    if x.denominator % 2 == 0:
        raise DomainError(f"{x} is not 2-integral")
    modulus = 1 << precision
    return Padic2((x.numerator * pow(x.denominator, -1, modulus)) % modulus, precision)


def valuation2(a) -> Valuation2Result:
    return a.valuation()


@dataclass(frozen=True)
class ScaledPadic2:
    """The 2-adic number 2^-shift * unit, with unit a Padic2 and shift >= 0."""

    unit: Padic2
    shift: int = 0

    @classmethod
    def exact_zero(cls) -> "ScaledPadic2":
        return cls(Padic2.exact_zero(), 0)

    @classmethod
    def from_rational(cls, x, abs_precision: int) -> "ScaledPadic2":
        """Embed any rational, known modulo 2^abs_precision."""
        x = as_rational(x)
        if x == 0:
            return cls.exact_zero()
        shift = max(0, -vp(2, x), -abs_precision)
        return cls(embed(x * (1 << shift), abs_precision + shift), shift)

    @property
    def is_exact_zero(self) -> bool:
        return self.unit.is_exact_zero

    @property
    def abs_precision(self) -> Optional[int]:
        if self.is_exact_zero:
            return None
        return self.unit.precision - self.shift

    def _lifted(self, shift: int) -> Padic2:
        d = shift - self.shift
        return Padic2(self.unit.residue << d, self.unit.precision + d)

    def add(self, other: "ScaledPadic2") -> "ScaledPadic2":
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        shift = max(self.shift, other.shift)
        return ScaledPadic2(self._lifted(shift).add(other._lifted(shift)), shift)

    def neg(self) -> "ScaledPadic2":
        return ScaledPadic2(self.unit.neg(), self.shift)

    def sub(self, other: "ScaledPadic2") -> "ScaledPadic2":
        return self.add(other.neg())

    def mul(self, other: "ScaledPadic2") -> "ScaledPadic2":
        if self.is_exact_zero or other.is_exact_zero:
            return ScaledPadic2.exact_zero()
        return ScaledPadic2(self.unit.mul(other.unit), self.shift + other.shift)

    __add__ = add
    __sub__ = sub
    __mul__ = mul
    __neg__ = neg

    def scale(self, q) -> "ScaledPadic2":
        """Multiply by an exact rational; the relative precision is unchanged."""
        q = as_rational(q)
        if q == 0 or self.is_exact_zero:
            return ScaledPadic2.exact_zero()
        v = vp(2, q)
        odd_part = q / Fraction(2) ** v
        unit = self.unit.mul(embed(odd_part, self.unit.precision))
        shift = self.shift - v
        if shift < 0:
            unit = Padic2(unit.residue << -shift, unit.precision - shift)
            shift = 0
        return ScaledPadic2(unit, shift)

    def valuation(self) -> Valuation2Result:
        reading = self.unit.valuation()
        if reading.kind == EXACT_ZERO:
            return reading
        if reading.kind == BELOW_PRECISION:
            return Valuation2Result(BELOW_PRECISION, precision=self.abs_precision)
        return Valuation2Result(EXACT, reading.value - self.shift, self.abs_precision)

    def congruent(self, other: "ScaledPadic2", precision: int) -> bool:
        """Return True when self and other agree modulo 2^precision."""
        diff = self.sub(other)
        if diff.is_exact_zero:
            return True
        if diff.abs_precision < precision:
            raise PrecisionError(
                f"difference known only mod 2^{diff.abs_precision}, need 2^{precision}",
                required=precision,
            )
        return diff.valuation().at_least(precision)

    def residue_hex(self) -> str:
        return hex(self.unit.residue)

    def to_dict(self) -> dict:
        if self.is_exact_zero:
            return {"exact_zero": True}
        return {
            "abs_precision": self.abs_precision,
            "scaling_exponent": self.shift,
            "residue_hex": self.residue_hex(),
        }


def teichmuller(x) -> Fraction:
    """Return omega(x) = 2^v2(x) * eps with eps = +-1 congruent to the unit part mod 4."""
    x = as_rational(x)
    if x == 0:
        raise DomainError("Teichmueller character of zero")
    v = vp(2, x)
    unit = x / Fraction(2) ** v
    # For odd d, d is its own inverse mod 4.
    eps = 1 if (unit.numerator * unit.denominator) % 4 == 1 else -1
    return Fraction(2) ** v * eps


def angle(x) -> Fraction:
    """Return <x> = x / omega(x), a 1-unit."""
    x = as_rational(x)
    return x / teichmuller(x)
