"""
2-adic Hurwitz zeta values at integers j >= 2 on |x|_2 >= 4.

zeta_2(j, x) is obtained by inverting the Volkenborn integral:

    zeta_2(j, x) = omega(x)^(j-1) / (j-1) * integral of (t + x)^-(j-1) dt,

and the Kubota-Leopoldt value at odd j >= 3 is zeta_2(j) = zeta_2(j, 1/4) / 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from errors import CacheFormatError, DomainError, PrecisionError
from numcore import as_rational, vp
from padic2 import ScaledPadic2, teichmuller
from utils.base import Loggable
from utils.file_utils import read_records, write_text_atomic
from utils.verdict import Verdict, verdict_from
from volkenborn import integrate_series

QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class ZetaValue:
    """zeta_2(j, x), or zeta_2(j) when x is None, known modulo 2^abs_precision."""

    j: int
    x: Optional[Fraction]
    value: ScaledPadic2

    @property
    def abs_precision(self) -> Optional[int]:
        return self.value.abs_precision

    def to_dict(self) -> dict:
        return {
            "j": self.j,
            "x": None if self.x is None else str(self.x),
            "abs_precision": self.abs_precision,
            "scaling_exponent": self.value.shift,
            "residue_hex": self.value.residue_hex(),
        }


def hurwitz_zeta2(j: int, x, A: int) -> ZetaValue:
    """Return zeta_2(j, x) certified modulo 2^A."""
    x = as_rational(x)
    if j < 2:
        raise DomainError(f"Hurwitz zeta needs j >= 2, got {j}")
    if x == 0 or vp(2, x) > -2:
        raise DomainError(f"x = {x} is outside the Hurwitz domain v2(x) <= -2")

    factor = teichmuller(x) ** (j - 1) / (j - 1)
    integral = integrate_series(x, j - 1, max(A - vp(2, factor), 1))
    value = integral.value.scale(factor)
    if value.abs_precision < A:
        raise PrecisionError(
            f"zeta_2({j}, {x}) certified only mod 2^{value.abs_precision}", required=A
        )
    return ZetaValue(j, x, value)


def zeta2_at(j: int, A: int) -> ZetaValue:
    """Return zeta_2(j) = zeta_2(j, 1/4) / 2 for odd j >= 3."""
    if j < 3 or j % 2 == 0:
        raise DomainError(f"zeta_2({j}) lies on the vanishing branch; need odd j >= 3")
    half = hurwitz_zeta2(j, QUARTER, A + 1).value.scale(Fraction(1, 2))
    return ZetaValue(j, None, half)


def reflection_check(j: int, x, A: int) -> Verdict:
    """Check zeta_2(j, x) = zeta_2(j, 1 - x) modulo 2^A from two independent series."""
    x = as_rational(x)
    lhs = hurwitz_zeta2(j, x, A)
    rhs = hurwitz_zeta2(j, 1 - x, A)
    return verdict_from(
        "reflection",
        "zeta_2(j, x) = zeta_2(j, 1 - x)",
        lhs.value.congruent(rhs.value, A),
        j=j,
        x=x,
        precision=A,
        lhs=lhs.to_dict(),
        rhs=rhs.to_dict(),
    )


class GoldenStore(Loggable):
    """Regression values for zeta_2(j, x), one `j x A residue_hex scaling_exponent` line each.

    The first certified value at a given (j, x, A) is recorded; later values
    must match it bit for bit.
    """

    def __init__(self, path: str):
        super().__init__()
        self.path = path
        self.entries: Dict[Tuple[int, Fraction, int], Tuple[str, int]] = {}
        for line_no, fields in read_records(path):
            if len(fields) != 5:
                raise CacheFormatError(
                    path, line_no, "expected 'j x A residue_hex scaling_exponent'"
                )
            try:
                key = (int(fields[0]), Fraction(fields[1]), int(fields[2]))
                int(fields[3], 16)
                self.entries[key] = (fields[3].lower(), int(fields[4]))
            except (ValueError, ZeroDivisionError):
                raise CacheFormatError(path, line_no, f"unparsable record {fields!r}")

    def check_or_record(self, zv: ZetaValue, A: int) -> str:
        """Return "recorded", "match" or "mismatch" for zv at precision A."""
        if zv.x is None:
            raise DomainError("golden values are kept for zeta_2(j, x) only")
        key = (zv.j, zv.x, A)
        observed = (zv.value.residue_hex(), zv.value.shift)
        if key not in self.entries:
            self.entries[key] = observed
            self.save()
            self.logger.info(f"Recorded golden value for zeta_2({zv.j}, {zv.x}) at 2^{A}")
            return "recorded"
        if self.entries[key] == observed:
            return "match"
        self.logger.error(f"[✗] Golden mismatch for zeta_2({zv.j}, {zv.x}) at 2^{A}")
        return "mismatch"

    def save(self) -> None:
        lines = [
            f"{j} {x} {A} {residue} {shift}\n"
            for (j, x, A), (residue, shift) in sorted(self.entries.items())
        ]
        write_text_atomic(self.path, "".join(lines))