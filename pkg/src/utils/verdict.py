"""
Verdict records shared by every verification routine.
"""

from dataclasses import dataclass, field
from fractions import Fraction

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
INCONCLUSIVE = "inconclusive"
WARN = "warn"

_MARKERS = {PASS: "[✓]", FAIL: "[✗]", NOT_APPLICABLE: "[-]", INCONCLUSIVE: "[!]", WARN: "[!]"}


def to_jsonable(value):
    """Convert exact values into JSON-safe primitives.

    Integers wider than 64 bits and all rationals become decimal strings.
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        if -(2**63) <= value < 2**63:
            return value
        return str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return to_jsonable(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    return str(value)


@dataclass
class Verdict:
    """Outcome of one check.

    `anchor` names the statement being checked, `details` carries the evidence
    (first counterexample, computed and predicted values, ...).
    """

    name: str
    anchor: str
    status: str
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    @property
    def marker(self) -> str:
        return _MARKERS.get(self.status, "[?]")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "status": self.status,
            "details": to_jsonable(self.details),
        }


def verdict_from(name: str, anchor: str, ok: bool, **details) -> Verdict:
    """Return a pass/fail verdict for a boolean outcome."""
    return Verdict(name, anchor, PASS if ok else FAIL, details)


def all_passed(verdicts) -> bool:
    """Return True when no verdict failed."""
    return all(v.passed for v in verdicts)
