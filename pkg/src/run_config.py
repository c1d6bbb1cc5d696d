"""
Validated parameters of one command-line run.
"""

from fractions import Fraction
from typing import List, Literal, Optional, get_args

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Command = Literal["bernoulli", "zeta", "linform", "verify", "certificate"]
Suite = Literal[
    "integrality",
    "valuation",
    "symmetry",
    "lemma51",
    "kummer",
    "floor",
    "reflection",
    "translation",
    "decomposition",
    "growth",
    "delta-probe",
    "lemma41",
    "archimedean",
    "direct",
]

COMMANDS = get_args(Command)
SUITES = get_args(Suite)


class RunConfig(BaseModel):
    """Command plus parameters, checked before dispatch."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    suite: Optional[Suite] = None
    s: int = Field(0, ge=0)
    delta: int = Field(0, ge=0, le=1)
    kind: Literal["S", "T"] = "S"
    n: Optional[int] = Field(None, ge=1)
    m: Optional[int] = Field(None, ge=2)
    m_list: List[int] = Field(default_factory=list)
    m_max: Optional[int] = Field(None, ge=2)
    j: Optional[int] = None
    x: Optional[str] = None
    k: int = Field(3, ge=1)
    l_max: int = Field(6, ge=0)
    precision: Optional[int] = Field(None, gt=0)
    max_index: Optional[int] = Field(None, ge=0)
    output_format: Literal["json", "csv", "text"] = "json"
    cache_path: Optional[str] = None
    seed: int = 0
    session_name: Optional[str] = None

    @field_validator("m_list")
    @classmethod
    def _m_list_range(cls, value: List[int]) -> List[int]:
        bad = [m for m in value if m < 2]
        if bad:
            raise ValueError(f"every m must be >= 2, got {bad}")
        return value

    @field_validator("x")
    @classmethod
    def _x_in_hurwitz_domain(cls, value: Optional[str]) -> Optional[str]:
        if value is None:
            return value
        try:
            x = Fraction(value)
        except (ValueError, ZeroDivisionError) as err:
            raise ValueError(f"x must be a rational like 1/4, got {value!r}") from err
        if x == 0 or x.denominator % 4 != 0:
            raise ValueError(f"x = {value} must satisfy v2(x) <= -2")
        return value

    @model_validator(mode="after")
    def _command_needs(self) -> "RunConfig":
        if self.command == "verify" and self.suite is None:
            raise ValueError("verify needs --suite")
        if self.command == "certificate" and not self.m_list:
            raise ValueError("certificate needs --m-list")
        if self.command == "zeta" and self.j is None:
            raise ValueError("zeta needs --j")
        if self.command == "bernoulli" and self.max_index is None:
            raise ValueError("bernoulli needs --max")
        if self.command == "linform" and self.n is None and self.m is None:
            raise ValueError("linform needs --n or --m")
        return self

    @property
    def x_rational(self) -> Optional[Fraction]:
        return None if self.x is None else Fraction(self.x)

    def resolved_n(self, default: Optional[int] = None) -> Optional[int]:
        """n from --n, else 2^m - 1 from --m."""
        if self.n is not None:
            return self.n
        if self.m is not None:
            return 2**self.m - 1
        return default
