"""
Irrationality certificates assembled from the scaled linear forms at n = 2^m - 1.

A row is certified when its scaled coefficients are integers, the scaled form
is nonzero with the predicted 2-adic valuation, and both evaluation routes agree.
The certificate additionally needs

    mu_n = max |scaled coefficient| * 2^-v2(scaled form)

to decrease strictly along the rows.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from errors import DomainError
from linforms import S_KIND, LinearFormReport, linear_form, scaled_coefficients, zeta_window
from numcore import log2_abs
from padic2 import EXACT_ZERO
from utils.base import Loggable
from utils.verdict import Verdict, all_passed, verdict_from

LN2 = math.log(2)


def rate_constant(kind: str, s: int) -> float:
    """Asymptotic log2(mu_n) / n."""
    if kind == S_KIND:
        return ((4 - 6 * LN2) * s + 7 - 12 * LN2) / LN2
    return ((2 - 3 * LN2) * s + 3 - 6 * LN2) / LN2


@dataclass
class CertificateRow:
    m: int
    n: int
    scaled_coefficients: List[Fraction]
    form_valuation: Optional[int]
    predicted_valuation: Optional[int]
    mu: Optional[Fraction]
    verdicts: List[Verdict]

    @property
    def mu_log2(self) -> Optional[float]:
        return None if self.mu is None else log2_abs(self.mu)

    @property
    def passed(self) -> bool:
        return all_passed(self.verdicts)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "scaled_coefficients": [str(c) for c in self.scaled_coefficients],
            "form_valuation": self.form_valuation,
            "predicted_valuation": self.predicted_valuation,
            "mu_log2": None if self.mu is None else f"{self.mu_log2:.6f}",
            "verdicts": {v.name: v.status for v in self.verdicts},
            "rate": None if self.mu is None else f"{self.mu_log2 / self.n:.6f}",
        }


@dataclass
class CertificateReport:
    kind: str
    s: int
    delta: Optional[int]
    rows: List[CertificateRow]
    window: dict
    decay: Verdict
    asymptotic_rate: float
    conclusion: str = ""
    details: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.decay.passed and all(row.passed for row in self.rows)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "s": self.s,
            "delta": self.delta,
            "rows": [row.to_dict() for row in self.rows],
            "zeta_window": self.window["hurwitz"],
            "zeta_names": self.window["names"],
            "asymptotic_rate": f"{self.asymptotic_rate:.6f}",
            "decay": self.decay.to_dict(),
            "conclusion": self.conclusion,
        }


class CertificateBuilder(Loggable):
    """Builds one certificate row per m, then checks the decay of mu_n."""

    def __init__(self, s: int, delta: int, kind: str = S_KIND):
        super().__init__()
        if s < 0 or delta not in (0, 1):
            raise DomainError(f"certificate needs s >= 0 and delta in {{0,1}}, got {s}, {delta}")
        self.s = s
        self.delta = delta
        self.kind = kind

    def row(self, m: int) -> CertificateRow:
        if m < 2:
            raise DomainError(f"certificate rows need m >= 2, got {m}")
        n = 2**m - 1
        self.logger.info(f"Certificate row m={m} (n={n}) for {self.kind}, s={self.s}")
        report: LinearFormReport = linear_form(self.kind, n, self.s, self.delta)
        reading = report.valuation

        verdicts = list(report.integrality_verdicts)
        verdicts.append(
            verdict_from("route-agreement", "both evaluation routes agree", report.route_agreement)
        )
        verdicts.append(
            verdict_from(
                "nonvanishing",
                "the scaled form is nonzero",
                reading.kind != EXACT_ZERO and reading.is_exact,
                valuation=reading.to_dict(),
            )
        )
        verdicts.append(
            verdict_from(
                "valuation",
                "observed valuation equals the predicted one",
                reading.is_exact and reading.value == report.predicted_valuation,
                observed=reading.value,
                predicted=report.predicted_valuation,
            )
        )
        for v in verdicts:
            self.logger.info(f"{v.marker} m={m} {v.name}")
        return CertificateRow(
            m=m,
            n=n,
            scaled_coefficients=scaled_coefficients(report.coefficients),
            form_valuation=reading.value if reading.is_exact else None,
            predicted_valuation=report.predicted_valuation,
            mu=report.certificate_quantity,
            verdicts=verdicts,
        )

    def build(self, m_list: List[int]) -> CertificateReport:
        if not m_list:
            raise DomainError("certificate needs at least one m")
        rows = [self.row(m) for m in sorted(set(m_list))]
        mus = [row.mu for row in rows]
        decreasing = all(mu is not None for mu in mus) and all(
            a > b for a, b in zip(mus, mus[1:])
        )
        decay = verdict_from(
            "decay",
            "mu_n strictly decreases along the rows",
            decreasing,
            mu_log2=[row.to_dict()["mu_log2"] for row in rows],
        )
        window = zeta_window(self.kind, self.s, self.delta)
        report = CertificateReport(
            kind=self.kind,
            s=self.s,
            delta=self.delta if self.kind == S_KIND else None,
            rows=rows,
            window=window,
            decay=decay,
            asymptotic_rate=rate_constant(self.kind, self.s),
        )
        names = ", ".join(window["names"])
        if report.passed:
            report.conclusion = (
                f"all rows certified and mu_n decreasing; consistent with at least one of "
                f"{names} being irrational"
            )
            self.logger.info(f"[✓] Certificate for {self.kind}, s={self.s}: {names}")
        else:
            failed = [row.m for row in rows if not row.passed]
            report.conclusion = f"not certified: failing rows m={failed}, decay={decay.status}"
            self.logger.error(f"[✗] Certificate for {self.kind}, s={self.s} failed")
        return report


def certificate(s: int, delta: int, m_list: List[int], kind: str = S_KIND) -> CertificateReport:
    """Assemble the certificate report for n = 2^m - 1, m in m_list."""
    return CertificateBuilder(s, delta, kind).build(m_list)
