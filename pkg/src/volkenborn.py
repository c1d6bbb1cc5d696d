"""
Volkenborn integration over Z_2.

Two back-ends: direct averaging over k < 2^M with a stabilization detector
(heuristic, used for cross-validation only), and the Bernoulli series

    integral of (t + x)^-j dt = sum_i C(-j, i) B_i x^(-j-i),   v2(x) <= -2,

whose truncation is certified by v2(B_i) >= -1. Headline values always come
from the series.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional

from constants import LOGGER_NAME, get_tunable
from errors import DomainError, NonStabilizingError
from numcore import as_rational, bernoulli, binomial_general, default_bernoulli_cache, k_minus, vp
from padic2 import ScaledPadic2
from ratfun import PartialFractionDecomp, Poly
from utils.verdict import Verdict, verdict_from

logger = logging.getLogger(LOGGER_NAME)

INVERSE_POWER = "inverse_power"
POLYNOMIAL = "polynomial"
PARTIAL_FRACTION_SUM = "partial_fraction_sum"
CALLABLE = "callable"


def _check_hurwitz_domain(x: Fraction) -> None:
    if x == 0 or vp(2, x) > -2:
        raise DomainError(f"x = {x} is outside the Hurwitz domain v2(x) <= -2")


@dataclass(frozen=True)
class IntegrandSpec:
    """An integrand over Z_2 together with an exact evaluator on nonnegative integers."""

    kind: str
    x: Optional[Fraction] = None
    j: Optional[int] = None
    poly: Optional[Poly] = None
    decomp: Optional[PartialFractionDecomp] = None
    func: Optional[Callable[[int], Fraction]] = None
    label: str = ""

    @classmethod
    def inverse_power(cls, x, j: int) -> "IntegrandSpec":
        """(t + x)^-j."""
        x = as_rational(x)
        _check_hurwitz_domain(x)
        if j < 1:
            raise DomainError(f"inverse power needs j >= 1, got {j}")
        return cls(INVERSE_POWER, x=x, j=j, label=f"(t+{x})^-{j}")

    @classmethod
    def polynomial(cls, p: Poly) -> "IntegrandSpec":
        return cls(POLYNOMIAL, poly=p, label=repr(p))

    @classmethod
    def partial_fraction_sum(cls, d: PartialFractionDecomp) -> "IntegrandSpec":
        for c in d.shifts():
            _check_hurwitz_domain(c)
        return cls(PARTIAL_FRACTION_SUM, decomp=d, label="partial fractions")

    @classmethod
    def from_callable(cls, func: Callable[[int], Fraction], label: str = "") -> "IntegrandSpec":
        return cls(CALLABLE, func=func, label=label)

    def __call__(self, k: int) -> Fraction:
        if self.kind == INVERSE_POWER:
            return 1 / (k + self.x) ** self.j
        if self.kind == POLYNOMIAL:
            return self.poly(k)
        if self.kind == PARTIAL_FRACTION_SUM:
            return self.decomp(k)
        return as_rational(self.func(k))

    evaluate = __call__

    def derivative(self) -> "IntegrandSpec":
        """The exact derivative, for inverse powers and polynomials."""
        if self.kind == INVERSE_POWER:
            d = PartialFractionDecomp(Poly(), {(self.j + 1, self.x): Fraction(-self.j)})
            return IntegrandSpec(PARTIAL_FRACTION_SUM, decomp=d, label=f"d/dt {self.label}")
        if self.kind == POLYNOMIAL:
            return IntegrandSpec.polynomial(self.poly.derivative())
        if self.kind == PARTIAL_FRACTION_SUM:
            return IntegrandSpec.partial_fraction_sum(self.decomp.derivative(1))
        raise DomainError("no exact derivative for a callable integrand")


@dataclass
class IntegralResult:
    """A Volkenborn integral known modulo 2^abs_precision.

    Series results carry a proven tail bound; direct results are heuristic.
    `approximation` is the exact rational the value was read from (the
    truncated series or the last partial sum); `exact` marks results that
    equal it exactly.
    """

    value: ScaledPadic2
    abs_precision: Optional[int]
    method: str
    heuristic: bool = False
    exact: bool = False
    approximation: Optional[Fraction] = None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "heuristic": self.heuristic,
            "exact": self.exact,
            "abs_precision": self.abs_precision,
            "value": self.value.to_dict(),
            "diagnostics": self.diagnostics,
        }


def direct_sum(f: IntegrandSpec, M: int) -> Fraction:
    """Return (1/2^M) * sum_{k < 2^M} f(k) exactly."""
    if M < 0:
        raise DomainError(f"direct_sum needs M >= 0, got {M}")
    total = Fraction(0)
    for k in range(1 << M):
        total += f(k)
    return total / (1 << M)


def _difference_valuation(a: Fraction, b: Fraction) -> Optional[int]:
    return None if a == b else vp(2, a - b)


def integrate_direct(
    f: IntegrandSpec, M_max: int, target_bits: Optional[int] = None
) -> IntegralResult:
    """Average f over k < 2^M for M = 2..M_max and read off the limit.

    The reported precision is the largest A for which the last three partial
    sums agree mod 2^A. Agreement must grow monotonically over the final four
    levels, otherwise NonStabilizingError is raised with the table.
    """
    if M_max < 2:
        raise DomainError(f"integrate_direct needs M_max >= 2, got {M_max}")
    M_max = min(M_max, get_tunable("direct_m_max"))

    partials: List[Fraction] = []
    table = []
    running = Fraction(0)
    k = 0
    for M in range(M_max + 1):
        while k < (1 << M):
            running += f(k)
            k += 1
        partials.append(running / (1 << M))
        if M < 2:
            continue
        a_now = _difference_valuation(partials[M], partials[M - 1])
        a_prev = _difference_valuation(partials[M - 1], partials[M - 2])
        bounds = [a for a in (a_now, a_prev) if a is not None]
        agreement = min(bounds) if bounds else None
        table.append({"M": M, "partial_sum": partials[M], "agreement": agreement})
        if target_bits is not None and agreement is not None and agreement >= target_bits:
            if _is_growing(table):
                break

    last = table[-1]
    if last["agreement"] is None:
        value = partials[last["M"]]
        return IntegralResult(
            ScaledPadic2.from_rational(value, max(target_bits or 64, 1)),
            None,
            "direct",
            heuristic=True,
            exact=True,
            approximation=value,
            diagnostics={"table": table},
        )
    if not _is_growing(table):
        raise NonStabilizingError(
            f"direct sums for {f.label or f.kind} did not stabilize by M = {last['M']}", table
        )

    precision = last["agreement"]
    logger.debug(f"Direct sum of {f.label or f.kind} stable mod 2^{precision} at M = {last['M']}")
    return IntegralResult(
        ScaledPadic2.from_rational(last["partial_sum"], precision),
        precision,
        "direct",
        heuristic=True,
        approximation=last["partial_sum"],
        diagnostics={"table": table},
    )


def _is_growing(table) -> bool:
    """Agreement is non-decreasing over the final four levels and grows overall."""
    tail = [row["agreement"] for row in table[-4:]]
    if len(tail) < 2:
        return False
    finite = [a if a is not None else math.inf for a in tail]
    return all(x <= y for x, y in zip(finite, finite[1:])) and finite[-1] > finite[0]


def series_truncation_index(x, j: int, A: int) -> int:
    """Return the least I with w(j + I + 1) - 1 >= A + guard, w = -v2(x)."""
    w = -vp(2, x)
    guard = get_tunable("truncation_guard")
    return max(0, -(-(A + guard + 1) // w) - j - 1)


def integrate_series(x, j: int, A: int) -> IntegralResult:
    """Return the integral of (t + x)^-j dt over Z_2, certified mod 2^A."""
    x = as_rational(x)
    _check_hurwitz_domain(x)
    if j < 1:
        raise DomainError(f"integrate_series needs j >= 1, got {j}")

    I = series_truncation_index(x, j, A)
    default_bernoulli_cache().extend_to(I)
    y = 1 / x
    power = y**j
    total = Fraction(0)
    for i in range(I + 1):
        b = bernoulli(i)
        if b:
            total += binomial_general(-j, i) * b * power
        power *= y
    return IntegralResult(
        ScaledPadic2.from_rational(total, A),
        A,
        "series",
        approximation=total,
        diagnostics={"truncation_index": I},
    )


def integrate_polynomial(p: Poly) -> Fraction:
    """Return the exact integral sum_i c_i B_i of a polynomial."""
    return sum((c * bernoulli(i) for i, c in enumerate(p.coeffs)), Fraction(0))


def integrate_decomposition(d: PartialFractionDecomp, A: int) -> IntegralResult:
    """Integrate poly_part + sum coef/(t + c)^i term by term to precision A."""
    exact_part = integrate_polynomial(d.poly_part)
    value = ScaledPadic2.from_rational(exact_part, A)
    approximation = exact_part
    for (i, c), coef in sorted(d.terms.items()):
        needed = max(A - vp(2, coef), 1)
        term = integrate_series(c, i, needed)
        value = value + term.value.scale(coef)
        approximation += coef * term.approximation
    return IntegralResult(
        value,
        value.abs_precision,
        "series",
        approximation=approximation,
        diagnostics={"terms": len(d.terms)},
    )


def integrate(f: IntegrandSpec, A: int) -> IntegralResult:
    """Integrate f by the series back-end."""
    if f.kind == INVERSE_POWER:
        return integrate_series(f.x, f.j, A)
    if f.kind == POLYNOMIAL:
        value = integrate_polynomial(f.poly)
        return IntegralResult(
            ScaledPadic2.from_rational(value, A), A, "series", exact=True, approximation=value
        )
    if f.kind == PARTIAL_FRACTION_SUM:
        return integrate_decomposition(f.decomp, A)
    raise DomainError("callable integrands can only be integrated directly")


def translate_check(f: IntegrandSpec, k: int, A: int) -> Verdict:
    """Check the integral of f(t + k) equals the integral of f plus sum_{l < k} f'(l)."""
    if k < 1:
        raise DomainError(f"translate_check needs k >= 1, got {k}")
    anchor = "int f(t+k) dt = int f(t) dt + sum_{l<k} f'(l)"
    derivative = f.derivative()
    correction = sum((derivative(l) for l in range(k)), Fraction(0))

    if f.kind == POLYNOMIAL:
        lhs = integrate_polynomial(f.poly.shift(k))
        rhs = integrate_polynomial(f.poly) + correction
        return verdict_from("translation", anchor, lhs == rhs, k=k, lhs=lhs, rhs=rhs, exact=True)

    if f.kind == INVERSE_POWER:
        shifted = IntegrandSpec.inverse_power(f.x + k, f.j)
    elif f.kind == PARTIAL_FRACTION_SUM:
        shifted = IntegrandSpec.partial_fraction_sum(f.decomp.translate(k))
    else:
        raise DomainError("translate_check needs an inverse-power or polynomial integrand")
    lhs = integrate(shifted, A).value
    rhs = integrate(f, A).value + ScaledPadic2.from_rational(correction, A)
    diff = (lhs - rhs).valuation()
    return verdict_from(
        "translation",
        anchor,
        lhs.congruent(rhs, A),
        k=k,
        precision=A,
        lhs=lhs.to_dict(),
        rhs=rhs.to_dict(),
        difference_valuation=diff.to_dict(),
    )


def delta_probe(
    f: Callable[[int], Fraction], m: int, sample_count: int, k_cap: int, seed: int = 0
) -> Optional[int]:
    """Sampled witness for Delta_m(f) = inf_{k >= 2^m} v2((f(k) - f(k-)) / (k - k-)).

    Every k in [2^m, min(k_cap, 2^(m+4))) is visited, plus `sample_count` random
    k in [2^m, k_cap]. Returns None when every difference quotient vanished.
    """
    low = 1 << m
    if k_cap < low:
        raise DomainError(f"k_cap {k_cap} below 2^m = {low}")
    rng = random.Random(seed)
    ks = list(range(low, min(k_cap, 1 << (m + 4))))
    ks.extend(rng.randint(low, k_cap) for _ in range(sample_count))

    best: Optional[int] = None
    for k in ks:
        km = k_minus(k, 2)
        diff = as_rational(f(k)) - as_rational(f(km))
        if diff == 0:
            continue
        v = vp(2, diff) - vp(2, k - km)
        if best is None or v < best:
            best = v
    return best
