"""
Linear forms S_n and T_n in 1 and the values zeta_2(j, 1/4).

S_n is the Volkenborn integral of A_n^(s)(t + 1/4) and T_n that of
B_n^(s)(t + 1/4). Each is evaluated twice: once through the coefficients
rho/sigma and the Hurwitz values, once by integrating every partial-fraction
term at its shifted pole. Every report carries the agreement of the two.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from constants import LOGGER_NAME, get_tunable
from errors import ConstructionError, DomainError, NonStabilizingError, PrecisionError
from numcore import is_integral, lcm_upto, max_abs, phi_factor, vp, vq_factorial
from padic2 import BELOW_PRECISION, EXACT_ZERO, ScaledPadic2, Valuation2Result
from ratfun import (
    PartialFractionDecomp,
    Poly,
    RatFun,
    build_A,
    build_B,
    derivative,
    partial_fractions,
    principal_parts_check,
)
from utils.verdict import FAIL, INCONCLUSIVE, NOT_APPLICABLE, Verdict, verdict_from
from volkenborn import IntegrandSpec, integrate_decomposition, integrate_direct
from zeta import QUARTER, hurwitz_zeta2

logger = logging.getLogger(LOGGER_NAME)

S_KIND = "S"
T_KIND = "T"
KINDS = (S_KIND, T_KIND)


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise DomainError(f"kind must be one of {KINDS}, got {kind!r}")


def _check_params(n: int, s: int, delta: Optional[int]) -> None:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if s < 0:
        raise DomainError(f"s must be >= 0, got {s}")
    if delta is not None and delta not in (0, 1):
        raise DomainError(f"delta must be 0 or 1, got {delta}")


def top_index(kind: str, s: int) -> int:
    """Highest pole order of A_n (2s+4) or B_n (s+2)."""
    return 2 * s + 4 if kind == S_KIND else s + 2


def rising(i: int, k: int) -> int:
    """(i)_k = i (i+1) ... (i+k-1)."""
    return math.prod(range(i, i + k))


@lru_cache(maxsize=64)
def decomposition(kind: str, n: int, s: int, delta: int = 0) -> PartialFractionDecomp:
    """Partial fractions of A_n (kind S) or B_n (kind T); both have poles at t = -k, k <= n."""
    _check_kind(kind)
    f = build_A(n, s, delta) if kind == S_KIND else build_B(n, s)
    logger.debug(f"Decomposing {kind}-kind function at n={n}, s={s}, delta={delta}")
    return partial_fractions(f)


def decomposition_cross_check(kind: str, n: int, s: int, delta: int = 0) -> Verdict:
    """Check the factored partial fractions of A_n or B_n against sympy."""
    _check_kind(kind)
    f = build_A(n, s, delta) if kind == S_KIND else build_B(n, s)
    return principal_parts_check(f, decomposition(kind, n, s, delta))


def phi_gated(n: int, s: int) -> bool:
    """The Phi_n refinement is only established for odd n > (2s+4)^2."""
    return n % 2 == 1 and n > (2 * s + 4) ** 2


@dataclass
class LinearFormCoefficients:
    """rho_0, rho_i (kind S) or sigma_0, sigma_i (kind T).

    `rho` maps every i in [1, top] to its coefficient, zeros included.
    """

    n: int
    s: int
    delta: Optional[int]
    kind: str
    rho0: Fraction
    rho: Dict[int, Fraction] = field(default_factory=dict)

    @property
    def top(self) -> int:
        return top_index(self.kind, self.s)

    def zeta_argument(self, i: int) -> int:
        return i + self.s + 1

    def window_indices(self) -> List[int]:
        """Indices i >= 2 whose coefficient is not forced to vanish."""
        if self.kind == S_KIND:
            return [i for i in range(2, self.top + 1) if i % 2 == self.delta % 2]
        return list(range(2, self.top + 1))

    def scaling_factor(self) -> Fraction:
        return scaling_factor(self.kind, self.n, self.s)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "s": self.s,
            "delta": self.delta,
            "coefficient_0": self.rho0,
            "coefficients": {str(i): c for i, c in sorted(self.rho.items())},
        }


def scaling_factor(kind: str, n: int, s: int) -> Fraction:
    """Phi_n^-(s+2) d_n^(3s+5) for S, d_n^(2s+3) for T.

    Phi_n is left out of the S factor when phi_gated(n, s) is false.
    """
    d = lcm_upto(n)
    if kind == T_KIND:
        return Fraction(d ** (2 * s + 3))
    phi = phi_factor(n) if phi_gated(n, s) else 1
    return Fraction(d ** (3 * s + 5), phi ** (s + 2))


def _form_coefficients(kind: str, n: int, s: int, delta: int) -> LinearFormCoefficients:
    decomp = decomposition(kind, n, s, delta)
    top = top_index(kind, s)
    sign = (-1) ** s

    rho: Dict[int, Fraction] = {}
    for i in range(1, top + 1):
        total = sum((decomp.coefficient(i, k) for k in range(n + 1)), Fraction(0))
        rho[i] = sign * rising(i, s + 1) * 4 ** (i + s) * total

    # Suffix sums over k > l turn the triple sum into a double sum.
    rho0 = Fraction(0)
    for i in range(1, top + 1):
        suffix = Fraction(0)
        inner = Fraction(0)
        for l in range(n - 1, -1, -1):
            suffix += decomp.coefficient(i, l + 1)
            if suffix:
                inner += suffix / (l + QUARTER) ** (i + s + 1)
        rho0 += rising(i, s + 1) * inner
    rho0 *= -sign

    coeffs = LinearFormCoefficients(n, s, delta if kind == S_KIND else None, kind, rho0, rho)
    if rho[1] != 0:
        raise ConstructionError(f"{kind}-kind coefficient 1 is {rho[1]}, expected 0")
    if kind == S_KIND:
        for i in range(1, top + 1):
            if i % 2 != delta % 2 and rho[i] != 0:
                raise ConstructionError(f"coefficient {i} has forbidden parity but is {rho[i]}")
    return coeffs


def rho_coeffs(n: int, s: int, delta: int) -> LinearFormCoefficients:
    """rho_0 and rho_i, i in [1, 2s+4], from the partial fractions of A_n."""
    _check_params(n, s, delta)
    return _form_coefficients(S_KIND, n, s, delta)


def sigma_coeffs(n: int, s: int) -> LinearFormCoefficients:
    """sigma_0 and sigma_i, i in [1, s+2], from the partial fractions of B_n."""
    _check_params(n, s, None)
    return _form_coefficients(T_KIND, n, s, 0)


def form_coefficients(kind: str, n: int, s: int, delta: int = 0) -> LinearFormCoefficients:
    _check_kind(kind)
    return rho_coeffs(n, s, delta) if kind == S_KIND else sigma_coeffs(n, s)


def scaled_coefficients(coeffs: LinearFormCoefficients) -> List[Fraction]:
    """The scaled constant term followed by the scaled window coefficients."""
    c = coeffs.scaling_factor()
    return [c * coeffs.rho0] + [c * coeffs.rho[i] for i in coeffs.window_indices()]


def zeta_window(kind: str, s: int, delta: int = 0) -> Dict[str, object]:
    """Arguments j of zeta_2(j, 1/4) that may carry a nonzero coefficient."""
    _check_kind(kind)
    if kind == S_KIND:
        indices = [i for i in range(2, 2 * s + 5) if i % 2 == delta % 2]
    else:
        indices = list(range(2, s + 3))
    window = [i + s + 1 for i in indices]
    all_odd = all(j % 2 == 1 for j in window)
    return {
        "hurwitz": window,
        "kubota_leopoldt": window if all_odd else [],
        "names": [f"zeta_2({j})" if all_odd else f"zeta_2({j}, 1/4)" for j in window],
    }


def linear_form_value(coeffs: LinearFormCoefficients, A: int) -> ScaledPadic2:
    """rho_0 + sum_i rho_i zeta_2(i+s+1, 1/4), certified modulo 2^A."""
    total = ScaledPadic2.from_rational(coeffs.rho0, A)
    for i, c in sorted(coeffs.rho.items()):
        if c == 0:
            continue
        z = hurwitz_zeta2(coeffs.zeta_argument(i), QUARTER, max(A - vp(2, c), 1))
        total = total + z.value.scale(c)
    if not total.is_exact_zero and total.abs_precision < A:
        raise PrecisionError(
            f"{coeffs.kind}_{coeffs.n} certified only mod 2^{total.abs_precision}", required=A
        )
    return total


def shifted_derivative(kind: str, n: int, s: int, delta: int = 0) -> PartialFractionDecomp:
    """Partial fractions of A_n^(s)(t + 1/4) or B_n^(s)(t + 1/4), poles at k + 1/4."""
    return decomposition(kind, n, s, delta).derivative(s).translate(QUARTER)


def linear_form_value_direct_route(
    n: int, s: int, delta: int, A: int, kind: str = S_KIND
) -> ScaledPadic2:
    """(-1)^s sum (i)_s a_{i,k} * integral of (t + k + 1/4)^-(i+s), without translation."""
    _check_kind(kind)
    _check_params(n, s, delta if kind == S_KIND else None)
    result = integrate_decomposition(shifted_derivative(kind, n, s, delta), A)
    if not result.value.is_exact_zero and result.value.abs_precision < A:
        raise PrecisionError(
            f"direct route for {kind}_{n} certified only mod 2^{result.value.abs_precision}",
            required=A,
        )
    return result.value


def low_precision_direct_check(
    n: int, s: int, delta: int, M_max: int, kind: str = S_KIND
) -> Verdict:
    """Compare direct Volkenborn sums of the integrand with the series value."""
    _check_kind(kind)
    if n > 3 or s > 1:
        raise DomainError(f"direct check is limited to n <= 3 and s <= 1, got n={n}, s={s}")
    _check_params(n, s, delta if kind == S_KIND else None)
    anchor = "direct Volkenborn sums agree with the series value"
    decomp = shifted_derivative(kind, n, s, delta)
    integrand = IntegrandSpec.partial_fraction_sum(decomp)
    try:
        direct = integrate_direct(integrand, M_max)
    except NonStabilizingError as err:
        logger.warning(f"[!] Direct sums for {kind}_{n} did not stabilize by M = {M_max}")
        return Verdict("direct-check", anchor, INCONCLUSIVE, {"table": err.table})

    precision = direct.abs_precision
    if precision is None or precision <= 0:
        return Verdict(
            "direct-check",
            anchor,
            INCONCLUSIVE,
            {"reason": "no positive agreement", "table": direct.diagnostics.get("table")},
        )
    series = integrate_decomposition(decomp, precision + get_tunable("truncation_guard"))
    ok = series.value.congruent(direct.value, precision)
    return verdict_from(
        "direct-check",
        anchor,
        ok,
        kind=kind,
        n=n,
        s=s,
        delta=delta,
        heuristic_precision=precision,
        direct=direct.value.to_dict(),
        series=series.value.to_dict(),
    )


def predicted_valuation(kind: str, m: int, s: int) -> int:
    """Exact 2-adic valuation of the scaled form at n = 2^m - 1."""
    n = 2**m - 1
    if kind == S_KIND:
        return (10 * s + 20) * n + (s + 2) * m + 2 * s + vq_factorial(2, s + 2) + 2
    return (6 * s + 12) * n + s + vq_factorial(2, s + 2)


def mersenne_exponent(n: int) -> Optional[int]:
    """m >= 2 with n = 2^m - 1, else None."""
    m = (n + 1).bit_length() - 1
    return m if m >= 2 and n == 2**m - 1 else None


@dataclass
class LinearFormReport:
    coefficients: LinearFormCoefficients
    value: ScaledPadic2
    scaled_value: ScaledPadic2
    valuation: Valuation2Result
    predicted_valuation: Optional[int]
    integrality_verdicts: List[Verdict]
    certificate_quantity: Optional[Fraction]
    route_agreement: bool
    precision: int
    guard: int

    @property
    def kind(self) -> str:
        return self.coefficients.kind

    @property
    def n(self) -> int:
        return self.coefficients.n

    @property
    def guard_cleared(self) -> bool:
        """The valuation reading sits at least `guard` bits below the precision."""
        reading = self.valuation
        if not reading.is_exact:
            return reading.kind == EXACT_ZERO
        return reading.value + self.guard <= self.scaled_value.abs_precision

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "s": self.coefficients.s,
            "delta": self.coefficients.delta,
            "precision": self.precision,
            "guard": self.guard,
            "guard_cleared": self.guard_cleared,
            "value": self.value.to_dict(),
            "scaled_value": self.scaled_value.to_dict(),
            "valuation": self.valuation.to_dict(),
            "predicted_valuation": self.predicted_valuation,
            "route_agreement": self.route_agreement,
            "certificate_quantity": self.certificate_quantity,
            "coefficients": self.coefficients.to_dict(),
            "verdicts": [v.to_dict() for v in self.integrality_verdicts],
        }


def valuation_estimate(coeffs: LinearFormCoefficients) -> int:
    """Rough size of the scaled valuation for n not of the form 2^m - 1."""
    n, s = coeffs.n, coeffs.s
    if coeffs.kind == S_KIND:
        return (10 * s + 20) * n + (s + 2) * n.bit_length() + 2 * s + 4
    return (6 * s + 12) * n + s + 2


def _read_scaled_valuation(
    coeffs: LinearFormCoefficients, predicted: Optional[int], precision: Optional[int]
) -> Tuple[ScaledPadic2, ScaledPadic2, Valuation2Result, int, int]:
    """Evaluate the scaled form until its valuation reading clears the guard.

    With an explicit precision a single attempt is made. Otherwise the
    target starts at the expected valuation plus the guard, and the guard
    doubles on every below-precision reading.
    """
    expected = predicted if predicted is not None else valuation_estimate(coeffs)
    c = coeffs.scaling_factor()
    shift = vp(2, c)
    guard = get_tunable("valuation_guard")
    attempts = 1 if precision is not None else get_tunable("max_retries") + 1
    target = precision if precision is not None else expected + guard

    for attempt in range(attempts):
        A = max(target - shift, 1)
        value = linear_form_value(coeffs, A)
        scaled = value.scale(c)
        reading = scaled.valuation()
        if reading.kind == EXACT_ZERO:
            return value, scaled, reading, A, guard
        if reading.kind != BELOW_PRECISION and reading.value + guard <= scaled.abs_precision:
            return value, scaled, reading, A, guard
        if precision is not None:
            if reading.kind != BELOW_PRECISION:
                return value, scaled, reading, A, guard
            break
        logger.warning(
            f"[!] {coeffs.kind}_{coeffs.n} reading {reading.kind} at 2^{target}; "
            f"retry {attempt + 1} with guard {2 * guard}"
        )
        guard *= 2
        target = expected + guard
    raise PrecisionError(
        f"valuation of scaled {coeffs.kind}_{coeffs.n} not certified up to 2^{target}",
        required=target,
    )


def linear_form(
    kind: str, n: int, s: int, delta: int = 0, precision: Optional[int] = None
) -> LinearFormReport:
    """Compute S_n or T_n by both routes, read the scaled valuation and check integrality.

    `precision` is the absolute precision of the scaled form; by default it
    is chosen from the predicted valuation (n = 2^m - 1) or grown until the
    reading is certain.
    """
    _check_kind(kind)
    _check_params(n, s, delta if kind == S_KIND else None)
    coeffs = form_coefficients(kind, n, s, delta)
    m = mersenne_exponent(n)
    predicted = predicted_valuation(kind, m, s) if m is not None else None

    value, scaled, reading, A, guard = _read_scaled_valuation(coeffs, predicted, precision)
    direct = linear_form_value_direct_route(n, s, delta, A, kind)
    agree = value.congruent(direct, A)
    if not agree:
        logger.error(f"[✗] Routes disagree for {kind}_{n} modulo 2^{A}")

    quantity = None
    if reading.is_exact:
        quantity = max_abs(scaled_coefficients(coeffs)) / Fraction(2) ** reading.value
    logger.info(f"{kind}_{n} (s={s}, delta={delta}): scaled valuation {reading.value}")
    return LinearFormReport(
        coefficients=coeffs,
        value=value,
        scaled_value=scaled,
        valuation=reading,
        predicted_valuation=predicted,
        integrality_verdicts=_scaled_integrality(coeffs),
        certificate_quantity=quantity,
        route_agreement=agree,
        precision=A,
        guard=guard,
    )


def _scaled_integrality(coeffs: LinearFormCoefficients) -> List[Verdict]:
    scaled = scaled_coefficients(coeffs)
    bad = [str(q) for q in scaled if not is_integral(q)]
    return [
        verdict_from(
            "scaled-integrality",
            "every scaled coefficient has denominator 1",
            not bad,
            kind=coeffs.kind,
            n=coeffs.n,
            phi_applied=coeffs.kind == S_KIND and phi_gated(coeffs.n, coeffs.s),
            non_integral=bad,
        )
    ]


def valuation_verdict(
    report: LinearFormReport, anchor: str, routes_agree: bool = True, **details
) -> Verdict:
    """Compare the observed valuation with the prediction.

    A reading that sits within `guard` bits of the precision is reported as
    inconclusive, whatever it says.
    """
    reading = report.valuation
    details = {
        "observed": reading.value,
        "predicted": report.predicted_valuation,
        "abs_precision": report.scaled_value.abs_precision,
        "guard": report.guard,
        **details,
    }
    if not report.guard_cleared:
        logger.warning(
            f"[!] {report.kind}_{report.n}: valuation {reading.value} is not {report.guard} "
            f"bits below precision {report.scaled_value.abs_precision}"
        )
        return Verdict("valuation", anchor, INCONCLUSIVE, details)
    ok = routes_agree and reading.is_exact and reading.value == report.predicted_valuation
    return verdict_from("valuation", anchor, ok, **details)


def valuation_check(
    m: int, s: int, delta: int, kind: str = S_KIND, precision: Optional[int] = None
) -> Verdict:
    """Check the exact valuation of the scaled form at n = 2^m - 1 and its nonvanishing."""
    _check_kind(kind)
    if m < 2:
        raise DomainError(f"valuation check needs m >= 2, got {m}")
    n = 2**m - 1
    report = linear_form(kind, n, s, delta, precision)
    anchor = (
        "v2(Phi^-(s+2) d^(3s+5) S_n) = (10s+20)n + (s+2)m + 2s + v2((s+2)!) + 2"
        if kind == S_KIND
        else "v2(d^(2s+3) T_n) = (6s+12)n + s + v2((s+2)!)"
    )
    verdict = valuation_verdict(
        report,
        anchor,
        routes_agree=report.route_agreement,
        m=m,
        n=n,
        kind=kind,
        nonvanishing=report.valuation.kind != EXACT_ZERO,
        route_agreement=report.route_agreement,
    )
    if verdict.status == FAIL:
        verdict.details["report"] = report.to_dict()
        logger.error(f"[✗] Valuation mismatch for {kind}_{n}: {report.valuation.to_dict()}")
    return verdict


def integrality_report(n: int, s: int, delta: int) -> List[Verdict]:
    """Exact denominator checks on a, rho, b and sigma after scaling by d_n and Phi_n."""
    _check_params(n, s, delta)
    d = lcm_upto(n)
    gated = phi_gated(n, s)
    phi_power = Fraction(phi_factor(n)) ** (s + 2)
    a = decomposition(S_KIND, n, s, delta)
    b = decomposition(T_KIND, n, s)
    rho = rho_coeffs(n, s, delta)
    sigma = sigma_coeffs(n, s)
    top_a, top_b = 2 * s + 4, s + 2

    def coefficient_scan(decomp, top, extra=Fraction(1)):
        for (i, k), coef in decomp.terms.items():
            if not is_integral(extra * d ** (top - i) * coef):
                return False, {"i": i, "k": int(k), "value": coef}
        return True, {}

    def form_scan(coeffs, top, const_power, extra=Fraction(1)):
        for i, coef in coeffs.rho.items():
            if not is_integral(extra * d ** (top - i) * coef):
                return False, {"i": i, "value": coef}
        if not is_integral(extra * d**const_power * coeffs.rho0):
            return False, {"i": 0, "value": coeffs.rho0}
        return True, {}

    verdicts = []

    def add(name, anchor, result):
        ok, witness = result
        verdicts.append(verdict_from(name, anchor, ok, n=n, s=s, delta=delta, **witness))

    def add_gated(name, anchor, thunk):
        if not gated:
            verdicts.append(
                Verdict(name, anchor, NOT_APPLICABLE, {"n": n, "s": s, "needs": "odd n > (2s+4)^2"})
            )
            return
        add(name, anchor, thunk())

    inv_phi = 1 / phi_power
    add("a-integrality", "d^(2s+4-i) a_{n,i,k} in Z", coefficient_scan(a, top_a))
    add_gated(
        "a-phi-integrality",
        "Phi^-(s+2) d^(2s+4-i) a_{n,i,k} in Z",
        lambda: coefficient_scan(a, top_a, inv_phi),
    )
    add(
        "rho-integrality",
        "d^(2s+4-i) rho_i in Z and d^(3s+5) rho_0 in Z",
        form_scan(rho, top_a, 3 * s + 5),
    )
    add_gated(
        "rho-phi-integrality",
        "Phi^-(s+2) d^(2s+4-i) rho_i in Z and Phi^-(s+2) d^(3s+5) rho_0 in Z",
        lambda: form_scan(rho, top_a, 3 * s + 5, inv_phi),
    )
    add("b-integrality", "d^(s+2-i) b_{n,i,k} in Z", coefficient_scan(b, top_b))
    add(
        "sigma-integrality",
        "d^(s+2-i) sigma_i in Z and d^(2s+3) sigma_0 in Z",
        form_scan(sigma, top_b, 2 * s + 3),
    )
    return verdicts


def symmetry_report(n: int, s: int, delta: int) -> List[Verdict]:
    """Reflection symmetry of A_n and the vanishing it forces on a and rho."""
    _check_params(n, s, delta)
    f = build_A(n, s, delta)
    decomp = decomposition(S_KIND, n, s, delta)
    sign = (-1) ** delta
    top = 2 * s + 4
    verdicts = [
        verdict_from(
            "reflection-identity",
            "A_n(-t-n) = (-1)^delta A_n(t)",
            f.compose_affine(-1, -n) == f.scale(sign),
            n=n,
            s=s,
            delta=delta,
        )
    ]

    mismatch = None
    for i in range(1, top + 1):
        for k in range(n + 1):
            if (-1) ** i * decomp.coefficient(i, n - k) != sign * decomp.coefficient(i, k):
                mismatch = {"i": i, "k": k}
                break
        if mismatch:
            break
    verdicts.append(
        verdict_from(
            "coefficient-symmetry",
            "(-1)^i a_{n,i,n-k} = (-1)^delta a_{n,i,k}",
            mismatch is None,
            **(mismatch or {}),
        )
    )

    closed_bad = []
    for k in range(n + 1):
        numerator = Fraction(2) ** ((6 * s + 12) * n) * Fraction(2 * n - 4 * k) ** delta
        for j in range(n):
            numerator *= ((j - k + Fraction(1, 4)) * (j - k + Fraction(3, 4))) ** (s + 2)
        denominator = Fraction((-1) ** k * math.factorial(k) * math.factorial(n - k)) ** top
        if decomp.coefficient(top, k) != numerator / denominator:
            closed_bad.append(k)
    verdicts.append(
        verdict_from(
            "leading-coefficient",
            "a_{n,2s+4,k} = A_n(t)(t+k)^(2s+4) at t = -k",
            not closed_bad,
            failing_k=closed_bad,
        )
    )
    verdicts.append(
        verdict_from(
            "residue-sum",
            "sum_k a_{n,1,k} = 0",
            decomp.residue_sum() == 0,
            residue_sum=decomp.residue_sum(),
        )
    )
    rho = rho_coeffs(n, s, delta)
    forbidden = [i for i in range(1, top + 1) if i % 2 != delta % 2 and rho.rho[i] != 0]
    verdicts.append(
        verdict_from(
            "parity-vanishing",
            "rho_i = 0 for i = 1 and for i of the wrong parity",
            rho.rho[1] == 0 and not forbidden,
            nonzero=forbidden,
        )
    )
    return verdicts


@dataclass
class DecompositionTerm:
    """One Leibniz term f_index, with index = (i_1, ..., i_n, j) summing to s."""

    index: Tuple[int, ...]
    integral: ScaledPadic2
    valuation: Valuation2Result

    def to_dict(self) -> dict:
        return {
            "index": list(self.index),
            "integral": self.integral.to_dict(),
            "valuation": self.valuation.to_dict(),
        }


def leibniz_g(n: int, s: int, delta: int) -> RatFun:
    """g(t) = (4t+2n+1)^delta prod_{k<n} (2t+2k+1)^(s+2) / prod_{k<=n} (4t+4k+1)^(2s+4)."""
    exps: Dict[Fraction, int] = {}
    for k in range(n):
        exps[Fraction(2 * k + 1, 2)] = s + 2
    for k in range(n + 1):
        exps[Fraction(4 * k + 1, 4)] = -(2 * s + 4)
    if delta:
        exps[Fraction(2 * n + 1, 4)] = exps.get(Fraction(2 * n + 1, 4), 0) + 1
    constant = Fraction(4) ** delta * Fraction(2) ** (n * (s + 2))
    constant /= Fraction(4) ** ((n + 1) * (2 * s + 4))
    return RatFun.from_factors(constant, exps)


def leibniz_indices(n: int, s: int) -> List[Tuple[int, ...]]:
    """All (i_1, ..., i_n, j) of nonnegative integers summing to s."""
    return [idx for idx in itertools.product(range(s + 1), repeat=n + 1) if sum(idx) == s]


def leibniz_term(n: int, s: int, g: RatFun, index: Tuple[int, ...]) -> RatFun:
    """f_index = s! prod C(s+2, i_k) (t+k)^(s+2-i_k) * g^(j)(t) / j!."""
    *parts, j = index
    poly = Poly.constant(math.factorial(s))
    for k, i_k in enumerate(parts, start=1):
        poly = poly.scale(math.comb(s + 2, i_k)) * Poly.linear(k) ** (s + 2 - i_k)
    g_j = derivative(g, j) if j else RatFun(g.num, g.den)
    return RatFun(poly * g_j.num, g_j.den).scale(Fraction(1, math.factorial(j)))


def leibniz_base_valuation(m: int, s: int) -> int:
    n = 2**m - 1
    return (s + 2) * n - (2 * s + 3) * m + s + vq_factorial(2, s + 2) - 1


def leibniz_decomposition(
    m: int, s: int, delta: int, A: Optional[int] = None
) -> Tuple[List[DecompositionTerm], List[Verdict]]:
    """Integrate every Leibniz term of f^(s) and check that one index dominates.

    A_n(t + 1/4) = 2^((9s+18)n + 4s + 8) f(t) with f = prod_{k=1}^n (t+k)^(s+2) g(t).
    The special index has i_{2^(m-1)} = s; its integral has valuation exactly
    `leibniz_base_valuation(m, s)` and every other term exceeds it.
    """
    if m != 2 or s > 1:
        raise DomainError(f"Leibniz decomposition is limited to m = 2 and s <= 1, got m={m}, s={s}")
    _check_params(1, s, delta)
    n = 2**m - 1
    base = leibniz_base_valuation(m, s)
    A = A if A is not None else base + get_tunable("valuation_guard")
    g = leibniz_g(n, s, delta)
    special = tuple(s if k == 2 ** (m - 1) else 0 for k in range(1, n + 1)) + (0,)

    terms: List[DecompositionTerm] = []
    total = ScaledPadic2.exact_zero()
    for index in leibniz_indices(n, s):
        f_index = leibniz_term(n, s, g, index)
        poles = [
            (Fraction(4 * k + 1, 4), f_index.pole_multiplicity(Fraction(4 * k + 1, 4)))
            for k in range(n + 1)
        ]
        decomp = partial_fractions(f_index, [(c, e) for c, e in poles if e > 0])
        integral = integrate_decomposition(decomp, A).value
        if not integral.is_exact_zero and integral.abs_precision < A:
            raise PrecisionError(f"Leibniz term {index} known only mod 2^{integral.abs_precision}")
        terms.append(DecompositionTerm(index, integral, integral.valuation()))
        total = total + integral

    special_term = next(t for t in terms if t.index == special)
    others = [t for t in terms if t.index != special]
    verdicts = [
        verdict_from(
            "dominating-term",
            "v2(integral of the special term) = (s+2)n - (2s+3)m + s + v2((s+2)!) - 1",
            special_term.valuation.is_exact and special_term.valuation.value == base,
            index=list(special),
            observed=special_term.valuation.to_dict(),
            expected=base,
        ),
        verdict_from(
            "other-terms",
            "every other term has valuation >= base + 1",
            all(t.valuation.at_least(base + 1) for t in others),
            observed={str(list(t.index)): t.valuation.to_dict() for t in others},
        ),
    ]

    exponent = (9 * s + 18) * n + 4 * s + 8
    coeffs = rho_coeffs(n, s, delta)
    s_value = linear_form_value(coeffs, A + exponent)
    verdicts.append(
        verdict_from(
            "leibniz-sum",
            "S_n = 2^((9s+18)n + 4s + 8) * sum of the term integrals",
            s_value.congruent(total.scale(Fraction(2) ** exponent), A + exponent),
            precision=A + exponent,
        )
    )
    return terms, verdicts
