"""
Exhaustive sweeps of the finite combinatorial facts the valuation and
integrality arguments rest on, plus the explicit archimedean coefficient bounds.
"""

import logging
import math
from fractions import Fraction
from typing import List

from constants import LOGGER_NAME
from errors import DomainError
from linforms import S_KIND, T_KIND, decomposition, form_coefficients
from numcore import binomial_general, max_abs, vq_factorial
from utils.verdict import Verdict, verdict_from
from volkenborn import delta_probe

logger = logging.getLogger(LOGGER_NAME)


def _check_m_max(m_max: int) -> None:
    if m_max < 2:
        raise DomainError(f"m_max must be >= 2, got {m_max}")


def lemma51_check(m_max: int) -> Verdict:
    """v2((k-1)!(n-k)!) >= v2((k0-1)!(n-k0)!) + 1 for n = 2^m - 1, k0 = 2^(m-1), k != k0."""
    _check_m_max(m_max)
    anchor = "v2((k-1)!(n-k)!) >= v2((k0-1)!(n-k0)!) + 1 for k != k0"
    for m in range(2, m_max + 1):
        n = 2**m - 1
        k0 = 2 ** (m - 1)
        base = vq_factorial(2, k0 - 1) + vq_factorial(2, n - k0)
        if base != n - 2 * m + 1:
            return verdict_from("lemma51", anchor, False, m=m, base=base, expected=n - 2 * m + 1)
        for k in range(1, n + 1):
            if k == k0:
                continue
            v = vq_factorial(2, k - 1) + vq_factorial(2, n - k)
            if v < base + 1:
                return verdict_from("lemma51", anchor, False, m=m, k=k, valuation=v, base=base)
    logger.debug(f"Factorial valuation sweep clean up to m = {m_max}")
    return verdict_from("lemma51", anchor, True, m_max=m_max)


def kummer_parity_check(m_max: int) -> Verdict:
    """C(k + 2^m - 1, 2^m - 1) is even for 1 <= k <= 2^m - 1."""
    _check_m_max(m_max)
    anchor = "C(k + 2^m - 1, 2^m - 1) is even for 1 <= k <= 2^m - 1"
    for m in range(2, m_max + 1):
        top = 2**m - 1
        for k in range(1, top + 1):
            # Legendre: v2 C(a, b) = v2(a!) - v2(b!) - v2((a-b)!)
            v = vq_factorial(2, k + top) - vq_factorial(2, top) - vq_factorial(2, k)
            if v < 1:
                return verdict_from(
                    "kummer", anchor, False, m=m, k=k, binomial=math.comb(k + top, top)
                )
    return verdict_from("kummer", anchor, True, m_max=m_max)


def floor_expression(a: int, b: int, denominator: int) -> int:
    """The floor expression at x = a/D, y = b/D, in integer arithmetic."""
    D = denominator
    return (
        (4 * b) // D
        + (4 * a - 4 * b) // D
        - (2 * b) // D
        - (2 * a - 2 * b) // D
        - 2 * (b // D)
        - 2 * ((a - b) // D)
    )


def floor_inequality_check(denominator: int = 1000) -> Verdict:
    """Sweep x = a/D in (1/2, 1) and y = b/D in [0, 1) for the floor expression >= 1."""
    if denominator < 3:
        raise DomainError(f"denominator must be >= 3, got {denominator}")
    anchor = "floor(4y)+floor(4x-4y)-floor(2y)-floor(2x-2y)-2floor(y)-2floor(x-y) >= 1"
    checked = 0
    for a in range(denominator // 2 + 1, denominator):
        for b in range(denominator):
            checked += 1
            if floor_expression(a, b, denominator) < 1:
                return verdict_from(
                    "floor",
                    anchor,
                    False,
                    x=f"{a}/{denominator}",
                    y=f"{b}/{denominator}",
                    value=floor_expression(a, b, denominator),
                )
    return verdict_from("floor", anchor, True, denominator=denominator, points=checked)


def coefficient_bound(kind: str, n: int, s: int) -> int:
    """Explicit bound on max |a_{n,i,k}| (S) or max |b_{n,i,k}| (T)."""
    if kind == S_KIND:
        return 2 ** ((6 * s + 12) * n) * (10 * n) * (100 * n * n) ** (2 * s + 4)
    return 2 ** ((3 * s + 6) * n) * (100 * n * n) ** (s + 2)


def form_bound_factor(kind: str, n: int, s: int) -> int:
    """Factor relating max |rho| (or |sigma|) to max |a| (or |b|)."""
    w = 3 * s + 5 if kind == S_KIND else 2 * s + 3
    return math.factorial(w) * 4**w * (n + 1) ** 2


def archimedean_bound_check(n: int, s: int, delta: int = 0, kind: str = S_KIND) -> Verdict:
    """Compare exact coefficient magnitudes with their explicit finite-n bounds."""
    if kind not in (S_KIND, T_KIND):
        raise DomainError(f"kind must be S or T, got {kind!r}")
    if n < 1 or n > 15:
        raise DomainError(f"archimedean bound check needs 1 <= n <= 15, got {n}")
    decomp = decomposition(kind, n, s, delta if kind == S_KIND else 0)
    coeffs = form_coefficients(kind, n, s, delta)
    largest = max_abs(decomp.terms.values())
    largest_form = max_abs([coeffs.rho0, *coeffs.rho.values()])
    bound = coefficient_bound(kind, n, s)
    form_bound = form_bound_factor(kind, n, s) * largest

    anchor = (
        "max|a| <= 2^((6s+12)n)(10n)(100n^2)^(2s+4), max|rho| <= (3s+5)! 4^(3s+5)(n+1)^2 max|a|"
        if kind == S_KIND
        else "max|b| <= 2^((3s+6)n)(100n^2)^(s+2), max|sigma| <= (2s+3)! 4^(2s+3)(n+1)^2 max|b|"
    )
    ok = largest <= bound and largest_form <= form_bound
    if not ok:
        logger.error(f"[✗] Archimedean bound violated for {kind}_{n} (s={s}, delta={delta})")
    return verdict_from(
        "archimedean",
        anchor,
        ok,
        kind=kind,
        n=n,
        s=s,
        delta=delta,
        max_coefficient=largest,
        coefficient_bound=bound,
        max_form_coefficient=largest_form,
        form_bound=form_bound,
    )


def delta_probe_check(
    n: int, j: int, m: int, sample_count: int = 64, k_cap: int = 4096, seed: int = 0
) -> List[Verdict]:
    """Probe the difference-quotient bounds for f = C(t + j, n), n! f and f^2."""
    if n < 1:
        raise DomainError(f"binomial degree must be >= 1, got {n}")
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    log_n = n.bit_length() - 1

    def f(k: int) -> Fraction:
        return Fraction(binomial_general(k + j, n))

    def f_squared(k: int) -> Fraction:
        return f(k) ** 2

    def falling_factorial(k: int) -> Fraction:
        return Fraction(math.prod(range(k + j - n + 1, k + j + 1)))

    probes = [
        ("binomial", f, -log_n, "Delta_m(C(t+j, n)) >= -floor(log2 n)"),
        (
            "falling-factorial",
            falling_factorial,
            0,
            "Delta_m(n! C(t+j, n)) >= 0 for integer coefficients",
        ),
    ]
    if m > log_n:
        probes.append(
            ("binomial-squared", f_squared, -log_n + 1, "Delta_m(f^2) >= -floor(log2 n) + 1")
        )

    verdicts = []
    for name, func, bound, anchor in probes:
        witness = delta_probe(func, m, sample_count, k_cap, seed)
        verdicts.append(
            verdict_from(
                f"delta-probe-{name}",
                anchor,
                witness is None or witness >= bound,
                n=n,
                j=j,
                m=m,
                witness=witness,
                bound=bound,
            )
        )
    return verdicts
