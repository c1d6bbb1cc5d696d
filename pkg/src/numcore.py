"""
Integer and rational combinatorics: valuations, factorials, lcm, the prime
factor Phi_n, digit sums, generalized binomials and Bernoulli numbers with a
persistent cache.

Bernoulli numbers use the B_1 = -1/2 convention, the one for which the
Volkenborn integral of t over Z_2 equals B_1.
"""

from __future__ import annotations

import bisect
import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from constants import LOGGER_NAME
from errors import CacheFormatError, DomainError
from utils.base import Loggable
from utils.file_utils import read_records, write_text_atomic
from utils.verdict import PASS, WARN, Verdict

Rational = Fraction

logger = logging.getLogger(LOGGER_NAME)


def as_rational(value) -> Fraction:
    """Return `value` as a reduced Fraction (accepts ints, Fractions and "p/q" strings)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        value = value.strip()
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise DomainError(f"not a rational number: {value!r}") from e


def _vp_int(q: int, a: int) -> int:
    a = abs(a)
    if q == 2:
        return (a & -a).bit_length() - 1
    v = 0
    while a % q == 0:
        a //= q
        v += 1
    return v


def vp(q: int, x) -> int:
    """Return the q-adic order of the nonzero rational x."""
    x = as_rational(x)
    if x == 0:
        raise DomainError("valuation of zero")
    return _vp_int(q, x.numerator) - _vp_int(q, x.denominator)


def vq_factorial(q: int, a: int) -> int:
    """Return v_q(a!) by Legendre's formula."""
    if a < 0:
        raise DomainError(f"factorial of negative integer {a}")
    total = 0
    power = q
    while power <= a:
        total += a // power
        power *= q
    return total


def sod2(a: int) -> int:
    """Return the binary digit sum of a."""
    if a < 0:
        raise DomainError(f"digit sum of negative integer {a}")
    return bin(a).count("1")


def k_minus(k: int, q: int = 2) -> int:
    """Return k with its leading base-q digit deleted."""
    if k < 1:
        raise DomainError(f"k_minus needs k >= 1, got {k}")
    power = 1
    while power * q <= k:
        power *= q
    return k % power


def binomial_general(a: int, i: int) -> int:
    """Return the generalized binomial coefficient C(a, i) for integer a."""
    if i < 0:
        raise DomainError(f"binomial index must be nonnegative, got {i}")
    if a >= 0:
        return math.comb(a, i)
    return (-1) ** i * math.comb(-a + i - 1, i)


def is_integral(x) -> bool:
    return as_rational(x).denominator == 1


def log2_abs(x) -> float:
    """Return log2|x| for a nonzero rational of any size."""
    x = as_rational(x)
    if x == 0:
        raise DomainError("log of zero")
    return math.log2(abs(x.numerator)) - math.log2(x.denominator)


def max_abs(values: Iterable) -> Fraction:
    return max((abs(as_rational(v)) for v in values), default=Fraction(0))


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to `limit`, ascending."""

    limit: int
    primes: Tuple[int, ...]

    @classmethod
    def sieve(cls, limit: int) -> "PrimeTable":
        if limit < 2:
            return cls(limit, ())
        flags = bytearray([1]) * (limit + 1)
        flags[0] = flags[1] = 0
        for p in range(2, math.isqrt(limit) + 1):
            if flags[p]:
                flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
        return cls(limit, tuple(i for i, flag in enumerate(flags) if flag))

    def upto(self, n: int) -> Tuple[int, ...]:
        """Return the primes <= n (n must not exceed the table limit)."""
        if n > self.limit:
            raise DomainError(f"prime table limit {self.limit} below {n}")
        return self.primes[: bisect.bisect_right(self.primes, n)]


_prime_lock = threading.Lock()
_prime_table: Optional[PrimeTable] = None


def prime_table(limit: int) -> PrimeTable:
    """Return a shared prime table covering at least `limit`."""
    global _prime_table
    with _prime_lock:
        if _prime_table is None or _prime_table.limit < limit:
            previous = _prime_table.limit if _prime_table else 0
            _prime_table = PrimeTable.sieve(max(limit, 2 * previous))
        return _prime_table


def primes_upto(n: int) -> Tuple[int, ...]:
    return prime_table(n).upto(n)


def _prime_power_below(p: int, n: int) -> int:
    """Return the largest exponent e with p**e <= n."""
    e = 0
    power = p
    while power <= n:
        e += 1
        power *= p
    return e


def lcm_upto(n: int) -> int:
    """Return d_n = lcm(1, ..., n)."""
    if n < 1:
        raise DomainError(f"lcm_upto needs n >= 1, got {n}")
    return math.prod(p ** _prime_power_below(p, n) for p in primes_upto(n))


def log_lcm_upto(n: int) -> float:
    """Return log d_n, the Chebyshev function psi(n)."""
    return sum(_prime_power_below(p, n) * math.log(p) for p in primes_upto(n))


def phi_primes(n: int) -> List[int]:
    """Return the primes q with 10n < q^2, q <= n and {n/q} > 1/2."""
    if n < 1:
        raise DomainError(f"phi_factor needs n >= 1, got {n}")
    return [q for q in primes_upto(n) if q * q > 10 * n and 2 * (n % q) > q]


def phi_factor(n: int) -> int:
    """Return Phi_n, the product of phi_primes(n)."""
    return math.prod(phi_primes(n))


def growth_diagnostics(n: int, lcm_tolerance: float = 0.1, phi_tolerance: float = 0.05):
    """Compare log(d_n)/n and log(Phi_n)/n with their limits 1 and 2 log 2 - 1.

    Deviations beyond the tolerances produce warnings, never failures.
    """
    lcm_ratio = log_lcm_upto(n) / n
    phi_ratio = sum(math.log(q) for q in phi_primes(n)) / n
    phi_limit = 2 * math.log(2) - 1

    verdicts = []
    for name, ratio, limit, tolerance in (
        ("lcm-growth", lcm_ratio, 1.0, lcm_tolerance),
        ("phi-growth", phi_ratio, phi_limit, phi_tolerance),
    ):
        deviation = abs(ratio - limit)
        status = PASS if deviation <= tolerance else WARN
        verdicts.append(
            Verdict(
                name,
                "log(d_n)/n -> 1" if name == "lcm-growth" else "log(Phi_n)/n -> 2 log 2 - 1",
                status,
                {
                    "n": n,
                    "ratio": f"{ratio:.6f}",
                    "limit": f"{limit:.6f}",
                    "deviation": f"{deviation:.6f}",
                    "tolerance": tolerance,
                },
            )
        )
        if status == WARN:
            logger.warning(f"[!] {name}: deviation {deviation:.4f} exceeds {tolerance} at n={n}")
    return verdicts


def _bernoulli_violation(index: int, value: Fraction) -> Optional[str]:
    """Return why `value` cannot be B_index, or None when it passes the structural checks."""
    if index == 0 and value != 1:
        return "B_0 must be 1"
    if index == 1 and value != Fraction(-1, 2):
        return "B_1 must be -1/2"
    if index >= 3 and index % 2 == 1 and value != 0:
        return f"B_{index} must vanish for odd index"
    if value != 0 and vp(2, value) < -1:
        return f"B_{index} has 2-adic valuation below -1"
    return None


class BernoulliCache(Loggable):
    """Bernoulli numbers computed by the defining recurrence and memoized.

    The recurrence is sum_{j=0}^{i} C(i+1, j) B_j = 0 for i >= 1. Readers may share
    an instance across threads; extension is serialized by an internal lock.
    """

    def __init__(self, values: Optional[List[Fraction]] = None):
        super().__init__()
        self._lock = threading.RLock()
        self._values: List[Fraction] = list(values) if values else [Fraction(1)]

    @property
    def highest_index(self) -> int:
        return len(self._values) - 1

    def __len__(self):
        return len(self._values)

    def extend_to(self, index: int) -> int:
        """Make sure B_0..B_index are available; return how many values were added."""
        if index < 0:
            raise DomainError(f"Bernoulli index must be nonnegative, got {index}")
        with self._lock:
            start = len(self._values)
            values = self._values
            for i in range(start, index + 1):
                total = Fraction(0)
                for j in range(i):
                    if values[j]:
                        total += math.comb(i + 1, j) * values[j]
                values.append(-total / (i + 1))
            added = max(0, index + 1 - start)
        if added:
            self.logger.debug(f"Bernoulli cache extended to index {index} (+{added})")
        return added

    def get(self, index: int) -> Fraction:
        if index >= len(self._values):
            self.extend_to(index)
        return self._values[index]

    def values(self, upto: int) -> List[Fraction]:
        self.extend_to(upto)
        return self._values[: upto + 1]

    @classmethod
    def load(cls, path: str) -> "BernoulliCache":
        """Read a cache file of `<index>\\t<num>/<den>` lines and validate it.

        A missing file gives a fresh cache.
        """
        values: List[Fraction] = []
        for line_no, fields in read_records(path):
            if len(fields) != 2:
                raise CacheFormatError(path, line_no, "expected '<index><TAB><num>/<den>'")
            try:
                index = int(fields[0])
                num, den = fields[1].split("/")
                value = Fraction(int(num), int(den))
            except (ValueError, ZeroDivisionError):
                raise CacheFormatError(path, line_no, f"unparsable record {fields!r}")
            if int(den) <= 0:
                raise CacheFormatError(path, line_no, "denominator must be positive")
            if index != len(values):
                raise CacheFormatError(
                    path, line_no, f"expected index {len(values)}, found {index}"
                )
            reason = _bernoulli_violation(index, value)
            if reason:
                raise CacheFormatError(path, line_no, reason)
            values.append(value)
        cache = cls(values)
        cache.logger.debug(f"Loaded {len(values)} Bernoulli numbers from {path}")
        return cache

    def save(self, path: str) -> None:
        with self._lock:
            lines = [
                f"{i}\t{value.numerator}/{value.denominator}\n"
                for i, value in enumerate(self._values)
            ]
        write_text_atomic(path, "".join(lines))
        self.logger.info(f"Saved {len(lines)} Bernoulli numbers to {path}")


_default_cache = BernoulliCache()


def default_bernoulli_cache() -> BernoulliCache:
    return _default_cache


def set_default_bernoulli_cache(cache: BernoulliCache) -> None:
    """Install `cache` as the cache behind bernoulli()."""
    global _default_cache
    _default_cache = cache


def bernoulli(i: int) -> Fraction:
    """Return B_i with B_1 = -1/2."""
    if i < 0:
        raise DomainError(f"Bernoulli index must be nonnegative, got {i}")
    return _default_cache.get(i)
