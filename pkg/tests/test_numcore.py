import math
from fractions import Fraction

import pytest

from errors import CacheFormatError, DomainError
from numcore import (
    BernoulliCache,
    binomial_general,
    growth_diagnostics,
    is_integral,
    k_minus,
    lcm_upto,
    log2_abs,
    max_abs,
    phi_factor,
    phi_primes,
    primes_upto,
    sod2,
    vp,
    vq_factorial,
)
from utils.verdict import PASS


@pytest.mark.parametrize(
    "q, x, expected",
    [
        (2, 12, 2),
        (2, Fraction(3, 8), -3),
        (2, -7, 0),
        (3, 18, 2),
        (5, Fraction(2, 125), -3),
    ],
)
def test_vp(q, x, expected):
    assert vp(q, x) == expected


def test_vp_of_zero_is_a_domain_error():
    with pytest.raises(DomainError):
        vp(2, 0)


@pytest.mark.parametrize("q, a, expected", [(2, 0, 0), (2, 10, 8), (3, 10, 4), (2, 1023, 1013)])
def test_vq_factorial(q, a, expected):
    assert vq_factorial(q, a) == expected


def test_vq_factorial_matches_direct_count():
    for a in range(60):
        assert vq_factorial(2, a) == vp(2, math.factorial(a))


def test_legendre_digit_sum_identity():
    for a in range(1, 300):
        assert vq_factorial(2, a) == a - sod2(a)


@pytest.mark.parametrize("k, expected", [(1, 0), (5, 1), (8, 0), (13, 5), (255, 127)])
def test_k_minus_drops_the_leading_digit(k, expected):
    assert k_minus(k) == expected


@pytest.mark.parametrize("a, i, expected", [(5, 2, 10), (-3, 2, 6), (-1, 5, -1), (2, 3, 0)])
def test_binomial_general(a, i, expected):
    assert binomial_general(a, i) == expected


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 2), (10, 2520), (15, 360360)])
def test_lcm_upto(n, expected):
    assert lcm_upto(n) == expected


def test_lcm_upto_agrees_with_math_lcm():
    assert lcm_upto(40) == math.lcm(*range(1, 41))


def test_primes_upto():
    assert primes_upto(30) == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def test_phi_primes_at_100():
    assert phi_primes(100) == [37, 53, 59, 61]
    assert phi_factor(100) == 37 * 53 * 59 * 61


def test_phi_factor_is_empty_product_for_small_n():
    assert phi_factor(7) == 1


def test_magnitude_helpers():
    assert is_integral(Fraction(6, 3))
    assert not is_integral(Fraction(1, 3))
    assert log2_abs(Fraction(-1, 8)) == -3.0
    assert max_abs([-3, 2, Fraction(5, 2)]) == 3


@pytest.mark.parametrize(
    "index, expected",
    [
        (0, Fraction(1)),
        (1, Fraction(-1, 2)),
        (2, Fraction(1, 6)),
        (3, Fraction(0)),
        (4, Fraction(-1, 30)),
        (6, Fraction(1, 42)),
        (12, Fraction(-691, 2730)),
    ],
)
def test_bernoulli_values(index, expected):
    assert BernoulliCache().get(index) == expected


def test_bernoulli_two_adic_denominators():
    cache = BernoulliCache()
    for value in cache.values(60):
        if value:
            assert vp(2, value) >= -1


def test_extend_to_is_idempotent():
    cache = BernoulliCache()
    assert cache.extend_to(10) == 10
    assert cache.extend_to(10) == 0
    assert len(cache) == 11
    assert cache.highest_index == 10


def test_cache_round_trip(tmp_path):
    path = tmp_path / "bernoulli.tsv"
    cache = BernoulliCache()
    cache.extend_to(30)
    cache.save(str(path))

    loaded = BernoulliCache.load(str(path))
    assert len(loaded) == 31
    assert loaded.get(30) == cache.get(30)


def test_missing_cache_file_gives_a_fresh_cache(tmp_path):
    cache = BernoulliCache.load(str(tmp_path / "absent.tsv"))
    assert len(cache) == 1


@pytest.mark.parametrize(
    "content, line_no",
    [
        ("0\t1/1\n1\t1/2\n", 2),
        ("0\t1/1\nfoo\n", 2),
        ("0\t1/1\n1\t-1/2\n3\t0/1\n", 3),
        ("0\t1/1\n1\t-1/2\n2\t1/6\n3\t1/5\n", 4),
    ],
)
def test_corrupt_cache_names_the_line(tmp_path, content, line_no):
    path = tmp_path / "bernoulli.tsv"
    path.write_text(content)
    with pytest.raises(CacheFormatError) as err:
        BernoulliCache.load(str(path))
    assert err.value.line_no == line_no
    assert f":{line_no}:" in str(err.value)


def test_growth_diagnostics_at_large_n():
    verdicts = growth_diagnostics(100000)
    assert [v.name for v in verdicts] == ["lcm-growth", "phi-growth"]
    assert all(v.status == PASS for v in verdicts)


@pytest.mark.slow
def test_bernoulli_recurrence_and_denominators_up_to_400():
    values = BernoulliCache().values(400)
    for i in range(1, 401):
        assert sum(math.comb(i + 1, j) * values[j] for j in range(i + 1)) == 0
    for i, value in enumerate(values):
        if value:
            assert vp(2, value) >= -1
        if i >= 2 and i % 2 == 0:
            assert vp(2, value) == -1


def test_digit_sum_and_leading_digit_sweep():
    for a in range(1, 1 << 16):
        top = 1 << (a.bit_length() - 1)
        assert k_minus(a) == a - top
        assert sod2(a) == sod2(k_minus(a)) + 1
        assert sod2(a) == bin(a).count("1")
    assert k_minus(3**40) == 3**40 - (1 << ((3**40).bit_length() - 1))


@pytest.mark.slow
def test_lcm_upto_agrees_with_iterated_lcm_up_to_10000():
    running = 1
    for n in range(1, 10001):
        running = math.lcm(running, n)
        if n <= 500 or n % 101 == 0 or n == 10000:
            assert lcm_upto(n) == running
            assert vp(2, running) == n.bit_length() - 1


@pytest.mark.slow
def test_phi_divides_lcm_up_to_1000():
    for n in range(1, 1001):
        assert lcm_upto(n) % phi_factor(n) == 0
