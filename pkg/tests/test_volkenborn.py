from fractions import Fraction

import pytest

from errors import DomainError, NonStabilizingError
from numcore import bernoulli, binomial_general, vp
from padic2 import ScaledPadic2
from ratfun import PartialFractionDecomp, Poly
from utils.verdict import PASS
from volkenborn import (
    IntegrandSpec,
    delta_probe,
    direct_sum,
    integrate,
    integrate_decomposition,
    integrate_direct,
    integrate_polynomial,
    integrate_series,
    series_truncation_index,
    translate_check,
)

QUARTER = Fraction(1, 4)


@pytest.mark.parametrize("i", range(0, 51))
def test_integral_of_monomial_is_bernoulli(i):
    monomial = Poly([0] * i + [1])
    assert integrate_polynomial(monomial) == bernoulli(i)


def test_polynomial_integrand_is_exact():
    result = integrate(IntegrandSpec.polynomial(Poly([1, 1])), 32)
    assert result.exact
    assert result.approximation == Fraction(1, 2)


def test_direct_sum():
    assert direct_sum(IntegrandSpec.polynomial(Poly([0, 1])), 3) == Fraction(7, 2)


def test_direct_integration_of_t_converges_to_b1():
    result = integrate_direct(IntegrandSpec.polynomial(Poly([0, 1])), 12)
    assert result.heuristic
    assert result.abs_precision == 9
    assert result.value.congruent(ScaledPadic2.from_rational(Fraction(-1, 2), 9), 9)


def test_direct_integration_of_a_constant_is_exact():
    result = integrate_direct(IntegrandSpec.polynomial(Poly([5])), 6)
    assert result.exact
    assert result.approximation == 5


def test_direct_integration_detects_non_stabilization():
    spec = IntegrandSpec.from_callable(lambda k: Fraction(1, 2**k), label="2^-k")
    with pytest.raises(NonStabilizingError) as err:
        integrate_direct(spec, 6)
    assert err.value.table


def test_direct_and_series_routes_agree_on_an_inverse_power():
    spec = IntegrandSpec.inverse_power(QUARTER, 1)
    direct = integrate_direct(spec, 10)
    assert direct.abs_precision > 0
    series = integrate_series(QUARTER, 1, direct.abs_precision + 8)
    assert series.value.congruent(direct.value, direct.abs_precision)


def test_series_reaches_the_requested_precision():
    result = integrate_series(Fraction(3, 8), 2, 50)
    assert result.abs_precision == 50
    assert result.value.abs_precision >= 50
    assert result.diagnostics["truncation_index"] == series_truncation_index(
        Fraction(3, 8), 2, 50
    )


@pytest.mark.parametrize("x", [Fraction(1, 2), Fraction(3), Fraction(0)])
def test_inverse_power_outside_the_hurwitz_domain(x):
    with pytest.raises(DomainError):
        IntegrandSpec.inverse_power(x, 2)


def test_decomposition_integral_is_linear():
    d = PartialFractionDecomp(
        Poly([1]), {(2, QUARTER): Fraction(3), (1, Fraction(5, 4)): Fraction(-2)}
    )
    total = integrate_decomposition(d, 40).value
    expected = (
        ScaledPadic2.from_rational(1, 40)
        + integrate_series(QUARTER, 2, 40).value.scale(3)
        + integrate_series(Fraction(5, 4), 1, 41).value.scale(-2)
    )
    assert total.congruent(expected, 40)


@pytest.mark.parametrize("j", range(1, 5))
@pytest.mark.parametrize("k", range(1, 5))
def test_translation_formula(j, k):
    assert translate_check(IntegrandSpec.inverse_power(QUARTER, j), k, 40).status == PASS


def test_translation_formula_for_a_polynomial():
    verdict = translate_check(IntegrandSpec.polynomial(Poly([1, -2, 0, 3])), 5, 40)
    assert verdict.status == PASS
    assert verdict.details["exact"]


def test_delta_probe_of_the_identity():
    assert delta_probe(lambda k: Fraction(k), 3, 16, 512) == 0


def test_delta_probe_of_a_constant_is_none():
    assert delta_probe(lambda k: Fraction(7), 2, 16, 512) is None


def test_delta_probe_cap_below_range():
    with pytest.raises(DomainError):
        delta_probe(lambda k: Fraction(k), 10, 4, 100)


def _series_partial_sum(x, j, last):
    return sum(
        (binomial_general(-j, i) * bernoulli(i) * x ** (-j - i) for i in range(last + 1)),
        Fraction(0),
    )


@pytest.mark.parametrize("x", [QUARTER, Fraction(3, 4), Fraction(-1, 4), Fraction(5, 8)])
@pytest.mark.parametrize("j", [1, 2, 5])
@pytest.mark.parametrize("A", [32, 96])
def test_truncation_tail_is_below_the_precision(x, j, A):
    I = series_truncation_index(x, j, A)
    tail = _series_partial_sum(x, j, I + 10) - _series_partial_sum(x, j, I)
    assert tail == 0 or vp(2, tail) >= A
    assert integrate_series(x, j, A).approximation == _series_partial_sum(x, j, I)


@pytest.mark.slow
@pytest.mark.parametrize("x", [QUARTER, Fraction(3, 4)])
@pytest.mark.parametrize("j", range(1, 5))
def test_direct_and_series_agree_for_small_powers(x, j):
    direct = integrate_direct(IntegrandSpec.inverse_power(x, j), 12)
    assert direct.abs_precision > 0
    series = integrate_series(x, j, direct.abs_precision + 8)
    assert series.value.congruent(direct.value, direct.abs_precision)
