import math
import random
from fractions import Fraction

import pytest
import sympy

import constants
from errors import DomainError, ReassemblyError
from ratfun import (
    T,
    PartialFractionDecomp,
    Poly,
    RatFun,
    build_A,
    build_B,
    check_reassembly,
    derivative,
    lemma41_check,
    partial_fractions,
    pochhammer,
    principal_parts_check,
    sympy_principal_parts,
    taylor_at,
)
from utils.verdict import FAIL, PASS


def test_poly_arithmetic():
    p = Poly.linear(1) ** 2
    assert p == Poly([1, 2, 1])
    assert p.derivative() == Poly([2, 2])
    quot, rem = p.divmod(Poly.linear(1))
    assert quot == Poly([1, 1])
    assert rem.is_zero
    assert p.shift(-1) == Poly([0, 0, 1])
    assert p(Fraction(1, 2)) == Fraction(9, 4)


def test_pochhammer():
    assert pochhammer(Fraction(1, 4), 2) == Poly.linear(Fraction(1, 4)) * Poly.linear(
        Fraction(5, 4)
    )


def test_ratfun_is_reduced():
    f = RatFun(Poly([-1, 0, 1]), Poly([-1, 1]))
    assert f.num == Poly([1, 1])
    assert f.den == Poly([1])


def test_zero_denominator():
    with pytest.raises(DomainError):
        RatFun(Poly([1]), Poly())


def test_build_A_shape():
    f = build_A(1, 0, 0)
    assert f.deg == -4
    assert f.pole_multiplicity(0) == 4
    assert f.pole_multiplicity(1) == 4
    assert f.pole_multiplicity(2) == 0
    assert f.compose_affine(-1, -1) == f


def test_build_A_with_delta_is_odd_under_reflection():
    f = build_A(3, 1, 1)
    assert f.compose_affine(-1, -3) == f.scale(-1)


@pytest.mark.parametrize("n, s, delta", [(0, 0, 0), (1, -1, 0), (1, 0, 2)])
def test_build_A_rejects_bad_parameters(n, s, delta):
    with pytest.raises(DomainError):
        build_A(n, s, delta)


def test_build_B_degree():
    assert build_B(1, 0).deg == -2
    assert build_B(4, 2).deg == -4


def test_factored_and_dense_forms_agree():
    f = build_B(2, 0)
    dense = RatFun(f.num, f.den)
    assert dense == f
    assert dense(Fraction(1, 3)) == f(Fraction(1, 3))
    assert dense.pole_multiplicity(2) == 2


def test_derivative():
    assert derivative(RatFun.from_poly(Poly([0, 0, 1]))) == RatFun.from_poly(Poly([0, 2]))
    inverse = RatFun(Poly([1]), Poly([0, 1]))
    assert derivative(inverse, 2) == RatFun(Poly([2]), Poly([0, 0, 0, 1]))


def test_taylor_of_geometric_series():
    f = RatFun(Poly([1]), Poly([1, -1]))
    assert taylor_at(f, 0, 4) == [Fraction(1)] * 5


def test_taylor_at_a_pole():
    with pytest.raises(DomainError):
        taylor_at(build_B(1, 0), 0, 2)


def test_partial_fractions_of_A1():
    f = build_A(1, 0, 0)
    decomp = partial_fractions(f)
    assert decomp.max_order() == 4
    assert decomp.shifts() == [Fraction(0), Fraction(1)]
    assert decomp.coefficient(4, 0) == 144
    assert decomp.coefficient(4, 1) == 144
    assert decomp.residue_sum() == 0
    assert decomp.to_ratfun() == f
    for x in (Fraction(1, 3), Fraction(-5, 7), Fraction(11, 2)):
        assert decomp(x) == f(x)


def test_partial_fractions_of_a_dense_function():
    f = RatFun(Poly([3, 0, 1]), Poly.linear(2) ** 2 * Poly.linear(-1))
    decomp = partial_fractions(f, [(Fraction(2), 2), (Fraction(-1), 1)])
    assert decomp.to_ratfun() == f


def test_polynomial_part_is_kept():
    f = RatFun(Poly([2, 0, 0, 1]), Poly.linear(1))
    decomp = partial_fractions(f, [(Fraction(1), 1)])
    assert decomp.poly_part == Poly([1, -1, 1])
    assert decomp.coefficient(1, 1) == 1
    assert decomp.to_ratfun() == f


def test_incomplete_pole_list():
    with pytest.raises(DomainError):
        partial_fractions(build_B(1, 0), poles=[(Fraction(0), 2)])


def test_tampered_decomposition_fails_reassembly():
    f = build_B(1, 0)
    decomp = partial_fractions(f)
    decomp.terms[(2, Fraction(0))] += 1
    with pytest.raises(ReassemblyError):
        check_reassembly(f, decomp)


def test_large_denominators_are_checked_by_interpolation(monkeypatch):
    monkeypatch.setitem(constants.TUNABLES, "dense_check_max_degree", 0)
    f = build_B(2, 0)
    assert check_reassembly(f, partial_fractions(f, check=False)) == "interpolation"


def test_interpolation_catches_a_tampered_term(monkeypatch):
    monkeypatch.setitem(constants.TUNABLES, "dense_check_max_degree", 0)
    f = build_A(2, 0, 1)
    decomp = partial_fractions(f, check=False)
    key = (1, Fraction(2))
    decomp.terms[key] = decomp.terms.get(key, 0) + Fraction(1, 10**9)
    with pytest.raises(ReassemblyError):
        check_reassembly(f, decomp)


def test_interpolation_rejects_terms_outside_the_poles(monkeypatch):
    monkeypatch.setitem(constants.TUNABLES, "dense_check_max_degree", 0)
    f = build_B(1, 0)
    decomp = partial_fractions(f, check=False)
    decomp.terms[(1, Fraction(5))] = Fraction(1)
    with pytest.raises(ReassemblyError):
        check_reassembly(f, decomp)


@pytest.mark.parametrize(
    "f", [build_A(1, 0, 0), build_A(2, 0, 1), build_A(2, 1, 0), build_B(3, 1)]
)
def test_factored_route_matches_sympy(f):
    decomp = partial_fractions(f)
    assert sympy_principal_parts(f).terms == decomp.terms
    assert principal_parts_check(f, decomp).status == PASS


def test_sympy_check_flags_a_wrong_coefficient():
    f = build_B(2, 0)
    decomp = partial_fractions(f)
    decomp.terms[(2, Fraction(1))] = decomp.coefficient(2, 1) + 1
    verdict = principal_parts_check(f, decomp)
    assert verdict.status == FAIL
    assert verdict.details["mismatched"] == ["2@1"]
    assert not verdict.details["apart_agrees"]


def test_dense_route_matches_sympy_apart():
    f = RatFun(Poly([3, 0, 1]), Poly.linear(2) ** 2 * Poly.linear(-1))
    decomp = partial_fractions(f, [(Fraction(2), 2), (Fraction(-1), 1)])
    assert sympy.cancel(sympy.apart(f.as_expr(), T) - decomp.as_expr()) == 0
    assert sympy_principal_parts(f, [(Fraction(2), 2), (Fraction(-1), 1)]).terms == decomp.terms


@pytest.mark.parametrize("f", [build_B(2, 0), build_A(1, 0, 1)])
def test_taylor_matches_repeated_derivatives(f):
    rng = random.Random(7)
    dense = RatFun(f.num, f.den)
    for _ in range(5):
        c = Fraction(rng.randint(1, 200), rng.randint(1, 50))
        series = taylor_at(f, c, 4)
        assert taylor_at(dense, c, 4) == series
        for r, coef in enumerate(series):
            assert derivative(f, r)(c) == coef * math.factorial(r)


def test_decomposition_derivative_and_translate():
    c = Fraction(1, 4)
    d = PartialFractionDecomp(Poly([0, 1]), {(1, c): Fraction(3)})
    assert d.derivative(1).terms == {(2, c): Fraction(-3)}
    assert d.derivative(1).poly_part == Poly([1])
    shifted = d.translate(2)
    assert shifted.coefficient(1, c + 2) == 3
    assert shifted(Fraction(1, 3)) == d(Fraction(7, 3))


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_lemma41_check(n):
    assert lemma41_check(n, 6).status == PASS
