from fractions import Fraction

import pytest

from errors import CacheFormatError, DomainError
from utils.verdict import PASS
from zeta import QUARTER, GoldenStore, hurwitz_zeta2, reflection_check, zeta2_at


def test_hurwitz_value_reaches_the_requested_precision():
    value = hurwitz_zeta2(3, QUARTER, 64)
    assert value.abs_precision >= 64
    data = value.to_dict()
    assert data["j"] == 3
    assert data["x"] == "1/4"
    assert data["residue_hex"].startswith("0x")


def test_hurwitz_values_are_deterministic():
    assert hurwitz_zeta2(5, Fraction(3, 4), 96).to_dict() == hurwitz_zeta2(
        5, Fraction(3, 4), 96
    ).to_dict()


def test_lower_precision_is_a_truncation():
    high = hurwitz_zeta2(4, Fraction(5, 8), 80).value
    low = hurwitz_zeta2(4, Fraction(5, 8), 40).value
    assert high.congruent(low, 40)


@pytest.mark.parametrize(
    "j, x",
    [(3, Fraction(1, 3)), (3, Fraction(1, 2)), (1, QUARTER), (3, Fraction(0))],
)
def test_hurwitz_domain(j, x):
    with pytest.raises(DomainError):
        hurwitz_zeta2(j, x, 32)


@pytest.mark.parametrize("j", range(2, 13))
def test_reflection(j):
    assert reflection_check(j, QUARTER, 128).status == PASS


@pytest.mark.parametrize("x", [Fraction(1, 8), Fraction(-3, 4), Fraction(7, 16)])
def test_reflection_at_other_points(x):
    assert reflection_check(3, x, 64).status == PASS


def test_kubota_leopoldt_value_is_half_the_hurwitz_value():
    z = zeta2_at(7, 128)
    assert z.x is None
    doubled = z.value.scale(2)
    assert doubled.congruent(hurwitz_zeta2(7, QUARTER, 128).value, 128)


@pytest.mark.parametrize("j", [1, 2, 4, 10])
def test_vanishing_branch_is_rejected(j):
    with pytest.raises(DomainError):
        zeta2_at(j, 64)


def test_golden_store_records_then_matches(tmp_path):
    path = str(tmp_path / "golden.txt")
    value = hurwitz_zeta2(3, QUARTER, 64)
    assert GoldenStore(path).check_or_record(value, 64) == "recorded"
    assert GoldenStore(path).check_or_record(value, 64) == "match"


def test_golden_store_reports_mismatch(tmp_path):
    path = tmp_path / "golden.txt"
    path.write_text("3 1/4 64 0x1 0\n")
    assert GoldenStore(str(path)).check_or_record(hurwitz_zeta2(3, QUARTER, 64), 64) == "mismatch"


def test_golden_store_rejects_malformed_lines(tmp_path):
    path = tmp_path / "golden.txt"
    path.write_text("3 1/4 64 0x1 0\n3 1/4 zz\n")
    with pytest.raises(CacheFormatError) as err:
        GoldenStore(str(path))
    assert err.value.line_no == 2


def test_golden_store_keeps_hurwitz_values_only(tmp_path):
    with pytest.raises(DomainError):
        GoldenStore(str(tmp_path / "golden.txt")).check_or_record(zeta2_at(3, 32), 32)


@pytest.mark.parametrize("j", range(2, 13))
def test_reflection_at_minus_a_quarter(j):
    verdict = reflection_check(j, Fraction(-1, 4), 128)
    assert verdict.status == PASS
    assert verdict.details["precision"] == 128
