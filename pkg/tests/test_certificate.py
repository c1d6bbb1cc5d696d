import math
import re

import pytest

from certificate import CertificateBuilder, certificate, rate_constant
from errors import DomainError
from linforms import S_KIND, T_KIND
from utils.verdict import PASS


@pytest.mark.parametrize("kind", [S_KIND, T_KIND])
@pytest.mark.parametrize("s", [0, 1, 2])
def test_rate_constant_is_negative_for_small_s(kind, s):
    assert rate_constant(kind, s) < 0


def test_rate_constant_values():
    ln2 = math.log(2)
    assert rate_constant(S_KIND, 0) == pytest.approx((7 - 12 * ln2) / ln2)
    assert rate_constant(T_KIND, 1) == pytest.approx((5 - 9 * ln2) / ln2)


def test_builder_validates_parameters():
    with pytest.raises(DomainError):
        CertificateBuilder(0, 2)
    with pytest.raises(DomainError):
        CertificateBuilder(0, 0).row(1)
    with pytest.raises(DomainError):
        CertificateBuilder(0, 0).build([])


def test_single_row_t_certificate():
    report = certificate(0, 0, [2], T_KIND)
    assert report.passed
    assert report.window["hurwitz"] == [3]
    assert report.delta is None

    (row,) = report.rows
    assert row.n == 3
    assert row.form_valuation == 37
    assert row.predicted_valuation == 37
    assert all(v.status == PASS for v in row.verdicts)

    data = report.to_dict()
    assert data["zeta_window"] == [3]
    assert data["zeta_names"] == ["zeta_2(3)"]
    assert data["decay"]["status"] == PASS
    assert "zeta_2(3)" in data["conclusion"]
    row_data = data["rows"][0]
    assert re.fullmatch(r"-?\d+\.\d{6}", row_data["mu_log2"])
    assert all(isinstance(c, str) for c in row_data["scaled_coefficients"])
    assert row_data["verdicts"]["valuation"] == PASS


def test_rows_are_sorted_and_deduplicated():
    report = certificate(0, 0, [2, 2], T_KIND)
    assert [row.m for row in report.rows] == [2]


@pytest.mark.slow
@pytest.mark.parametrize("s, delta, kind", [(0, 1, S_KIND), (0, 0, T_KIND), (0, 0, S_KIND)])
def test_mu_decreases(s, delta, kind):
    report = certificate(s, delta, [2, 3, 4], kind)
    assert report.passed
    assert report.decay.status == PASS
    assert all(row.mu_log2 / row.n < 0 for row in report.rows)


@pytest.mark.slow
def test_certificate_for_the_odd_window():
    report = certificate(3, 1, [2, 3], S_KIND)
    assert report.to_dict()["zeta_window"] == [7, 9, 11, 13]
    assert all(row.passed for row in report.rows)
