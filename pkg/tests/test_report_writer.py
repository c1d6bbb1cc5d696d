import csv
import json
from fractions import Fraction

import pytest

from report_writer import render, table_rows, write_row_to_csv, write_session_reports
from utils.verdict import FAIL, PASS, Verdict, to_jsonable


def test_wide_integers_become_strings():
    assert to_jsonable(2**63) == str(2**63)
    assert to_jsonable(2**63 - 1) == 2**63 - 1
    assert to_jsonable(Fraction(3, 4)) == "3/4"
    assert to_jsonable(Fraction(8, 4)) == 2
    assert to_jsonable({"a": [Fraction(1, 2), None, True]}) == {"a": ["1/2", None, True]}


def test_json_rendering_of_verdicts():
    payload = {"passed": False, "verdicts": [Verdict("x", "anchor", FAIL, {"k": 2**70})]}
    data = json.loads(render(payload, "json"))
    assert data["verdicts"][0]["details"]["k"] == str(2**70)


def test_rows_payload_gives_one_line_per_row():
    payload = {"kind": "T", "rows": [{"m": 2}, {"m": 3}], "decay": {"status": PASS}}
    rows = table_rows(payload)
    assert rows == [{"kind": "T", "m": "2"}, {"kind": "T", "m": "3"}]


def test_csv_rendering_of_a_flat_payload():
    out = render({"j": 3, "x": "1/4"}, "csv")
    assert out.splitlines() == ["j,x", "3,1/4"]


def test_unknown_format():
    with pytest.raises(ValueError):
        render({}, "xml")


def test_write_row_to_csv_writes_the_header_once(tmp_path):
    path = str(tmp_path / "out.csv")
    write_row_to_csv({"a": 1, "b": 2}, path)
    write_row_to_csv({"a": 3, "b": 4}, path)
    with open(path, newline="", encoding="utf8") as stream:
        assert list(csv.DictReader(stream)) == [{"a": "1", "b": "2"}, {"a": "3", "b": "4"}]


def test_write_session_reports(tmp_path):
    verdicts = [Verdict("one", "first", PASS), Verdict("two", "second", FAIL, {"k": 1})]
    path = write_session_reports(
        str(tmp_path), "verify", {"verdicts": verdicts}, verdicts, "text"
    )
    assert path.endswith("verify.txt")
    text = (tmp_path / "verify.txt").read_text()
    assert "[✓] one: first" in text
    assert "[✗] two: second" in text
    with open(tmp_path / "verdicts.csv", newline="", encoding="utf8") as stream:
        rows = list(csv.DictReader(stream))
    assert [row["status"] for row in rows] == [PASS, FAIL]
