"""
Render command results as json, csv or text and store them in a session directory.
"""

import csv
import io
import json
import os
import time
from typing import Dict, Iterable, List

from utils.verdict import Verdict, to_jsonable


def _cell(value) -> str:
    value = to_jsonable(value)
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return "" if value is None else str(value)


def verdict_rows(verdicts: Iterable[Verdict]) -> List[Dict[str, str]]:
    return [
        {"name": v.name, "status": v.status, "anchor": v.anchor, "details": _cell(v.details)}
        for v in verdicts
    ]


def table_rows(payload) -> List[Dict[str, str]]:
    """Flatten a payload into CSV rows.

    Payloads with "rows" give one line per row, verdict lists one line per
    verdict, anything else a single line.
    """
    payload = to_jsonable(payload)
    if isinstance(payload, list):
        return [{k: _cell(v) for k, v in item.items()} for item in payload]
    if "rows" in payload:
        shared = {k: _cell(v) for k, v in payload.items() if k not in ("rows", "decay")}
        return [{**shared, **{k: _cell(v) for k, v in row.items()}} for row in payload["rows"]]
    if "verdicts" in payload and isinstance(payload["verdicts"], list):
        return [{k: _cell(v) for k, v in item.items()} for item in payload["verdicts"]]
    return [{k: _cell(v) for k, v in payload.items()}]


def render(payload, output_format: str) -> str:
    """Return the payload as text in the requested format."""
    if output_format == "json":
        return json.dumps(to_jsonable(payload), indent=2) + "\n"
    if output_format == "csv":
        rows = table_rows(payload)
        buffer = io.StringIO()
        fieldnames = list(dict.fromkeys(k for row in rows for k in row))
        writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buffer.getvalue()
    if output_format == "text":
        return render_text(payload)
    raise ValueError(f"unknown output format {output_format!r}")


def render_text(payload) -> str:
    data = to_jsonable(payload)
    lines = []
    verdicts = data.get("verdicts") if isinstance(data, dict) else data
    if isinstance(verdicts, list) and verdicts and "status" in verdicts[0]:
        for v in verdicts:
            marker = Verdict(v["name"], v["anchor"], v["status"]).marker
            lines.append(f"{marker} {v['name']}: {v['anchor']}")
    if isinstance(data, dict):
        for key, value in data.items():
            if key != "verdicts":
                lines.append(f"{key}: {_cell(value)}")
    return "\n".join(lines) + "\n"


def write_row_to_csv(row_dict: dict, csv_path: str) -> None:
    """Append a row to a CSV file, writing the header when the file is new."""
    file_exists = os.path.isfile(csv_path)
    with open(csv_path, mode="a", newline="", encoding="utf8") as file:
        writer = csv.DictWriter(file, fieldnames=row_dict.keys())
        if not file_exists:
            writer.writeheader()
        writer.writerow(row_dict)


def write_session_reports(reports_dir: str, command: str, payload, verdicts, output_format):
    """Store the rendered report and append every verdict to verdicts.csv."""
    os.makedirs(reports_dir, exist_ok=True)
    extension = {"json": "json", "csv": "csv", "text": "txt"}[output_format]
    report_path = os.path.join(reports_dir, f"{command}.{extension}")
    with open(report_path, "w", encoding="utf8") as stream:
        stream.write(render(payload, output_format))

    stamp = time.strftime("%Y-%m-%d %H:%M:%S")
    csv_path = os.path.join(reports_dir, "verdicts.csv")
    for row in verdict_rows(verdicts):
        write_row_to_csv({"command": command, "timestamp": stamp, **row}, csv_path)
    return report_path
