"""
This module is responsible for reading and writing the plain-text cache files.
"""

import os
import tempfile


def read_records(path):
    """Yield (line_no, fields) for every non-empty line of a text record file.

    Fields are split on tabs when present, otherwise on whitespace.
    Missing files yield nothing.
    """

    if not os.path.exists(path):
        return
    with open(path, "r", encoding="utf8") as stream:
        for line_no, line in enumerate(stream, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split("\t") if "\t" in line else line.split()
            yield line_no, fields


def write_text_atomic(path, text):
    """Replace `path` with `text` without leaving a half-written file behind."""

    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf8") as stream:
            stream.write(text)
        os.replace(tmp_path, path)
    except OSError:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
