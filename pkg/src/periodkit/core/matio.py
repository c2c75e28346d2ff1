"""Matrix and vector CSV input: comma separated, entries like "3", "-1/2", '#' comments."""
from __future__ import annotations

import csv
import io

from ..errors import DomainError
from .fields import parse_rational


def parse_matrix_text(text: str):
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cells = next(csv.reader([line]))
        try:
            rows.append([parse_rational(c) for c in cells if c.strip() != ""])
        except DomainError as exc:
            raise DomainError(f"line {lineno}: {exc}") from exc
    if not rows:
        raise DomainError("empty matrix")
    if len({len(r) for r in rows}) != 1:
        raise DomainError("ragged matrix rows")
    return rows


def read_matrix_csv(path):
    with open(path, encoding="utf-8") as fh:
        return parse_matrix_text(fh.read())


def format_matrix_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow([str(x) for x in r])
    return buf.getvalue()
