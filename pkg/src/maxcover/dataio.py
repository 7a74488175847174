"""Reading and writing the delimited formats: FIMI databases, pattern lists, reports.

FIMI layout: one transaction per line, items as whitespace-separated positive
integers.  The 1-based line number is the tid.  Blank lines are malformed in
source data but, with ``allow_empty``, parse as empty transactions so that
sanitized databases round-trip.
"""

from __future__ import annotations

import json
import logging
from typing import IO, Iterable, Mapping, Union

from .transactions import RestrictivePatterns, TransactionDatabase

log = logging.getLogger(__name__)

__all__ = [
    "FormatError",
    "parse_fimi",
    "write_fimi",
    "read_fimi",
    "save_fimi",
    "parse_patterns",
    "write_patterns",
    "read_patterns",
    "report_document",
    "dumps_report",
    "parse_report",
    "save_report",
]


class FormatError(ValueError):
    """Malformed delimited input; the message names the offending line."""


def _parse_line(line: str, lineno: int) -> frozenset:
    items = set()
    for token in line.split():
        try:
            item = int(token)
        except ValueError:
            raise FormatError(f"line {lineno}: {token!r} is not an integer") from None
        if item < 1:
            raise FormatError(f"line {lineno}: item labels must be >= 1, got {item}")
        if item in items:
            log.warning("line %d: duplicate item %d collapsed", lineno, item)
        items.add(item)
    return frozenset(items)


def parse_fimi(source: Union[str, IO], *, allow_empty: bool = False) -> TransactionDatabase:
    """Parse FIMI text (or a readable) into a database with tids 1..N.

    ``allow_empty`` accepts blank lines as empty transactions, which a
    sanitized database may legitimately contain.
    """
    text = source if isinstance(source, str) else source.read()
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            if not allow_empty:
                raise FormatError(f"line {lineno}: blank line (pass allow_empty for sanitized data)")
            rows.append(frozenset())
        else:
            rows.append(_parse_line(line, lineno))
    return TransactionDatabase.from_itemsets(rows)


def write_fimi(db: TransactionDatabase) -> str:
    """Render a database as FIMI text; items ascend within each line."""
    out = []
    for t in db:
        out.append(" ".join(str(i) for i in sorted(t.items)))
        out.append("\n")
    return "".join(out)


def read_fimi(path, *, allow_empty: bool = False) -> TransactionDatabase:
    with open(path, "r", encoding="ascii") as fh:
        return parse_fimi(fh, allow_empty=allow_empty)


def save_fimi(db: TransactionDatabase, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(write_fimi(db))


def parse_patterns(source: Union[str, IO]) -> RestrictivePatterns:
    """Parse a pattern list: one pattern per line, FIMI item syntax.

    Blank lines are skipped; duplicate patterns are a validation error.  The
    line order is preserved because it drives sanitization tie-breaks.
    """
    text = source if isinstance(source, str) else source.read()
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        rows.append(_parse_line(line, lineno))
    return RestrictivePatterns.from_iterable(rows)


def write_patterns(patterns: RestrictivePatterns) -> str:
    out = []
    for p in patterns:
        out.append(" ".join(str(i) for i in sorted(p)))
        out.append("\n")
    return "".join(out)


def read_patterns(path) -> RestrictivePatterns:
    with open(path, "r", encoding="ascii") as fh:
        return parse_patterns(fh)


def report_document(metrics: Mapping, counts: Mapping, timings_ms: Mapping,
                    params: Mapping, annotations: Iterable[str] = ()) -> dict:
    """Assemble the evaluation report with a stable key order.

    Every metric is a fraction in [0, 1]; violations are rejected here so a
    report on disk can be trusted without re-deriving it.
    """
    doc = {
        "params": dict(params),
        "metrics": dict(metrics),
        "counts": dict(counts),
        "timings_ms": dict(timings_ms),
        "annotations": list(annotations),
    }
    for name, value in doc["metrics"].items():
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"metric {name} out of range: {value}")
    return doc


def dumps_report(doc: Mapping) -> str:
    # json round-trips Python floats exactly, which covers the required
    # six significant digits.
    return json.dumps(doc, indent=2) + "\n"


def parse_report(text: str) -> dict:
    return json.loads(text)


def save_report(doc: Mapping, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_report(doc))
