"""JSON and CSV rendering for CLI reports."""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

SCHEMA = "recurprimes/1"


def to_jsonable(obj):
    """Integers become exact decimal strings; everything else maps structurally."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render_json(subcommand, inputs, results, bounds=None, warnings=(), timing_ms=None) -> str:
    doc = {
        "schema": SCHEMA,
        "subcommand": subcommand,
        "inputs": to_jsonable(inputs),
        "results": to_jsonable(results),
        "bounds": to_jsonable(bounds or {}),
        "warnings": list(warnings),
        "timing_ms": timing_ms,
    }
    return json.dumps(doc, indent=2) + "\n"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple, set, frozenset)):
        return " ".join(_cell(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()
