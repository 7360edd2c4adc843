"""Deterministic CSV / JSON / text rendering with exact big-integer text.

JSON output renders every integer as a decimal string so consumers with
53-bit number types never lose precision; CSV and text always print the
exact decimal form.  Output is byte-identical for identical inputs.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction


def _unlock_digits() -> None:
    # int -> str is capped by default on newer Pythons; raise the cap to
    # match the package's digit budget.
    setter = getattr(sys, "set_int_max_str_digits", None)
    if setter is not None and sys.get_int_max_str_digits() < 1_100_000:
        setter(1_100_000)


def jsonable(value):
    """Recursively convert to JSON-safe data; ints become decimal strings."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        _unlock_digits()
        return str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value if value is None or isinstance(value, str) else str(value)


def _cell(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return repr(value)
    _unlock_digits()
    return str(value)


def render_rows(rows, fieldnames, fmt: str) -> str:
    rows = list(rows)
    if fmt == "json":
        return json.dumps([jsonable(r) for r in rows], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fieldnames)
        for r in rows:
            writer.writerow([_cell(r[f]) for f in fieldnames])
        return buf.getvalue()
    if fmt == "text":
        lines = ["\t".join(fieldnames)]
        lines += ["\t".join(_cell(r[f]) for f in fieldnames) for r in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def render_object(obj, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(jsonable(obj), indent=2) + "\n"
    if fmt in ("text", "csv"):
        lines = [f"{k}: {_cell_obj(v)}" for k, v in obj.items()]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _cell_obj(value) -> str:
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(jsonable(value), separators=(",", ":"))
    return _cell(value)
