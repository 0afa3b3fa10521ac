"""Deterministic text output for reports and tables.

Every number leaving the package goes through the same 12-significant-digit
decimal formatting, and JSON objects are emitted with sorted keys, so runs
with identical inputs produce byte-identical files on any platform.
"""

from __future__ import annotations

import json

import numpy as np

SIG_DIGITS = 12


def fmt(x: float) -> str:
    """Format one float with 12 significant digits."""
    x = float(x)
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.{SIG_DIGITS}g}"


def round_sig(x: float) -> float:
    """Round a float to 12 significant digits of decimal precision.

    Reading the formatted value back yields exactly this float, so reports
    round-trip through their serialized form."""
    return float(fmt(x))


def jsonable(obj):
    """Recursively convert a report structure to JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(float(obj))
    return obj


def dumps_json(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def csv_text(header, rows) -> str:
    """Render a table; numeric cells are formatted, strings passed through."""
    lines = [",".join(str(h) for h in header)]
    for row in rows:
        lines.append(",".join(c if isinstance(c, str) else fmt(c) for c in row))
    return "\n".join(lines) + "\n"


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
