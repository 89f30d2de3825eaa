"""Deterministic report emission: canonical JSON and aligned text tables.

Identical inputs must produce byte-identical JSON, so serialization
sorts every key, never embeds timestamps, and renders all rationals
through the package-wide string format.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .rationals import format_rational


def jsonable(value: Any) -> Any:
    """Recursively coerce report values into JSON-stable primitives."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return jsonable(value.to_json())
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return repr(value)


def dumps_report(payload: Any) -> str:
    return json.dumps(jsonable(payload), sort_keys=True, indent=2) + "\n"


def write_report(payload: Any, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(dumps_report(payload))
    except OSError as exc:
        raise RuntimeError(f"cannot write report to {path}: {exc}") from exc


def render_table(rows: list[dict], columns: list[str]) -> str:
    """Fixed-width text table over the given column names."""
    cells = [[str(jsonable(row.get(col, ""))) for col in columns] for row in rows]
    widths = [max(len(col), *(len(r[i]) for r in cells)) if cells else len(col) for i, col in enumerate(columns)]
    lines = ["  ".join(col.ljust(w) for col, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)))
    return "\n".join(lines)
