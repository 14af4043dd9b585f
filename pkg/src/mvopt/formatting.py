"""Deterministic, locale-independent number and CSV formatting.

Every file this package emits goes through :func:`format_number` so that
reruns are byte-identical: 12 significant digits, ``.`` decimal
separator, ``\\n`` line endings.
"""

import math
from pathlib import Path

SIGNIFICANT_DIGITS = 12


def format_number(value: float) -> str:
    """Render a float at 12 significant digits; NaN becomes an empty cell."""
    value = float(value)
    if math.isnan(value):
        return ""
    # +0.0 folds negative zero into "0".
    return format(value + 0.0, f".{SIGNIFICANT_DIGITS}g")


def write_csv(path, header, rows) -> Path:
    """Write a CSV of pre-formatted string cells with stable bytes."""
    path = Path(path)
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
