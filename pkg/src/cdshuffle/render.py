"""Serialisation: sign tables as CSV and PGM, elements as JSON."""

from __future__ import annotations

import json
import re
from fractions import Fraction

import numpy as np

from .algebra import MAX_LEVEL, Element, LevelError

PLUS_GRAY = 64  # dark
MINUS_GRAY = 192  # light
MAX_SIDE = 1 << 14


def _check_table(table) -> np.ndarray:
    table = np.asarray(table)
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise ValueError(f"sign table must be square, got shape {table.shape}")
    if table.shape[0] > MAX_SIDE:
        raise ValueError(f"table side {table.shape[0]} exceeds {MAX_SIDE}")
    if not np.isin(table, (-1, 1)).all():
        raise ValueError("sign table entries must be +1 or -1")
    return table


def render_pgm(table, binary: bool = True, plus: int = PLUS_GRAY, minus: int = MINUS_GRAY) -> bytes:
    """Grayscale image with row p top-to-bottom and column q left-to-right."""
    table = _check_table(table)
    side = table.shape[0]
    pixels = np.where(table > 0, plus, minus).astype(np.uint8)
    if binary:
        return f"P5\n{side} {side}\n255\n".encode("ascii") + pixels.tobytes()
    rows = "\n".join(" ".join(str(v) for v in row) for row in pixels.tolist())
    return f"P2\n{side} {side}\n255\n{rows}\n".encode("ascii")


def render_csv(table, header: bool = False) -> str:
    table = _check_table(table)
    lines = []
    if header:
        lines.append("," + ",".join(str(q) for q in range(table.shape[1])))
    for p, row in enumerate(table.tolist()):
        cells = ",".join("+1" if v > 0 else "-1" for v in row)
        lines.append(f"{p},{cells}" if header else cells)
    return "\n".join(lines)


def parse_csv(text: str, header: bool = False) -> np.ndarray:
    rows = [line for line in text.strip().splitlines() if line.strip()]
    if header:
        rows = [line.split(",", 1)[1] for line in rows[1:]]
    values = []
    for line in rows:
        row = []
        for cell in line.split(","):
            cell = cell.strip()
            if cell not in ("+1", "-1", "1"):
                raise ValueError(f"bad sign cell {cell!r}")
            row.append(-1 if cell == "-1" else 1)
        values.append(row)
    return _check_table(np.array(values, dtype=np.int8))


# -- element JSON -----------------------------------------------------------

_FRACTION = re.compile(r"^-?\d+(/\d+)?$")


def _coeff_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def element_json_encode(x: Element) -> str:
    return json.dumps(
        {"level": x.level, "coeffs": [_coeff_text(c) for c in x.coeffs]},
        separators=(",", ":"),
    )


def element_json_decode(text: str) -> Element:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed element JSON: {exc}") from exc
    if not isinstance(data, dict) or set(data) != {"level", "coeffs"}:
        raise ValueError('element JSON must be an object with "level" and "coeffs"')
    level, coeffs = data["level"], data["coeffs"]
    if not isinstance(level, int) or isinstance(level, bool) or level < 0:
        raise ValueError(f"bad level {level!r}")
    if level > MAX_LEVEL:
        raise LevelError(f"level {level} exceeds MAX_LEVEL={MAX_LEVEL}")
    if not isinstance(coeffs, list):
        raise ValueError("coeffs must be a list")
    values = []
    for c in coeffs:
        if not isinstance(c, str) or not _FRACTION.match(c):
            raise ValueError(f"coefficient {c!r} is not an integer fraction string")
        num, _, den = c.partition("/")
        if den and int(den) == 0:
            raise ValueError(f"zero denominator in {c!r}")
        values.append(Fraction(int(num), int(den or 1)))
    if len(values) != 1 << level:
        raise LevelError(f"level {level} needs {1 << level} coefficients, got {len(values)}")
    return Element(level, tuple(values))
