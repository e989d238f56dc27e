"""Reading matrices from CSV or JSON files."""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .matrices import PositiveMatrix


class MatrixParseError(ValueError):
    pass


def _check_rows(rows: list[list[float]]) -> None:
    if not rows:
        raise MatrixParseError("no matrix entries found")
    width = len(rows[0])
    for j, row in enumerate(rows, 1):
        if len(row) != width:
            raise MatrixParseError(f"ragged input: row {j} has {len(row)} entries, row 1 has {width}")


def _parse_csv(text: str) -> list[list[float]]:
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        row = []
        j = len(rows) + 1
        for k, token in enumerate(line.split(","), 1):
            try:
                row.append(float(token))
            except ValueError:
                raise MatrixParseError(f"non-numeric entry {token.strip()!r} at ({j}, {k})") from None
        rows.append(row)
    return rows


def _parse_json(text: str) -> list[list[float]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(f"invalid JSON: {exc}") from None
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise MatrixParseError("JSON matrix must be a 2-D array")
    rows = []
    for j, row in enumerate(data, 1):
        for k, x in enumerate(row, 1):
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise MatrixParseError(f"non-numeric entry {x!r} at ({j}, {k})")
        rows.append([float(x) for x in row])
    return rows


def parse_matrix_text(text: str, format: str = "csv", absolute: bool = False) -> PositiveMatrix:
    if format == "auto":
        format = "json" if text.lstrip().startswith("[") else "csv"
    if format == "csv":
        rows = _parse_csv(text)
    elif format == "json":
        rows = _parse_json(text)
    else:
        raise ValueError(f"unknown matrix format {format!r}")
    _check_rows(rows)
    a = np.array(rows, dtype=float)
    for (j, k), x in np.ndenumerate(a):
        if not math.isfinite(x):
            raise MatrixParseError(f"non-finite entry {x} at ({j + 1}, {k + 1})")
    if absolute:
        a = np.abs(a)
    elif np.any(a < 0):
        j, k = np.argwhere(a < 0)[0]
        raise MatrixParseError(
            f"negative entry {a[j, k]} at ({j + 1}, {k + 1}); use --abs to take absolute values")
    return PositiveMatrix(a)


def parse_matrix(path, format: str = "auto", absolute: bool = False) -> PositiveMatrix:
    """Load a nonnegative matrix; ``format="auto"`` picks JSON for ``.json`` files.

    Raises :class:`MatrixParseError` on ragged rows, non-numeric or non-finite
    tokens, and on negative entries unless ``absolute`` is set.
    """
    path = Path(path)
    text = path.read_text()
    if format == "auto" and path.suffix.lower() in (".json", ".csv"):
        format = path.suffix.lower()[1:]
    return parse_matrix_text(text, format, absolute)
