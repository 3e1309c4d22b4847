"""CSV matrix ingestion/emission and the diagnostics file format.

Values are written with 17 significant digits so write-then-read round
trips reproduce float64 matrices exactly.  Input accepts scientific
notation; an optional header row can be skipped.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import CsvParseError, ValidationError

__all__ = ["read_matrix", "read_vector", "write_matrix", "write_diagnostics"]


def read_matrix(path, header: bool = False) -> np.ndarray:
    """Parse a CSV file into a 2-D float array.

    Cell-level failures raise :class:`CsvParseError` carrying the 1-based
    line and column of the offending cell.
    """
    path = Path(path)
    rows: list[list[float]] = []
    width = None
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if header and lineno == 1:
                continue
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            parsed = []
            for colno, cell in enumerate(cells, start=1):
                try:
                    parsed.append(float(cell))
                except ValueError:
                    raise CsvParseError(path, lineno, colno, cell.strip()) from None
            if width is None:
                width = len(parsed)
            elif len(parsed) != width:
                raise ValidationError(
                    f"{path}: line {lineno} has {len(parsed)} columns, expected {width}"
                )
            rows.append(parsed)
    if not rows:
        raise ValidationError(f"{path}: no data rows")
    return np.array(rows, dtype=np.float64)


def read_vector(path, header: bool = False) -> np.ndarray:
    """Read a single-column CSV file as a 1-D array."""
    mat = read_matrix(path, header=header)
    if mat.shape[1] != 1:
        raise ValidationError(
            f"{path}: expected a single-column CSV, found {mat.shape[1]} columns"
        )
    return mat[:, 0]


def write_matrix(path, values) -> None:
    """Write a 1-D or 2-D array as comma-separated rows, 17 significant digits."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ValidationError("write_matrix expects a 1-D or 2-D array")
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for row in arr:
            fh.write(",".join(f"{v:.17g}" for v in row))
            fh.write("\n")


def write_diagnostics(path, diagnostics: dict) -> None:
    """Write a diagnostics record as sorted key=value lines."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for key in sorted(diagnostics):
            value = diagnostics[key]
            if isinstance(value, float):
                fh.write(f"{key}={value:.17g}\n")
            else:
                fh.write(f"{key}={value}\n")
