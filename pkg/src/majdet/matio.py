"""Matrix file format: JSON {"n": int, "rows": [[...]], optional "exact": ...}.

"exact" holds per-entry ["numerator", "denominator"] string pairs and, when
present, must agree with rows to 1e-12 after division; it enables exact
rational certification of determinant comparisons.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import BadMatrixFile


def write_matrix(path, rows: np.ndarray, exact=None) -> None:
    arr = np.asarray(rows, dtype=float)
    payload: dict = {"n": int(arr.shape[0]), "rows": arr.tolist()}
    if exact is not None:
        payload["exact"] = [
            [[str(f.numerator), str(f.denominator)] for f in row] for row in exact
        ]
    Path(path).write_text(json.dumps(payload, indent=1) + "\n")


def read_matrix(path) -> tuple[np.ndarray, list[list[Fraction]] | None]:
    """Parse a matrix file; returns (float array, exact rationals or None)."""
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise BadMatrixFile(f"{path}: {err}") from err
    if not isinstance(payload, dict) or "n" not in payload or "rows" not in payload:
        raise BadMatrixFile(f"{path}: expected an object with 'n' and 'rows'")
    n = payload["n"]
    rows = payload["rows"]
    if not isinstance(n, int) or n < 1:
        raise BadMatrixFile(f"{path}: 'n' must be a positive integer")
    if (not isinstance(rows, list) or len(rows) != n
            or any(not isinstance(r, list) or len(r) != n for r in rows)):
        raise BadMatrixFile(f"{path}: 'rows' must be a {n}x{n} array")
    try:
        arr = np.array(rows, dtype=float)
    except (TypeError, ValueError) as err:
        raise BadMatrixFile(f"{path}: non-numeric entry ({err})") from err
    exact = None
    if "exact" in payload:
        raw = payload["exact"]
        if (not isinstance(raw, list) or len(raw) != n
                or any(len(r) != n for r in raw)):
            raise BadMatrixFile(f"{path}: 'exact' must be a {n}x{n} array of pairs")
        try:
            exact = [
                [Fraction(int(num), int(den)) for num, den in row] for row in raw
            ]
        except (TypeError, ValueError, ZeroDivisionError) as err:
            raise BadMatrixFile(f"{path}: bad exact entry ({err})") from err
        approx = np.array([[float(f) for f in row] for row in exact])
        if np.max(np.abs(approx - arr)) > 1e-12 * max(1.0, float(np.max(np.abs(arr)))):
            raise BadMatrixFile(f"{path}: 'exact' disagrees with 'rows'")
    return arr, exact
