from __future__ import annotations

import cmath
import re
from pathlib import Path
from typing import List, Union

import numpy as np

from src.utils.errors import NonNormalMatrixError, ParseError

_BARE_IMAG = re.compile(r"^([+-]?)([ij])$")
_TRAILING_UNIT = re.compile(r"([+-])([ij])$")


def parse_complex(text: Union[str, float, int, complex]) -> complex:
    """Parses `re+imi` style text (also `2i`, `-i`, `1-i`, plain reals, python `j` form)."""
    if isinstance(text, (int, float, complex)):
        value = complex(text)
    else:
        raw = str(text).strip().replace(" ", "")
        if not raw:
            raise ParseError("empty complex literal")
        bare = _BARE_IMAG.match(raw)
        if bare:
            raw = f"{bare.group(1)}1j"
        else:
            raw = _TRAILING_UNIT.sub(r"\g<1>1j", raw)
            raw = raw.replace("i", "j")
        try:
            value = complex(raw)
        except ValueError as e:
            raise ParseError(f"cannot parse complex number {text!r}") from e
    if not cmath.isfinite(value):
        raise ParseError(f"non-finite complex number {text!r}")
    return value


def parse_complex_list(items: Union[str, List[str]]) -> List[complex]:
    if isinstance(items, str):
        items = [part for part in re.split(r"[,\s]+", items.strip()) if part]
    return [parse_complex(item) for item in items]


def read_matrix_file(path: Union[str, Path]) -> np.ndarray:
    """First line N, then N rows of N whitespace-separated complex entries."""
    try:
        lines = [line.strip() for line in Path(path).read_text(encoding="utf-8").splitlines()]
    except OSError as e:
        raise ParseError(f"cannot read matrix file {path}: {e}") from e
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines:
        raise ParseError(f"matrix file {path} is empty")
    try:
        n = int(lines[0])
    except ValueError as e:
        raise ParseError(f"first line of {path} must be the dimension, got {lines[0]!r}") from e
    if n < 1:
        raise ParseError(f"matrix dimension must be positive, got {n}")
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} matrix rows in {path}, found {len(rows)}")
    matrix = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        entries = row.split()
        if len(entries) != n:
            raise ParseError(f"row {i + 1} of {path} has {len(entries)} entries, expected {n}")
        for j, entry in enumerate(entries):
            matrix[i, j] = parse_complex(entry)
    return matrix


def normal_eigenvalues(matrix: np.ndarray, tol: float = 1e-10) -> List[complex]:
    a = np.asarray(matrix, dtype=complex)
    commutator = a @ a.conj().T - a.conj().T @ a
    defect = float(np.linalg.norm(commutator))
    if defect > tol:
        raise NonNormalMatrixError(f"matrix is not normal: ||AA* - A*A|| = {defect:.3e} > {tol:g}")
    return [complex(v) for v in np.linalg.eigvals(a)]
