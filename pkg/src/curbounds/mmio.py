"""Matrix Market array-format I/O for dense matrices.

Files carry the header ``%%MatrixMarket matrix array real general`` and a
column-major body, one value per line, 17 significant digits.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .core import DenseMatrix

_BANNER = "%%MatrixMarket"
_HEADER = "%%MatrixMarket matrix array real general"


def write_matrix_market(path, matrix: DenseMatrix) -> None:
    arr = matrix.array
    lines = [_HEADER, f"{matrix.rows} {matrix.cols}"]
    for j in range(matrix.cols):
        for i in range(matrix.rows):
            lines.append(format(arr[i, j], ".17g"))
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix_market(path) -> DenseMatrix:
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise ValueError(f"{path}: empty file")
    head = lines[0].split()
    if len(head) != 5 or head[0] != _BANNER or [w.lower() for w in head[1:]] != [
        "matrix",
        "array",
        "real",
        "general",
    ]:
        raise ValueError(f"{path}: expected header '{_HEADER}', got {lines[0]!r}")
    body = [ln for ln in lines[1:] if ln.strip() and not ln.lstrip().startswith("%")]
    if not body:
        raise ValueError(f"{path}: missing size line")
    dims = body[0].split()
    if len(dims) != 2:
        raise ValueError(f"{path}: malformed size line {body[0]!r}")
    rows, cols = int(dims[0]), int(dims[1])
    values = [float(tok) for ln in body[1:] for tok in ln.split()]
    if len(values) != rows * cols:
        raise ValueError(f"{path}: expected {rows * cols} entries, found {len(values)}")
    return DenseMatrix(np.asarray(values).reshape((rows, cols), order="F"))
