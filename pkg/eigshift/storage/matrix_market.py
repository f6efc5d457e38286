"""
Matrix Market I/O for dense symmetric matrices.

Reads ``matrix array real symmetric`` and ``matrix coordinate real symmetric``
files; writes array/symmetric with 17 significant digits.
"""

from pathlib import Path

import numpy as np
from scipy import io as spio
from scipy import sparse

from ..errors import ExperimentIOError, MatrixMarketError
from ..linalg import DenseSymMatrix
from .atomic import atomic_open

ACCEPTED_FIELDS = {"real", "integer"}
ACCEPTED_FORMATS = {"array", "coordinate"}


def read_matrix_market(path: str | Path) -> DenseSymMatrix:
    """Load a symmetric Matrix Market file into dense storage."""
    path = Path(path)
    if not path.exists():
        raise ExperimentIOError(path, "file not found")

    try:
        rows, cols, _, fmt, field, symmetry = spio.mminfo(str(path))
    except (ValueError, OSError) as e:
        raise MatrixMarketError(f"Not a Matrix Market file: {e}", path=str(path)) from e

    if fmt not in ACCEPTED_FORMATS or field not in ACCEPTED_FIELDS or symmetry != "symmetric":
        raise MatrixMarketError(
            "Only 'matrix array|coordinate real symmetric' files are supported",
            path=str(path),
            format=fmt,
            field=field,
            symmetry=symmetry,
        )
    if rows != cols:
        raise MatrixMarketError("Matrix is not square", path=str(path), rows=rows, cols=cols)

    data = spio.mmread(str(path))
    if sparse.issparse(data):
        data = data.toarray()
    return DenseSymMatrix(np.asarray(data, dtype=np.float64))


def write_matrix_market(path: str | Path, A: DenseSymMatrix, comment: str = "") -> Path:
    """Write A as ``matrix array real symmetric`` (column-major lower triangle)."""
    with atomic_open(path, "wb") as f:
        spio.mmwrite(f, A.entries, comment=comment, field="real", precision=17, symmetry="symmetric")
    return Path(path)
