"""Test-matrix generators."""

from typing import Sequence

import numpy as np

from ..errors import ConfigError
from ..linalg import DenseSymMatrix


def gen_diag(spectrum: Sequence[float]) -> DenseSymMatrix:
    """Diagonal matrix with the given entries, in the given order."""
    values = np.asarray(list(spectrum), dtype=np.float64)
    if values.size == 0:
        raise ConfigError("gen_diag needs at least one diagonal entry")
    return DenseSymMatrix(np.diag(values))


def gen_laplacian_1d(n: int) -> DenseSymMatrix:
    """
    Tridiagonal (-1, 2, -1) matrix of order n.

    Its eigenvalues are 2 - 2*cos(j*pi/(n+1)), j = 1..n.
    """
    if n < 1:
        raise ConfigError(f"gen_laplacian_1d needs n >= 1, got {n}", n=n)
    off = -np.ones(n - 1)
    return DenseSymMatrix(2.0 * np.eye(n) + np.diag(off, 1) + np.diag(off, -1))


def laplacian_1d_eigenvalues(n: int) -> np.ndarray:
    j = np.arange(1, n + 1)
    return 2.0 - 2.0 * np.cos(j * np.pi / (n + 1))


GENERATORS = {
    "diag": gen_diag,
    "laplacian": gen_laplacian_1d,
}
