"""Rayleigh-Ritz projection onto the span of the inner-solve columns."""

import numpy as np
import numpy.typing as npt

from ..linalg import DenseSymMatrix, canonical_signs, jacobi_eigensolve, orthonormal_basis
from .block import IterateBlock


def rayleigh_ritz(A: DenseSymMatrix, columns: npt.ArrayLike) -> IterateBlock:
    """
    Solve (X^T A X) z = lambda (X^T X) z and return the Ritz pairs (lambda_i, X z_i).

    X is orthonormalized first, so the projected problem is a standard
    symmetric one solved by Jacobi. Ritz values come back ascending with ties
    kept in Ritz-index order.
    """
    Q = orthonormal_basis(columns)
    H = Q.T @ (A.entries @ Q)
    H = 0.5 * (H + H.T)
    small = jacobi_eigensolve(DenseSymMatrix(H))

    X = Q @ small.eigenvectors
    X = X / np.linalg.norm(X, axis=0)
    return IterateBlock(canonical_signs(X), small.eigenvalues.copy())
