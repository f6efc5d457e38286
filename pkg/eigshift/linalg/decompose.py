"""Orthonormalization and shifted direct solves."""

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt
import scipy.linalg
from scipy.linalg import LinAlgWarning

from ..errors import DimensionMismatchError, NearSingularShiftError, RankDeficiencyError
from .matrix import DenseSymMatrix, Vec, as_vec

RANK_TOL = 1e-12
PIVOT_TOL = 1e-14


def orthonormal_basis(X: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """
    Modified Gram-Schmidt with one re-orthogonalization pass over the columns of X.

    Returns a fresh n x l array with orthonormal columns spanning range(X).
    """
    Q = np.array(X, dtype=np.float64, copy=True)
    if Q.ndim == 1:
        Q = Q.reshape(-1, 1)
    n, ell = Q.shape
    if ell > n:
        raise RankDeficiencyError(column=n, residual_norm=0.0, original_norm=0.0)

    for j in range(ell):
        v = Q[:, j]
        original = float(np.linalg.norm(v))
        for _ in range(2):
            for i in range(j):
                v -= (Q[:, i] @ v) * Q[:, i]
        remaining = float(np.linalg.norm(v))
        if original == 0.0 or remaining < RANK_TOL * original:
            raise RankDeficiencyError(column=j, residual_norm=remaining, original_norm=original)
        Q[:, j] = v / remaining
    return Q


def gram_schmidt(columns: Sequence[Vec]) -> list[Vec]:
    """Orthonormalize a list of vectors; output spans the same space."""
    if len(columns) == 0:
        return []
    n = len(columns[0])
    for idx, col in enumerate(columns):
        if len(col) != n:
            raise DimensionMismatchError(f"gram_schmidt column {idx}", n, len(col))
    Q = orthonormal_basis(np.column_stack(columns))
    return [as_vec(Q[:, j]) for j in range(Q.shape[1])]


@dataclass(frozen=True, eq=False)
class ShiftedLU:
    """LAPACK PA = LU factorization of A - tau*I, as returned by scipy.linalg.lu_factor."""

    lu: npt.NDArray[np.float64]
    piv: npt.NDArray[np.int32]
    tau: float

    @classmethod
    def factor(cls, A: DenseSymMatrix, tau: float) -> "ShiftedLU":
        """Raises NearSingularShiftError when a pivot of U is below PIVOT_TOL * ||A||_F."""
        with warnings.catch_warnings():
            # exactly singular input is reported below through the pivot check
            warnings.simplefilter("ignore", LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(A.shifted(tau), check_finite=False)
        pivots = np.abs(np.diag(lu))
        row = int(np.argmin(pivots))
        if pivots[row] < PIVOT_TOL * A.frobenius_norm or pivots[row] == 0.0:
            raise NearSingularShiftError(tau=tau, pivot=float(lu[row, row]), row=row)
        return cls(lu=lu, piv=piv, tau=tau)

    def solve(self, B: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Solve for one right-hand side (n,) or several at once (n, k)."""
        B = np.asarray(B, dtype=np.float64)
        n = self.lu.shape[0]
        if B.shape[0] != n:
            raise DimensionMismatchError("shifted_lu_solve right-hand side", n, B.shape[0])
        return scipy.linalg.lu_solve((self.lu, self.piv), B, check_finite=False)


def shifted_lu_solve(A: DenseSymMatrix, tau: float, b: Vec) -> Vec:
    """Solve (A - tau*I) x = b by LU with partial pivoting."""
    b = np.asarray(b, dtype=np.float64)
    if b.shape[0] != A.n:
        raise DimensionMismatchError("shifted_lu_solve right-hand side", A.n, b.shape[0])
    return ShiftedLU.factor(A, tau).solve(b)


def canonical_signs(X: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    """Flip columns so each column's largest-magnitude component is non-negative."""
    X = np.array(X, dtype=np.float64, copy=True)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    lead = np.argmax(np.abs(X), axis=0)
    signs = np.where(X[lead, np.arange(X.shape[1])] < 0.0, -1.0, 1.0)
    return X * signs
