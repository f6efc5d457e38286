"""Dense symmetric matrices and vectors."""

from dataclasses import dataclass
from typing import Iterable

import numpy as np
import numpy.typing as npt

from ..errors import DimensionMismatchError, IndefiniteError, NonFiniteError, NotSymmetricError

Vec = npt.NDArray[np.float64]


def as_vec(values: Iterable[float] | npt.ArrayLike) -> Vec:
    """Build a read-only float64 vector, rejecting NaN/Inf components."""
    arr = np.array(values, dtype=np.float64).reshape(-1)
    if arr.size == 0:
        raise DimensionMismatchError("vector construction", 1, 0)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError("Vector has non-finite components", n=arr.size)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DenseSymMatrix:
    """
    Full n x n dense storage of a real symmetric matrix.

    Symmetry is checked bitwise at construction; the stored array is read-only
    so instances can be shared freely.
    """

    entries: npt.NDArray[np.float64]

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.float64)
        if arr.ndim != 2:
            raise DimensionMismatchError("matrix construction (number of axes)", 2, arr.ndim)
        if arr.shape[0] != arr.shape[1]:
            raise DimensionMismatchError("matrix construction (columns vs rows)", arr.shape[0], arr.shape[1])
        if arr.shape[0] < 1:
            raise DimensionMismatchError("matrix construction", 1, 0)
        if not np.all(np.isfinite(arr)):
            raise NonFiniteError("Matrix has non-finite entries", n=arr.shape[0])
        if not np.array_equal(arr, arr.T):
            i, j = np.argwhere(arr != arr.T)[0]
            raise NotSymmetricError(
                "Matrix is not exactly symmetric",
                row=int(i),
                col=int(j),
                a_ij=float(arr[i, j]),
                a_ji=float(arr[j, i]),
            )
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.entries, "fro"))

    @classmethod
    def identity(cls, n: int) -> "DenseSymMatrix":
        return cls(np.eye(n))

    def shifted(self, tau: float) -> npt.NDArray[np.float64]:
        """Return a writable copy of A - tau*I."""
        return self.entries - tau * np.eye(self.n)

    def __repr__(self) -> str:
        return f"DenseSymMatrix(n={self.n})"


def _check_dim(A: DenseSymMatrix, x: Vec, what: str) -> None:
    if x.shape[0] != A.n:
        raise DimensionMismatchError(what, A.n, x.shape[0])


def matvec(A: DenseSymMatrix, x: Vec) -> Vec:
    """y = A x."""
    x = np.asarray(x, dtype=np.float64)
    _check_dim(A, x, "matvec")
    return A.entries @ x


def a_norm(A: DenseSymMatrix, x: Vec, tol: float = 1e-12) -> float:
    """
    Energy norm sqrt(x^T A x).

    Tiny negative values of x^T A x (roundoff on a semidefinite A) clamp to 0;
    anything below -tol * ||x||^2 means A is indefinite along x.
    """
    x = np.asarray(x, dtype=np.float64)
    _check_dim(A, x, "a_norm")
    energy = float(x @ (A.entries @ x))
    if energy < 0.0:
        if energy < -tol * float(x @ x):
            raise IndefiniteError("x^T A x is negative; A is not positive definite", energy=energy)
        return 0.0
    return float(np.sqrt(energy))
