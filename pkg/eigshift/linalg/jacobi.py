"""
Cyclic Jacobi eigensolver for dense symmetric matrices.

Used for the small projected problem inside Rayleigh-Ritz and as the
ground-truth oracle for convergence diagnostics.
"""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..errors import ConvergenceFailureError
from .decompose import canonical_signs
from .matrix import DenseSymMatrix

MAX_SWEEPS = 100
OFF_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Ascending eigenvalues and the matching orthonormal eigenvector columns."""

    eigenvalues: npt.NDArray[np.float64]
    eigenvectors: npt.NDArray[np.float64]

    def __post_init__(self):
        for arr in (self.eigenvalues, self.eigenvectors):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    def phi(self, j: int) -> npt.NDArray[np.float64]:
        """Eigenvector j (0-based)."""
        return self.eigenvectors[:, j]


def _off_norm(M: npt.NDArray[np.float64]) -> float:
    off = M - np.diag(np.diag(M))
    return float(np.linalg.norm(off, "fro"))


def _rotate(M: npt.NDArray[np.float64], V: npt.NDArray[np.float64], p: int, q: int) -> None:
    apq = M[p, q]
    h = M[q, q] - M[p, p]
    if abs(h) + 100.0 * abs(apq) == abs(h):
        # theta**2 would overflow; t ~ 1/(2 theta)
        t = apq / h
    else:
        theta = 0.5 * h / apq
        t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
        if theta < 0.0:
            t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    col_p = M[:, p].copy()
    col_q = M[:, q].copy()
    M[:, p] = c * col_p - s * col_q
    M[:, q] = s * col_p + c * col_q
    row_p = M[p, :].copy()
    row_q = M[q, :].copy()
    M[p, :] = c * row_p - s * row_q
    M[q, :] = s * row_p + c * row_q
    M[p, q] = M[q, p] = 0.0

    v_p = V[:, p].copy()
    v_q = V[:, q].copy()
    V[:, p] = c * v_p - s * v_q
    V[:, q] = s * v_p + c * v_q


def jacobi_eigensolve(A: DenseSymMatrix, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """
    Diagonalize A by cyclic Jacobi rotations.

    Stops when the off-diagonal Frobenius norm is at most 1e-14 * ||A||_F.
    Entries that no longer change the diagonal in floating point are zeroed
    instead of rotated, so the off-diagonal norm can actually reach that level.
    """
    M = np.array(A.entries, dtype=np.float64, copy=True)
    n = A.n
    V = np.eye(n)
    target = OFF_TOL * A.frobenius_norm

    sweep = 0
    off = _off_norm(M)
    while off > target:
        if sweep >= max_sweeps:
            raise ConvergenceFailureError(sweeps=max_sweeps, residual=off)
        sweep += 1
        threshold = 0.2 * off / (n * n) if sweep < 4 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = M[p, q]
                g = 100.0 * abs(apq)
                if sweep > 4 and abs(M[p, p]) + g == abs(M[p, p]) and abs(M[q, q]) + g == abs(M[q, q]):
                    M[p, q] = M[q, p] = 0.0
                elif abs(apq) > threshold and apq != 0.0:
                    _rotate(M, V, p, q)
        off = _off_norm(M)

    eigenvalues = np.diag(M).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return EigenDecomposition(
        eigenvalues=eigenvalues[order],
        eigenvectors=canonical_signs(V[:, order]),
    )
