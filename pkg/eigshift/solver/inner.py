"""
Inner solves of the shifted equation (A - tau*I) x~ = x for every block column.

The direct path factors A - tau*I once per outer step. The Richardson path
takes the current iterate as its own right-hand side, which turns each
application into multiplication by G = (1 + theta*(1 + tau))*I - theta*A.
"""

import numpy as np
import numpy.typing as npt

from ..analysis.rates import check_theta
from ..errors import AnnihilationError, ConfigError
from ..linalg import DenseSymMatrix, ShiftedLU
from .block import IterateBlock

UNDERFLOW_TOL = 1e-300


def inner_solve_direct(A: DenseSymMatrix, tau: float, block: IterateBlock) -> npt.NDArray[np.float64]:
    """Columns (A - tau*I)^{-1} x_i, unnormalized. Raises NearSingularShiftError."""
    return ShiftedLU.factor(A, tau).solve(block.X)


def richardson_step(A: DenseSymMatrix, tau: float, theta: float, X: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    """One unnormalized application x <- x - theta*((A - tau*I)x - x)."""
    return (1.0 + theta * (1.0 + tau)) * X - theta * (A.entries @ X)


def inner_solve_richardson(
    A: DenseSymMatrix,
    tau: float,
    theta: float,
    m: int,
    block: IterateBlock,
    steps: list[npt.NDArray[np.float64]] | None = None,
) -> npt.NDArray[np.float64]:
    """
    Apply ``m`` Richardson steps per column, renormalizing after each one.

    When ``steps`` is given the normalized block after every step is appended to it.
    """
    check_theta(theta)
    if m < 1:
        raise ConfigError(f"Richardson needs at least one step, got m={m}", m=m)

    X = np.array(block.X, dtype=np.float64, copy=True)
    for _ in range(m):
        Y = richardson_step(A, tau, theta, X)
        norms = np.linalg.norm(Y, axis=0)
        dead = np.flatnonzero(norms < UNDERFLOW_TOL)
        if dead.size:
            raise AnnihilationError(tau=tau, theta=theta, column=int(dead[0]))
        X = Y / norms
        if steps is not None:
            steps.append(X)
    return X
