"""Iterate blocks: the ell approximate eigenpairs carried between outer iterations."""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ..errors import ConfigError, DimensionMismatchError, RankDeficiencyError
from ..linalg import DenseSymMatrix, canonical_signs, orthonormal_basis

MAX_SEED_RETRIES = 5
NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class IterateBlock:
    """
    Unit-norm columns x_i and their Ritz values, at outer index k.

    Ritz values are ascending; an all-zero vector means "not yet estimated".
    ``tau`` is the shift of the outer step that produced the block.
    """

    X: npt.NDArray[np.float64]
    ritz_values: npt.NDArray[np.float64]
    outer_index: int = 0
    tau: float | None = None

    def __post_init__(self):
        X = np.array(self.X, dtype=np.float64)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        ritz = np.array(self.ritz_values, dtype=np.float64).reshape(-1)
        if ritz.shape[0] != X.shape[1]:
            raise ConfigError(
                "Block needs one Ritz value per column",
                columns=X.shape[1],
                ritz_values=ritz.shape[0],
            )
        norms = np.linalg.norm(X, axis=0)
        if np.any(np.abs(norms - 1.0) > NORM_TOL):
            raise ConfigError("Block columns must have unit Euclidean norm", norms=norms.tolist())
        if np.any(np.diff(ritz) < 0.0):
            raise ConfigError("Ritz values must be ascending", ritz_values=ritz.tolist())
        X.setflags(write=False)
        ritz.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "ritz_values", ritz)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def ell(self) -> int:
        return self.X.shape[1]

    def residuals(self, A: DenseSymMatrix) -> npt.NDArray[np.float64]:
        """||A x_i - lambda_i x_i||_2 per column."""
        R = A.entries @ self.X - self.X * self.ritz_values
        return np.linalg.norm(R, axis=0)


def rayleigh_quotients(A: DenseSymMatrix, X: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    return np.einsum("ij,ij->j", X, A.entries @ X)


def init_random_block(n: int, ell: int, seed: int, A: DenseSymMatrix | None = None) -> IterateBlock:
    """
    Seeded uniform(-1, 1) starting block, orthonormalized.

    With A supplied the Ritz values are the Rayleigh quotients x_i^T A x_i and
    the columns are ordered so they ascend.
    """
    if not (1 <= ell < n or ell == n == 1):
        raise ConfigError(f"Block size must satisfy 1 <= ell < n, got ell={ell}, n={n}", ell=ell, n=n)
    if A is not None and A.n != n:
        raise DimensionMismatchError("init_random_block", n, A.n)

    last_error: RankDeficiencyError | None = None
    for attempt in range(MAX_SEED_RETRIES + 1):
        rng = np.random.default_rng(seed + attempt)
        try:
            Q = orthonormal_basis(rng.uniform(-1.0, 1.0, size=(n, ell)))
            break
        except RankDeficiencyError as e:
            last_error = e
    else:
        raise last_error.with_context(seed=seed, retries=MAX_SEED_RETRIES)

    Q = canonical_signs(Q)
    if A is None:
        return IterateBlock(Q, np.zeros(ell))
    quotients = rayleigh_quotients(A, Q)
    order = np.argsort(quotients, kind="stable")
    return IterateBlock(Q[:, order], quotients[order])
