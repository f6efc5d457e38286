"""Component expansion of iterates in the true eigenbasis and measured contraction rates."""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt

from ..errors import AlreadyConvergedError, ConfigError, DimensionMismatchError

if TYPE_CHECKING:
    from ..linalg import EigenDecomposition
    from ..solver.block import IterateBlock


def expand_components(truth: "EigenDecomposition", block: "IterateBlock") -> npt.NDArray[np.float64]:
    """alpha[i, j] = phi_j . x_i, an ell x n coefficient matrix."""
    if block.X.shape[0] != truth.n:
        raise DimensionMismatchError("expand_components", truth.n, block.X.shape[0])
    return block.X.T @ truth.eigenvectors


def component_ratios(alpha: npt.NDArray[np.float64], ell: int) -> npt.NDArray[np.float64]:
    """Per row: norm of the undesired coefficients (j > ell) over the desired ones (j <= ell)."""
    undesired = np.linalg.norm(alpha[:, ell:], axis=1)
    desired = np.linalg.norm(alpha[:, :ell], axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(desired > 0.0, undesired / np.where(desired > 0.0, desired, 1.0), np.inf)
    return ratios


@dataclass
class ComponentTrace:
    """
    Expansion coefficients recorded once per outer iteration.

    ``coefficients[k]`` is the ell x n matrix for iteration k (k = 0 is the
    starting block); ``inner_steps`` Richardson applications happen between
    consecutive records.
    """

    ell: int
    inner_steps: int = 1
    coefficients: list[npt.NDArray[np.float64]] = field(default_factory=list)
    ratios: list[npt.NDArray[np.float64]] = field(default_factory=list)

    def record(self, alpha: npt.NDArray[np.float64]) -> None:
        alpha = np.array(alpha, dtype=np.float64, copy=True)
        alpha.setflags(write=False)
        self.coefficients.append(alpha)
        self.ratios.append(component_ratios(alpha, self.ell))

    def __len__(self) -> int:
        return len(self.coefficients)

    def ratio_series(self, i: int) -> npt.NDArray[np.float64]:
        """r_i^(k) for every recorded k."""
        return np.array([r[i] for r in self.ratios])

    def normalization_defects(self) -> npt.NDArray[np.float64]:
        """|sum_j alpha_ij^2 - 1| for every recorded (k, i)."""
        return np.array([np.abs(np.sum(a * a, axis=1) - 1.0) for a in self.coefficients])


def measured_rate(trace: ComponentTrace, i: int, k_start: int, k_end: int) -> float:
    """
    Geometric-mean contraction of r_i per Richardson application over [k_start, k_end].

    (r_i^(k_end) / r_i^(k_start)) ** (1 / ((k_end - k_start) * inner_steps))
    """
    if not 0 <= k_start < k_end < len(trace):
        raise ConfigError(
            "Measured-rate window must satisfy 0 <= k_start < k_end < trace length",
            k_start=k_start,
            k_end=k_end,
            length=len(trace),
        )
    if not 0 <= i < trace.ell:
        raise ConfigError(f"Block index {i} outside 0..{trace.ell - 1}", i=i)

    r_start = float(trace.ratios[k_start][i])
    r_end = float(trace.ratios[k_end][i])
    if r_start == 0.0:
        raise AlreadyConvergedError(
            "Component ratio is already zero at the window start",
            i=i,
            k_start=k_start,
        )
    steps = (k_end - k_start) * trace.inner_steps
    return (r_end / r_start) ** (1.0 / steps)
