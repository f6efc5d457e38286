"""
Rate Analysis - Richardson multipliers, predicted and closed-form contraction rates.

One Richardson application on the shifted equation multiplies the j-th
eigencomponent of an iterate by g_j = 1 + theta*(1 + tau) - theta*lambda_j.
The contraction rate of the undesired components relative to the desired
ones is the ratio of the extreme multipliers on either side of the gap.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt

from ..errors import ConfigError, DegenerateShiftError, InvalidSpectrumError

DEGENERATE_TOL = 1e-300


@dataclass(frozen=True)
class SpectrumSummary:
    """The three eigenvalues that determine the optimal-shift rate."""

    lambda_ell: float
    lambda_ell_plus_1: float
    lambda_n: float

    def __post_init__(self):
        if not (self.lambda_ell <= self.lambda_ell_plus_1 <= self.lambda_n):
            raise InvalidSpectrumError(
                "Spectrum summary must satisfy lambda_ell <= lambda_ell_plus_1 <= lambda_n",
                lambda_ell=self.lambda_ell,
                lambda_ell_plus_1=self.lambda_ell_plus_1,
                lambda_n=self.lambda_n,
            )

    @property
    def gap(self) -> float:
        return self.lambda_ell_plus_1 - self.lambda_ell

    @classmethod
    def from_spectrum(cls, spectrum: Sequence[float], ell: int) -> "SpectrumSummary":
        """Summarize an ascending spectrum for a block of ``ell`` desired eigenvalues."""
        values = _sorted_spectrum(spectrum)
        _check_ell(ell, values.shape[0])
        return cls(float(values[ell - 1]), float(values[ell]), float(values[-1]))


@dataclass(frozen=True)
class RatePrediction:
    rate: float
    tau: float
    theta: float


def _sorted_spectrum(spectrum: Sequence[float]) -> npt.NDArray[np.float64]:
    values = np.asarray(spectrum, dtype=np.float64).reshape(-1)
    if values.size == 0:
        raise InvalidSpectrumError("Spectrum is empty")
    if np.any(np.diff(values) < 0.0):
        raise InvalidSpectrumError("Spectrum must be sorted ascending", spectrum=values.tolist())
    return values


def _check_ell(ell: int, n: int) -> None:
    if not 1 <= ell < n:
        raise ConfigError(f"Block size must satisfy 1 <= ell < n, got ell={ell}, n={n}", ell=ell, n=n)


def check_theta(theta: float) -> None:
    if not 0.0 < theta < 1.0:
        raise ConfigError(f"theta must lie in the open interval (0, 1), got {theta}", theta=theta)


def iteration_multipliers(spectrum: Sequence[float], theta: float, tau: float) -> npt.NDArray[np.float64]:
    """g_j = 1 + theta*(1 + tau) - theta*lambda_j, in input order."""
    values = np.asarray(spectrum, dtype=np.float64).reshape(-1)
    # theta * (kappa - lambda_j) keeps the cancellation near the optimal shift small
    kappa = 1.0 / theta + 1.0 + tau
    return theta * (kappa - values)


def predicted_rate(spectrum: Sequence[float], ell: int, theta: float, tau: float) -> RatePrediction:
    """max_{j > ell} |g_j| / min_{j <= ell} |g_j| over the full spectrum."""
    values = _sorted_spectrum(spectrum)
    _check_ell(ell, values.shape[0])
    g = np.abs(iteration_multipliers(values, theta, tau))
    denominator = float(np.min(g[:ell]))
    if denominator < DEGENERATE_TOL:
        raise DegenerateShiftError(
            "Shift annihilates a desired eigencomponent; rate is unbounded",
            tau=tau,
            theta=theta,
        )
    return RatePrediction(rate=float(np.max(g[ell:])) / denominator, tau=tau, theta=theta)


def optimal_shift(summary: SpectrumSummary, theta: float) -> float:
    """Shift that balances |g_{ell+1}| = |g_n|: (lambda_{ell+1} + lambda_n)/2 - 1/theta - 1."""
    check_theta(theta)
    return (summary.lambda_ell_plus_1 + summary.lambda_n) / 2.0 - 1.0 / theta - 1.0


def closed_form_rate(summary: SpectrumSummary) -> float:
    """
    Optimal-shift rate (lambda_n - lambda_{ell+1}) / (lambda_n + lambda_{ell+1} - 2*lambda_ell).

    A zero gap returns 1.0, the limit of the formula.
    """
    if summary.lambda_ell == summary.lambda_ell_plus_1:
        return 1.0
    denominator = summary.lambda_n + summary.lambda_ell_plus_1 - 2.0 * summary.lambda_ell
    if denominator <= 0.0:
        raise InvalidSpectrumError("Closed-form rate denominator is not positive", denominator=denominator)
    return (summary.lambda_n - summary.lambda_ell_plus_1) / denominator


def rate_consistency_check(spectrum: Sequence[float], ell: int, theta: float) -> tuple[float, float]:
    """Evaluate the rate both from the multiplier quotient at the optimal shift and in closed form."""
    summary = SpectrumSummary.from_spectrum(spectrum, ell)
    if summary.gap <= 0.0:
        raise InvalidSpectrumError("Consistency check needs a strict gap lambda_ell < lambda_ell_plus_1", gap=summary.gap)
    tau = optimal_shift(summary, theta)
    return predicted_rate(spectrum, ell, theta, tau).rate, closed_form_rate(summary)
