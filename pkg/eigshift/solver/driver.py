"""
Block shift-inverse driver.

Each outer iteration picks a shift, runs the configured inner solve on every
block column and projects A onto the span of the results (Rayleigh-Ritz).
"""

import dataclasses
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import numpy.typing as npt

from ..analysis.trace import ComponentTrace, component_ratios, expand_components
from ..errors import IndefiniteError, NearSingularShiftError
from ..hooks.registry import HookProvider, HookRegistry, OuterEndEvent, OuterStartEvent
from ..linalg import DenseSymMatrix, EigenDecomposition, a_norm
from .block import IterateBlock, init_random_block, rayleigh_quotients
from .config import InnerKind, SolverConfig
from .inner import inner_solve_direct, inner_solve_richardson
from .ritz import rayleigh_ritz

SHIFT_PERTURBATION = 1e-8


@dataclass(frozen=True)
class InnerStep:
    """Block columns after a Richardson step that is followed by another one, before projection."""

    rayleigh_quotients: npt.NDArray[np.float64]
    residuals: npt.NDArray[np.float64]
    component_ratios: npt.NDArray[np.float64] | None = None
    eigenvalue_errors: npt.NDArray[np.float64] | None = None

    @classmethod
    def measure(cls, A: DenseSymMatrix, X: npt.NDArray[np.float64], truth: EigenDecomposition | None) -> "InnerStep":
        rho = rayleigh_quotients(A, X)
        residuals = np.linalg.norm(A.entries @ X - X * rho, axis=0)
        if truth is None:
            return cls(rho, residuals)
        ell = X.shape[1]
        ratios = component_ratios(X.T @ truth.eigenvectors, ell)
        return cls(rho, residuals, ratios, np.abs(rho - truth.eigenvalues[:ell]))


@dataclass
class SolveReport:
    """
    Outcome of one solve.

    Every ``*_per_iteration``/history list has one entry per outer iteration
    performed. ``trace`` additionally holds the starting block at index 0.
    ``inner_history[k]`` lists the Richardson steps of iteration k that precede
    its last one; it is empty for direct solves and for one step per iteration.
    """

    final: IterateBlock
    outer_iterations_used: int
    residuals_per_iteration: list[npt.NDArray[np.float64]]
    converged: bool
    config: SolverConfig
    ritz_history: list[npt.NDArray[np.float64]] = field(default_factory=list)
    shifts: list[float] = field(default_factory=list)
    trace: ComponentTrace | None = None
    eigenvalue_errors: list[npt.NDArray[np.float64]] | None = None
    a_norm_errors: list[list[float | None]] | None = None
    inner_history: list[list[InnerStep]] = field(default_factory=list)

    @property
    def max_residuals(self) -> npt.NDArray[np.float64]:
        return np.array([r.max() for r in self.residuals_per_iteration])


def outer_iterate(
    A: DenseSymMatrix,
    config: SolverConfig,
    block: IterateBlock,
    inner_steps: list[npt.NDArray[np.float64]] | None = None,
) -> IterateBlock:
    """
    One outer step: shift selection, inner solve, Rayleigh-Ritz. The result carries tau.

    ``inner_steps`` collects the normalized block after each Richardson step.
    """
    tau = config.shift.resolve(block, config.theta)

    if config.inner is InnerKind.DIRECT:
        try:
            columns = inner_solve_direct(A, tau, block)
        except NearSingularShiftError:
            # the blown-up direction is the eigenvector, so a nudged shift still informs
            tau = tau + SHIFT_PERTURBATION * A.frobenius_norm
            columns = inner_solve_direct(A, tau, block)
    else:
        columns = inner_solve_richardson(A, tau, config.theta, config.inner_steps, block, steps=inner_steps)

    projected = rayleigh_ritz(A, columns)
    return dataclasses.replace(projected, outer_index=block.outer_index + 1, tau=tau)


def _sign_aligned_a_errors(A: DenseSymMatrix, truth: EigenDecomposition, block: IterateBlock) -> list[float | None]:
    errors: list[float | None] = []
    for i in range(block.ell):
        phi = truth.phi(i)
        x = block.X[:, i]
        sign = 1.0 if phi @ x >= 0.0 else -1.0
        try:
            errors.append(a_norm(A, phi - sign * x))
        except IndefiniteError:
            errors.append(None)
    return errors


def solve(
    A: DenseSymMatrix,
    config: SolverConfig,
    truth: EigenDecomposition | None = None,
    hooks: Iterable[HookProvider] = (),
    start: IterateBlock | None = None,
) -> SolveReport:
    """
    Run outer iterations until max_i ||A x_i - lambda_i x_i|| <= tol or max_outer.

    Running out of iterations is reported through ``converged = False``, not
    raised. With ``truth`` the report also carries the component trace and
    eigenvalue / A-norm error histories.
    """
    config.validate_for(A.n)
    registry = HookRegistry(hooks)

    block = start if start is not None else init_random_block(A.n, config.ell, config.seed, A)

    trace = None
    eigenvalue_errors = None
    a_norm_errors = None
    if truth is not None:
        trace = ComponentTrace(ell=config.ell, inner_steps=config.inner_steps)
        trace.record(expand_components(truth, block))
        eigenvalue_errors = []
        a_norm_errors = []

    residual_history: list[npt.NDArray[np.float64]] = []
    ritz_history: list[npt.NDArray[np.float64]] = []
    shifts: list[float] = []
    inner_history: list[list[InnerStep]] = []
    converged = False

    for _ in range(config.max_outer):
        registry.invoke(OuterStartEvent(block.outer_index + 1, config.shift.resolve(block, config.theta), block))
        steps: list[npt.NDArray[np.float64]] = []
        block = outer_iterate(A, config, block, inner_steps=steps)
        inner_history.append([InnerStep.measure(A, X, truth) for X in steps[:-1]])

        residuals = block.residuals(A)
        residual_history.append(residuals)
        ritz_history.append(block.ritz_values)
        shifts.append(float(block.tau))
        if truth is not None:
            trace.record(expand_components(truth, block))
            eigenvalue_errors.append(np.abs(block.ritz_values - truth.eigenvalues[: config.ell]))
            a_norm_errors.append(_sign_aligned_a_errors(A, truth, block))

        converged = bool(residuals.max() <= config.tol)
        registry.invoke(OuterEndEvent(block.outer_index, block, residuals, converged))
        if converged:
            break

    return SolveReport(
        final=block,
        outer_iterations_used=len(residual_history),
        residuals_per_iteration=residual_history,
        converged=converged,
        config=config,
        ritz_history=ritz_history,
        shifts=shifts,
        trace=trace,
        eigenvalue_errors=eigenvalue_errors,
        a_norm_errors=a_norm_errors,
        inner_history=inner_history,
    )
