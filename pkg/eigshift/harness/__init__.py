"""Experiment harness: generators, single runs, the reproduction preset and gap sweeps."""

from .experiment import (
    ExperimentResult,
    ExperimentSpec,
    MatrixSource,
    SweepResult,
    gap_spectrum,
    paper_spec,
    resolve_window,
    run_experiment,
    run_gap_sweep,
    run_paper_reproduction,
    trace_records,
)
from .generators import gen_diag, gen_laplacian_1d, laplacian_1d_eigenvalues

__all__ = [
    "ExperimentSpec",
    "ExperimentResult",
    "MatrixSource",
    "SweepResult",
    "gap_spectrum",
    "paper_spec",
    "resolve_window",
    "run_experiment",
    "run_gap_sweep",
    "run_paper_reproduction",
    "trace_records",
    "gen_diag",
    "gen_laplacian_1d",
    "laplacian_1d_eigenvalues",
]
