"""
Experiments - Build a matrix, solve, measure rates and write trace/plot files.
"""

import dataclasses
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np
from rich.console import Console
from rich.table import Table

from ..analysis import (
    ComponentTrace,
    SpectrumSummary,
    closed_form_rate,
    measured_rate,
    predicted_rate,
)
from ..errors import AlreadyConvergedError, ConfigError, EigshiftError
from ..hooks import HookProvider, IterationLoggingHook
from ..linalg import DenseSymMatrix, EigenDecomposition, jacobi_eigensolve
from ..runtime import MetricsExporter, generate_run_id, get_config
from ..solver import InnerKind, OptimalRateShift, SolveReport, SolverConfig, solve
from ..storage import (
    Series,
    SweepRow,
    TraceRecord,
    read_matrix_market,
    write_line_chart,
    write_sweep_csv,
    write_trace_csv,
)
from .generators import GENERATORS

MIN_WINDOW_SPAN = 5

PAPER_SPECTRUM = (1.0, 2.0, 2.01, 4.0)
PAPER_TRACE_NAME = "paper_trace.csv"
PAPER_PLOT_NAME = "paper_fig1.svg"
SWEEP_CSV_NAME = "sweep.csv"
SWEEP_PLOT_NAME = "sweep.svg"

console = Console()


@dataclass(frozen=True)
class MatrixSource:
    """Either a Matrix Market file or a named generator with its argument."""

    path: Path | None = None
    generator: str | None = None
    argument: Any = None

    def __post_init__(self):
        if (self.path is None) == (self.generator is None):
            raise ConfigError("Matrix source needs exactly one of a file path or a generator")
        if self.generator is not None and self.generator not in GENERATORS:
            raise ConfigError(f"Unknown generator '{self.generator}'", generator=self.generator, known=sorted(GENERATORS))

    @classmethod
    def from_file(cls, path: str | Path) -> "MatrixSource":
        return cls(path=Path(path))

    @classmethod
    def diag(cls, spectrum: Sequence[float]) -> "MatrixSource":
        return cls(generator="diag", argument=tuple(float(v) for v in spectrum))

    @classmethod
    def laplacian(cls, n: int) -> "MatrixSource":
        return cls(generator="laplacian", argument=int(n))

    def build(self) -> DenseSymMatrix:
        if self.path is not None:
            return read_matrix_market(self.path)
        return GENERATORS[self.generator](self.argument)

    def describe(self) -> str:
        if self.path is not None:
            return f"file:{self.path}"
        if self.generator == "diag":
            return "diag:" + ",".join(repr(v) for v in self.argument)
        return f"{self.generator}:{self.argument}"


@dataclass(frozen=True)
class ExperimentSpec:
    """
    One experiment.

    Fields:
        matrix: Where the matrix comes from
        config: Solver configuration
        compute_truth: Compute the exact eigendecomposition for diagnostics
        trace_path: Trace CSV output (None: no CSV)
        plot_path: Eigenvalue-error SVG output (None: no plot; needs truth)
        window: (k_start, k_end) for measured rates; None means (window_start, last iteration)
        plot_indices: Block indices to plot (None: all)
        label: Name used for run ids and plot titles
    """

    matrix: MatrixSource
    config: SolverConfig
    compute_truth: bool = True
    trace_path: Path | None = None
    plot_path: Path | None = None
    window: tuple[int, int] | None = None
    plot_indices: tuple[int, ...] | None = None
    label: str = "experiment"

    def __post_init__(self):
        if self.window is not None and not 0 <= self.window[0] < self.window[1]:
            raise ConfigError("Measured-rate window must satisfy 0 <= k_start < k_end", window=self.window)

    def resolved(self) -> dict:
        return {
            "matrix": self.matrix.describe(),
            **self.config.resolved(),
            "truth": self.compute_truth,
            "trace": str(self.trace_path) if self.trace_path else None,
            "plot": str(self.plot_path) if self.plot_path else None,
            "window": list(self.window) if self.window else None,
        }


@dataclass
class ExperimentResult:
    report: SolveReport
    truth: EigenDecomposition | None
    predicted_rate: float | None
    closed_form_rate: float | None
    measured_rates: list[float | None]
    windows: list[tuple[int, int] | None]
    files: dict[str, Path] = field(default_factory=dict)

    @property
    def tau(self) -> float:
        return self.report.shifts[-1]


def resolve_window(ratios: np.ndarray, k_start: int, k_end: int, floor: float) -> tuple[int, int] | None:
    """
    Clip [k_start, k_end] to the stretch where the ratio is above the noise floor.

    If the clipped window is shorter than MIN_WINDOW_SPAN steps the start moves
    back to a quarter of the clipped end.
    """
    k_end = min(k_end, len(ratios) - 1)
    below = np.flatnonzero(~(ratios[: k_end + 1] > floor))
    if below.size:
        k_end = int(below[0]) - 1
    if k_end - k_start < MIN_WINDOW_SPAN:
        k_start = max(1, k_end // 4)
    if k_start >= k_end:
        return None
    return k_start, k_end


def trace_records(report: SolveReport) -> list[TraceRecord]:
    """
    One record per (outer iteration, inner step, block index).

    Steps before the last one of an outer iteration report the Rayleigh quotient
    of each column; the last step reports the projected block.
    """
    records = []
    for k in range(report.outer_iterations_used):
        tau = float(report.shifts[k])
        intermediate = report.inner_history[k] if k < len(report.inner_history) else []
        for j, step in enumerate(intermediate, start=1):
            for i in range(report.config.ell):
                records.append(
                    TraceRecord(
                        outer_iter=k + 1,
                        inner_step=j,
                        i=i,
                        ritz_value=float(step.rayleigh_quotients[i]),
                        abs_err=None if step.eigenvalue_errors is None else float(step.eigenvalue_errors[i]),
                        component_ratio=None if step.component_ratios is None else float(step.component_ratios[i]),
                        tau=tau,
                        residual=float(step.residuals[i]),
                    )
                )
        for i in range(report.config.ell):
            abs_err = None if report.eigenvalue_errors is None else float(report.eigenvalue_errors[k][i])
            ratio = None if report.trace is None else float(report.trace.ratios[k + 1][i])
            records.append(
                TraceRecord(
                    outer_iter=k + 1,
                    inner_step=len(intermediate) + 1,
                    i=i,
                    ritz_value=float(report.ritz_history[k][i]),
                    abs_err=abs_err,
                    component_ratio=ratio,
                    tau=tau,
                    residual=float(report.residuals_per_iteration[k][i]),
                )
            )
    return records


def _measure(trace: ComponentTrace, window: tuple[int, int] | None, floor: float, window_start: int) -> tuple[list, list]:
    rates: list[float | None] = []
    windows: list[tuple[int, int] | None] = []
    for i in range(trace.ell):
        k_start, k_end = window if window is not None else (window_start, len(trace) - 1)
        resolved = resolve_window(trace.ratio_series(i), k_start, k_end, floor)
        windows.append(resolved)
        if resolved is None:
            rates.append(None)
            continue
        try:
            rates.append(measured_rate(trace, i, *resolved))
        except AlreadyConvergedError:
            rates.append(None)
    return rates, windows


def _predict(config: SolverConfig, truth: EigenDecomposition, tau: float) -> tuple[float | None, float | None]:
    if config.inner is not InnerKind.RICHARDSON or truth.n <= config.ell:
        return None, None
    spectrum = truth.eigenvalues
    summary = SpectrumSummary.from_spectrum(spectrum, config.ell)
    closed = closed_form_rate(summary) if isinstance(config.shift, OptimalRateShift) else None
    try:
        return predicted_rate(spectrum, config.ell, config.theta, tau).rate, closed
    except EigshiftError:
        return None, closed


def _error_plot(spec: ExperimentSpec, report: SolveReport) -> list[Series]:
    indices = spec.plot_indices if spec.plot_indices is not None else range(spec.config.ell)
    iterations = list(range(1, report.outer_iterations_used + 1))
    return [
        Series(
            label=f"|lambda_{i + 1} error|",
            x=iterations,
            y=[float(err[i]) for err in report.eigenvalue_errors],
        )
        for i in indices
    ]


def run_experiment(
    spec: ExperimentSpec,
    hooks: Iterable[HookProvider] = (),
    quiet: bool = False,
    out: Console | None = None,
) -> ExperimentResult:
    """
    Build the matrix, optionally compute the truth, solve, write files and print a summary.

    Solver errors are re-raised with the experiment context attached.
    """
    settings = get_config()
    out = out or console
    hooks = list(hooks)
    if settings.verbose and not any(isinstance(h, IterationLoggingHook) for h in hooks):
        hooks.append(IterationLoggingHook(every=max(1, spec.config.max_outer // 20)))

    context = {"experiment": spec.label, "matrix": spec.matrix.describe()}
    exporter = MetricsExporter(generate_run_id(spec.label)) if settings.export_metrics else None

    try:
        started = time.perf_counter()
        A = spec.matrix.build()
        truth = jacobi_eigensolve(A) if spec.compute_truth else None
        built = time.perf_counter()
        report = solve(A, spec.config, truth=truth, hooks=hooks)
        solved = time.perf_counter()
    except EigshiftError as e:
        raise e.with_context(**context)

    predicted = closed = None
    measured: list[float | None] = [None] * spec.config.ell
    windows: list[tuple[int, int] | None] = [None] * spec.config.ell
    if truth is not None:
        predicted, closed = _predict(spec.config, truth, report.shifts[-1])
        measured, windows = _measure(report.trace, spec.window, settings.ratio_floor, settings.window_start)

    result = ExperimentResult(report, truth, predicted, closed, measured, windows)

    try:
        if spec.trace_path is not None:
            result.files["trace"] = write_trace_csv(spec.trace_path, trace_records(report))
        if spec.plot_path is not None and truth is not None:
            result.files["plot"] = write_line_chart(
                spec.plot_path,
                _error_plot(spec, report),
                title=f"Eigenvalue errors: {spec.label}",
                x_label="outer iteration",
                y_label="absolute eigenvalue error",
            )
    except EigshiftError as e:
        raise e.with_context(**context)

    if exporter is not None:
        exporter.set_from_report(report)
        exporter.set("matrix", spec.matrix.describe(), category="config")
        exporter.set_timing("setup_seconds", built - started)
        exporter.set_timing("solve_seconds", solved - built)
        exporter.set_stats("predicted_rate", predicted)
        exporter.set_stats("measured_rates", measured)
        result.files["metrics"] = exporter.export()

    if not quiet:
        print_summary(result, out)
    return result


def print_summary(result: ExperimentResult, out: Console) -> None:
    report = result.report
    status = "[green]converged[/green]" if report.converged else "[yellow]not converged[/yellow]"
    out.print(f"\n[bold]Outer iterations:[/bold] {report.outer_iterations_used} ({status})")
    out.print(f"[bold]Final shift:[/bold] tau = {result.tau:.10g}")

    table = Table(title="Final eigenpair approximations")
    table.add_column("i", justify="right")
    table.add_column("ritz value", justify="right")
    table.add_column("residual", justify="right")
    if result.truth is not None:
        table.add_column("abs error", justify="right")
        table.add_column("measured rate", justify="right")
        table.add_column("window", justify="right")
    for i, value in enumerate(report.final.ritz_values):
        row = [str(i + 1), f"{value:.15g}", f"{report.residuals_per_iteration[-1][i]:.3e}"]
        if result.truth is not None:
            rate = result.measured_rates[i]
            window = result.windows[i]
            row += [
                f"{report.eigenvalue_errors[-1][i]:.3e}",
                "-" if rate is None else f"{rate:.6f}",
                "-" if window is None else f"[{window[0]}, {window[1]}]",
            ]
        table.add_row(*row)
    out.print(table)

    if result.predicted_rate is not None:
        out.print(f"[bold]Predicted rate (multiplier quotient):[/bold] {result.predicted_rate:.6f}")
    if result.closed_form_rate is not None:
        out.print(f"[bold]Predicted rate (closed form):[/bold] {result.closed_form_rate:.6f}")
    for name, path in result.files.items():
        out.print(f"[green]Wrote {name}:[/green] {path}")


def paper_spec(out_dir: str | Path) -> ExperimentSpec:
    """The numerical example: diag(1, 2, 2.01, 4), ell = 2, theta = 0.5, optimal shift, 500 steps."""
    out_dir = Path(out_dir)
    config = SolverConfig(
        ell=2,
        inner=InnerKind.RICHARDSON,
        theta=0.5,
        inner_steps=1,
        shift=OptimalRateShift(2.01, 4.0),
        max_outer=500,
        tol=1e-10,
        seed=0,
    )
    return ExperimentSpec(
        matrix=MatrixSource.diag(PAPER_SPECTRUM),
        config=config,
        compute_truth=True,
        trace_path=out_dir / PAPER_TRACE_NAME,
        plot_path=out_dir / PAPER_PLOT_NAME,
        window=(20, 500),
        plot_indices=(1,),
        label="paper",
    )


def run_paper_reproduction(out_dir: str | Path | None = None, quiet: bool = False, out: Console | None = None) -> ExperimentResult:
    """Run the fixed reproduction preset and write paper_trace.csv / paper_fig1.svg."""
    out_dir = Path(out_dir) if out_dir is not None else get_config().out_dir
    return run_experiment(paper_spec(out_dir), quiet=quiet, out=out)


def gap_spectrum(summary: SpectrumSummary, gap: float, ell: int) -> list[float]:
    """(lambda_ell - (ell-1), ..., lambda_ell - 1, lambda_ell, lambda_ell + gap, lambda_n)."""
    lower = [summary.lambda_ell - (ell - i) for i in range(1, ell)]
    return lower + [summary.lambda_ell, summary.lambda_ell + gap, summary.lambda_n]


@dataclass
class SweepResult:
    rows: list[SweepRow]
    results: list[ExperimentResult]
    files: dict[str, Path] = field(default_factory=dict)


def run_gap_sweep(
    gaps: Sequence[float],
    base: SpectrumSummary,
    config: SolverConfig,
    out_dir: str | Path | None = None,
    workers: int | None = None,
    quiet: bool = False,
    out: Console | None = None,
) -> SweepResult:
    """
    Solve one diagonal problem per gap with the optimal shift and compare measured to closed-form rates.

    Only ``base.lambda_ell`` and ``base.lambda_n`` are used; the middle value
    is replaced by lambda_ell + gap. Entries run on a thread pool and are
    sorted by gap before writing.
    """
    gaps = [float(g) for g in gaps]
    if not gaps:
        raise ConfigError("Gap sweep needs at least one gap")
    span = base.lambda_n - base.lambda_ell
    for g in gaps:
        if not g > 0.0:
            raise ConfigError(f"Gaps must be positive, got {g}", gap=g)
        if g > span:
            raise ConfigError(f"Gap {g} exceeds lambda_n - lambda_ell = {span}", gap=g, span=span)
    if config.inner is not InnerKind.RICHARDSON:
        raise ConfigError("Gap sweeps compare against the Richardson rate; use the richardson inner solver")

    settings = get_config()
    out = out or console
    out_dir = Path(out_dir) if out_dir is not None else settings.out_dir
    workers = workers or settings.sweep_workers

    def one(gap: float) -> tuple[float, ExperimentResult]:
        lp1 = base.lambda_ell + gap
        spec = ExperimentSpec(
            matrix=MatrixSource.diag(gap_spectrum(base, gap, config.ell)),
            config=dataclasses.replace(config, shift=OptimalRateShift(lp1, base.lambda_n)),
            compute_truth=True,
            label=f"sweep_gap_{gap:g}",
        )
        return gap, run_experiment(spec, quiet=True, out=out)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        outcomes = sorted(pool.map(one, gaps), key=lambda pair: pair[0])

    rows = []
    for gap, result in outcomes:
        predicted = closed_form_rate(SpectrumSummary(base.lambda_ell, base.lambda_ell + gap, base.lambda_n))
        rows.append(SweepRow(gap=gap, predicted_rate=predicted, measured_rate=result.measured_rates[config.ell - 1]))

    sweep = SweepResult(rows=rows, results=[r for _, r in outcomes])
    log_gaps = [float(np.log10(r.gap)) for r in rows]
    sweep.files["sweep"] = write_sweep_csv(out_dir / SWEEP_CSV_NAME, rows)
    sweep.files["plot"] = write_line_chart(
        out_dir / SWEEP_PLOT_NAME,
        [
            Series("predicted", log_gaps, [r.predicted_rate for r in rows]),
            Series("measured", log_gaps, [np.nan if r.measured_rate is None else r.measured_rate for r in rows]),
        ],
        title="Contraction rate vs eigenvalue gap",
        x_label="log10(gap)",
        y_label="rate per Richardson step",
        log_y=False,
    )

    if not quiet:
        table = Table(title="Gap sweep")
        table.add_column("gap", justify="right")
        table.add_column("predicted", justify="right")
        table.add_column("measured", justify="right")
        for r in rows:
            table.add_row(f"{r.gap:g}", f"{r.predicted_rate:.6f}", "-" if r.measured_rate is None else f"{r.measured_rate:.6f}")
        out.print(table)
        for name, path in sweep.files.items():
            out.print(f"[green]Wrote {name}:[/green] {path}")
    return sweep
