#!/usr/bin/env python3
"""eigshift CLI - block shift-inverse eigensolver and convergence-rate experiments."""

import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Optional

import click
import typer
from dotenv import load_dotenv
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from typer.core import TyperGroup

from eigshift.errors import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, ConfigError, EigshiftError

load_dotenv()


class ExitCodeGroup(TyperGroup):
    """Click reports usage errors with exit code 2; eigshift reserves 2 for numerical failures."""

    def main(self, *args, standalone_mode: bool = True, **kwargs):
        if not standalone_mode:
            return super().main(*args, standalone_mode=False, **kwargs)
        try:
            rv = super().main(*args, standalone_mode=False, **kwargs)
        except click.UsageError as e:
            e.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as e:
            e.show()
            sys.exit(e.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        sys.exit(rv if isinstance(rv, int) else EXIT_OK)


app = typer.Typer(
    name="eigshift",
    help="Block shift-inverse eigensolver with Richardson inner steps and rate analysis.",
    no_args_is_help=True,
    cls=ExitCodeGroup,
)
console = Console()


@contextmanager
def handle_errors():
    """Print eigshift errors in red and exit with their code."""
    try:
        yield
    except EigshiftError as e:
        console.print(f"[red]Error:[/red] {escape(str(e))}")
        raise typer.Exit(e.exit_code)


def parse_floats(text: str, flag: str) -> list[float]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ConfigError(f"{flag} needs at least one value", flag=flag)
    try:
        return [float(p) for p in parts]
    except ValueError as e:
        raise ConfigError(f"{flag} expects comma-separated numbers, got '{text}'", flag=flag) from e


def show_config(title: str, resolved: dict) -> None:
    lines = "\n".join(f"[bold]{key}:[/bold] {escape(str(value))}" for key, value in resolved.items())
    console.print(Panel(lines, title=title, expand=False))


def matrix_source(matrix: Optional[Path], diag: Optional[str], laplacian: Optional[int]):
    from eigshift.harness import MatrixSource

    given = [v is not None for v in (matrix, diag, laplacian)]
    if sum(given) != 1:
        raise ConfigError("Give exactly one of --matrix, --diag or --laplacian")
    if matrix is not None:
        return MatrixSource.from_file(matrix)
    if diag is not None:
        return MatrixSource.diag(parse_floats(diag, "--diag"))
    return MatrixSource.laplacian(laplacian)


@app.command()
def solve(
    matrix: Optional[Path] = typer.Option(None, "--matrix", help="Matrix Market file (symmetric, real)"),
    diag: Optional[str] = typer.Option(None, "--diag", help="Diagonal matrix, e.g. 1,2,2.01,4"),
    laplacian: Optional[int] = typer.Option(None, "--laplacian", help="1-D Laplacian of order N"),
    ell: int = typer.Option(2, "--l", help="Block size (number of wanted eigenpairs)"),
    inner: str = typer.Option("direct", "--inner", help="Inner solver: direct or richardson"),
    theta: float = typer.Option(0.5, "--theta", help="Richardson relaxation parameter in (0, 1)"),
    inner_steps: int = typer.Option(1, "--inner-steps", help="Richardson steps per outer iteration"),
    shift: str = typer.Option("rayleigh", "--shift", help="rayleigh, fixed:VAL or optimal:LP1,LN"),
    max_outer: int = typer.Option(500, "--max-outer", help="Outer iteration cap"),
    tol: float = typer.Option(1e-10, "--tol", help="Residual tolerance"),
    seed: int = typer.Option(0, "--seed", help="Seed of the random starting block"),
    trace: Optional[Path] = typer.Option(None, "--trace", help="Write the per-iteration trace CSV here"),
    plot: Optional[Path] = typer.Option(None, "--plot", help="Write the eigenvalue-error SVG here (needs --truth)"),
    truth: bool = typer.Option(False, "--truth", help="Compute the exact eigendecomposition for diagnostics"),
    window_start: Optional[int] = typer.Option(None, "--window-start", help="First iteration of the measured-rate window"),
    window_end: Optional[int] = typer.Option(None, "--window-end", help="Last iteration of the measured-rate window"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log every outer iteration"),
):
    """Run the block shift-inverse solver on one matrix."""
    from eigshift.harness import ExperimentSpec, run_experiment
    from eigshift.hooks import IterationLoggingHook
    from eigshift.runtime import get_config
    from eigshift.solver import InnerKind, SolverConfig, parse_shift

    with handle_errors():
        if inner not in (k.value for k in InnerKind):
            raise ConfigError(f"--inner must be direct or richardson, got '{inner}'", inner=inner)
        config = SolverConfig(
            ell=ell,
            inner=InnerKind(inner),
            theta=theta,
            inner_steps=inner_steps,
            shift=parse_shift(shift),
            max_outer=max_outer,
            tol=tol,
            seed=seed,
        )
        window = None
        if window_start is not None or window_end is not None:
            window = (
                window_start if window_start is not None else get_config().window_start,
                window_end if window_end is not None else max_outer,
            )
        spec = ExperimentSpec(
            matrix=matrix_source(matrix, diag, laplacian),
            config=config,
            compute_truth=truth,
            trace_path=trace,
            plot_path=plot,
            window=window,
            label="solve",
        )
        show_config("Resolved configuration", spec.resolved())

        hooks = [IterationLoggingHook(every=max(1, max_outer // 20))] if verbose else []
        result = run_experiment(spec, hooks=hooks, out=console)

    if not result.report.converged:
        raise typer.Exit(EXIT_NUMERICAL)


@app.command("predict-rate")
def predict_rate(
    lambda_l: float = typer.Option(..., "--lambda-l", help="Largest wanted eigenvalue lambda_ell"),
    lambda_l1: float = typer.Option(..., "--lambda-l1", help="Smallest unwanted eigenvalue lambda_ell+1"),
    lambda_n: float = typer.Option(..., "--lambda-n", help="Largest eigenvalue lambda_n"),
    theta: float = typer.Option(0.5, "--theta", help="Richardson relaxation parameter in (0, 1)"),
    spectrum: Optional[str] = typer.Option(None, "--spectrum", help="Full ascending spectrum for the multiplier-quotient rate"),
    ell: Optional[int] = typer.Option(None, "--l", help="Block size for --spectrum"),
):
    """Print the optimal shift and the closed-form contraction rate."""
    from eigshift.analysis import (
        SpectrumSummary,
        check_theta,
        closed_form_rate,
        optimal_shift,
        predicted_rate,
        rate_consistency_check,
    )

    with handle_errors():
        show_config(
            "Resolved configuration",
            {
                "lambda_l": lambda_l,
                "lambda_l1": lambda_l1,
                "lambda_n": lambda_n,
                "theta": theta,
                "spectrum": spectrum,
                "l": ell,
            },
        )
        check_theta(theta)
        summary = SpectrumSummary(lambda_l, lambda_l1, lambda_n)
        tau = optimal_shift(summary, theta)
        rate = closed_form_rate(summary)
        console.print(f"[bold]Optimal shift:[/bold] tau = {tau:.10g}")
        console.print(f"[bold]Closed-form rate:[/bold] rate = {rate:.6f}")

        if spectrum is not None:
            if ell is None:
                raise ConfigError("--spectrum needs --l")
            values = parse_floats(spectrum, "--spectrum")
            prediction = predicted_rate(values, ell, theta, tau)
            console.print(f"[bold]Multiplier-quotient rate at this shift:[/bold] {prediction.rate:.6f}")
            quotient, closed = rate_consistency_check(values, ell, theta)
            console.print(f"[bold]Consistency check:[/bold] quotient = {quotient:.12g}, closed form = {closed:.12g}")


@app.command("reproduce-paper")
def reproduce_paper(
    out_dir: Optional[Path] = typer.Option(None, "--out-dir", help="Directory for paper_trace.csv and paper_fig1.svg"),
):
    """Run the diag(1, 2, 2.01, 4) example and compare predicted to measured rate."""
    from eigshift.harness import paper_spec, run_paper_reproduction
    from eigshift.runtime import get_config

    with handle_errors():
        out_dir = out_dir if out_dir is not None else get_config().out_dir
        show_config("Resolved configuration", paper_spec(out_dir).resolved())
        with console.status("[bold green]Running 500 outer iterations..."):
            result = run_paper_reproduction(out_dir, out=console)

    measured = result.measured_rates[1]
    measured_text = "-" if measured is None else f"{measured:.6f}"
    console.print(f"\n[bold]lambda_2 rate:[/bold] predicted {result.closed_form_rate:.6f}, measured {measured_text}")


@app.command()
def sweep(
    gaps: str = typer.Option(..., "--gaps", help="Comma-separated gaps lambda_ell+1 - lambda_ell"),
    lambda_l: float = typer.Option(2.0, "--lambda-l", help="lambda_ell"),
    lambda_n: float = typer.Option(4.0, "--lambda-n", help="lambda_n"),
    theta: float = typer.Option(0.5, "--theta", help="Richardson relaxation parameter in (0, 1)"),
    ell: int = typer.Option(2, "--l", help="Block size"),
    inner_steps: int = typer.Option(1, "--inner-steps", help="Richardson steps per outer iteration"),
    max_outer: int = typer.Option(500, "--max-outer", help="Outer iteration cap per gap"),
    tol: float = typer.Option(1e-10, "--tol", help="Residual tolerance"),
    seed: int = typer.Option(0, "--seed", help="Seed of the random starting block"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Thread pool size (default: EIGSHIFT_SWEEP_WORKERS)"),
    out_dir: Optional[Path] = typer.Option(None, "--out-dir", help="Directory for sweep.csv and sweep.svg"),
):
    """Measure the contraction rate across eigenvalue gaps."""
    from eigshift.analysis import SpectrumSummary
    from eigshift.harness import run_gap_sweep
    from eigshift.runtime import get_config
    from eigshift.solver import InnerKind, SolverConfig

    with handle_errors():
        gap_values = parse_floats(gaps, "--gaps")
        config = SolverConfig(
            ell=ell,
            inner=InnerKind.RICHARDSON,
            theta=theta,
            inner_steps=inner_steps,
            max_outer=max_outer,
            tol=tol,
            seed=seed,
        )
        base = SpectrumSummary(lambda_l, lambda_l, lambda_n)
        settings = get_config()
        out_dir = out_dir if out_dir is not None else settings.out_dir
        workers = workers if workers is not None else settings.sweep_workers
        if workers < 1:
            raise ConfigError(f"--workers must be >= 1, got {workers}", workers=workers)
        resolved = {
            "gaps": gap_values,
            "lambda_l": lambda_l,
            "lambda_n": lambda_n,
            **config.resolved(),
            "shift": "optimal per gap",
            "workers": workers,
            "out_dir": str(out_dir),
        }
        show_config("Resolved configuration", resolved)
        with console.status(f"[bold green]Sweeping {len(gap_values)} gaps..."):
            run_gap_sweep(gap_values, base, config, out_dir=out_dir, workers=workers, out=console)


@app.command("write-matrix")
def write_matrix(
    diag: Optional[str] = typer.Option(None, "--diag", help="Diagonal matrix, e.g. 1,2,2.01,4"),
    laplacian: Optional[int] = typer.Option(None, "--laplacian", help="1-D Laplacian of order N"),
    out: Path = typer.Option(..., "--out", help="Matrix Market file to write"),
):
    """Write a generated matrix in Matrix Market format."""
    from eigshift.storage import write_matrix_market

    with handle_errors():
        source = matrix_source(None, diag, laplacian)
        show_config("Resolved configuration", {"matrix": source.describe(), "out": str(out)})
        path = write_matrix_market(out, source.build(), comment=source.describe())
    console.print(f"[green]Wrote matrix:[/green] {path}")


def main():
    """Entry point."""
    app()


if __name__ == "__main__":
    main()
