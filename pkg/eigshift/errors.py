"""
Errors - Structured exceptions shared by every eigshift module.

Each error carries a human-readable message plus a ``context`` dict with the
values that produced it, and declares the CLI exit code it maps to.
"""

from typing import Any

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


class EigshiftError(Exception):
    """Base class for all eigshift errors."""

    exit_code: int = EXIT_NUMERICAL

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context: dict[str, Any] = context

    def with_context(self, **extra: Any) -> "EigshiftError":
        """Attach more context (e.g. experiment paths) and return self for re-raising."""
        self.context.update(extra)
        return self

    def __str__(self) -> str:
        if not self.context:
            return self.message
        details = ", ".join(f"{key}={value}" for key, value in self.context.items())
        return f"{self.message} ({details})"


# Usage / configuration


class ConfigError(EigshiftError, ValueError):
    """Invalid solver, experiment or CLI parameters."""

    exit_code = EXIT_USAGE


# Numerical


class DimensionMismatchError(EigshiftError, ValueError):
    def __init__(self, what: str, expected: int, actual: int):
        super().__init__(
            f"Dimension mismatch in {what}: expected {expected}, got {actual}",
            expected=expected,
            actual=actual,
        )


class NotSymmetricError(EigshiftError, ValueError):
    pass


class NonFiniteError(EigshiftError, ValueError):
    pass


class IndefiniteError(EigshiftError):
    pass


class RankDeficiencyError(EigshiftError):
    def __init__(self, column: int, residual_norm: float, original_norm: float):
        super().__init__(
            f"Column {column} is linearly dependent on the previous columns",
            column=column,
            residual_norm=residual_norm,
            original_norm=original_norm,
        )
        self.column = column


class NearSingularShiftError(EigshiftError):
    def __init__(self, tau: float, pivot: float, row: int):
        super().__init__(
            f"Shifted matrix A - tau*I is numerically singular at tau={tau!r}",
            tau=tau,
            pivot=pivot,
            row=row,
        )
        self.tau = tau


class ConvergenceFailureError(EigshiftError):
    def __init__(self, sweeps: int, residual: float):
        super().__init__(
            f"Jacobi eigensolver did not converge in {sweeps} sweeps",
            sweeps=sweeps,
            residual=residual,
        )
        self.residual = residual


class AnnihilationError(EigshiftError):
    def __init__(self, tau: float, theta: float, column: int):
        super().__init__(
            "Richardson step annihilated every component of a column",
            tau=tau,
            theta=theta,
            column=column,
        )


class DegenerateShiftError(EigshiftError):
    pass


class InvalidSpectrumError(EigshiftError, ValueError):
    exit_code = EXIT_USAGE


class AlreadyConvergedError(EigshiftError):
    """The component ratio at the window start is exactly zero; not a numerical failure."""


# I/O


class ExperimentIOError(EigshiftError, OSError):
    exit_code = EXIT_IO

    def __init__(self, path: Any, reason: str):
        super().__init__(f"Cannot write or read {path}: {reason}", path=str(path))
        self.path = path


class MatrixMarketError(EigshiftError):
    exit_code = EXIT_IO
