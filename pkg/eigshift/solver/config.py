"""
Solver Configuration - Parameters of one block shift-inverse run.

Shift strategies are small frozen dataclasses that know how to pick the
shift tau_k for the current block.
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Union

from ..analysis.rates import SpectrumSummary, check_theta, optimal_shift
from ..errors import ConfigError

if TYPE_CHECKING:
    from .block import IterateBlock


class InnerKind(str, Enum):
    DIRECT = "direct"
    RICHARDSON = "richardson"


@dataclass(frozen=True)
class RayleighShift:
    """tau_k = smallest current Ritz value."""

    def resolve(self, block: "IterateBlock", theta: float) -> float:
        if block.ritz_values.size == 0:
            raise ConfigError("Rayleigh shift needs Ritz values on the current block")
        return float(block.ritz_values[0])

    def describe(self) -> str:
        return "rayleigh"


@dataclass(frozen=True)
class FixedShift:
    tau: float

    def resolve(self, block: "IterateBlock", theta: float) -> float:
        return self.tau

    def describe(self) -> str:
        return f"fixed:{self.tau!r}"


@dataclass(frozen=True)
class OptimalRateShift:
    """Balances the extreme undesired multipliers for the configured theta."""

    lambda_ell_plus_1: float
    lambda_n: float

    def __post_init__(self):
        if self.lambda_ell_plus_1 > self.lambda_n:
            raise ConfigError(
                "Optimal-rate shift needs lambda_ell_plus_1 <= lambda_n",
                lambda_ell_plus_1=self.lambda_ell_plus_1,
                lambda_n=self.lambda_n,
            )

    def resolve(self, block: "IterateBlock", theta: float) -> float:
        # lambda_ell does not enter the shift formula
        summary = SpectrumSummary(self.lambda_ell_plus_1, self.lambda_ell_plus_1, self.lambda_n)
        return optimal_shift(summary, theta)

    def describe(self) -> str:
        return f"optimal:{self.lambda_ell_plus_1!r},{self.lambda_n!r}"


ShiftStrategy = Union[RayleighShift, FixedShift, OptimalRateShift]


def parse_shift(text: str) -> ShiftStrategy:
    """Parse ``rayleigh``, ``fixed:VAL`` or ``optimal:LP1,LN``."""
    kind, _, args = text.strip().partition(":")
    kind = kind.lower()
    try:
        if kind == "rayleigh" and not args:
            return RayleighShift()
        if kind == "fixed":
            return FixedShift(float(args))
        if kind == "optimal":
            lp1, ln = (float(v) for v in args.split(","))
            return OptimalRateShift(lp1, ln)
    except ValueError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"Cannot parse shift '{text}': {e}", shift=text) from e
    raise ConfigError(f"Unknown shift '{text}'; use rayleigh, fixed:VAL or optimal:LP1,LN", shift=text)


@dataclass(frozen=True)
class SolverConfig:
    """
    Configuration for one solve.

    Fields:
        ell: Block size (number of wanted eigenpairs)
        inner: Inner solver kind
        theta: Richardson relaxation parameter, in (0, 1)
        inner_steps: Richardson applications per outer iteration
        shift: Shift strategy
        max_outer: Outer iteration cap
        tol: Stop when max_i ||A x_i - lambda_i x_i|| <= tol
        seed: Seed of the random starting block
    """

    ell: int = 2
    inner: InnerKind = InnerKind.DIRECT
    theta: float = 0.5
    inner_steps: int = 1
    shift: ShiftStrategy = field(default_factory=RayleighShift)
    max_outer: int = 500
    tol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "inner", InnerKind(self.inner))
        if self.ell < 1:
            raise ConfigError(f"ell must be >= 1, got {self.ell}", ell=self.ell)
        if self.inner_steps < 1:
            raise ConfigError(f"inner_steps must be >= 1, got {self.inner_steps}", inner_steps=self.inner_steps)
        if self.max_outer < 1:
            raise ConfigError(f"max_outer must be >= 1, got {self.max_outer}", max_outer=self.max_outer)
        if not self.tol > 0.0:
            raise ConfigError(f"tol must be > 0, got {self.tol}", tol=self.tol)
        check_theta(self.theta)

    def validate_for(self, n: int) -> None:
        """Check the block size against the matrix dimension."""
        if not (1 <= self.ell < n or self.ell == n == 1):
            raise ConfigError(f"Block size must satisfy 1 <= ell < n, got ell={self.ell}, n={n}", ell=self.ell, n=n)

    def resolved(self) -> dict:
        """Every field with defaults filled, in printable form."""
        data = asdict(self)
        data["inner"] = self.inner.value
        data["shift"] = self.shift.describe()
        return data
