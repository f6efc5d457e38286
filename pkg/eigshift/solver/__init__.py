"""Block shift-inverse solver with direct or Richardson inner steps."""

from .block import IterateBlock, init_random_block, rayleigh_quotients
from .config import (
    FixedShift,
    InnerKind,
    OptimalRateShift,
    RayleighShift,
    ShiftStrategy,
    SolverConfig,
    parse_shift,
)
from .driver import InnerStep, SolveReport, outer_iterate, solve
from .inner import inner_solve_direct, inner_solve_richardson, richardson_step
from .ritz import rayleigh_ritz

__all__ = [
    "IterateBlock",
    "init_random_block",
    "rayleigh_quotients",
    "InnerKind",
    "RayleighShift",
    "FixedShift",
    "OptimalRateShift",
    "ShiftStrategy",
    "SolverConfig",
    "parse_shift",
    "inner_solve_direct",
    "inner_solve_richardson",
    "richardson_step",
    "rayleigh_ritz",
    "outer_iterate",
    "solve",
    "SolveReport",
    "InnerStep",
]
