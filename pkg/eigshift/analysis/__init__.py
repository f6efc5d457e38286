"""Convergence-rate analysis: multipliers, predicted/closed-form rates, measured rates."""

from .rates import (
    RatePrediction,
    SpectrumSummary,
    check_theta,
    closed_form_rate,
    iteration_multipliers,
    optimal_shift,
    predicted_rate,
    rate_consistency_check,
)
from .trace import ComponentTrace, component_ratios, expand_components, measured_rate

__all__ = [
    "SpectrumSummary",
    "RatePrediction",
    "check_theta",
    "iteration_multipliers",
    "predicted_rate",
    "optimal_shift",
    "closed_form_rate",
    "rate_consistency_check",
    "ComponentTrace",
    "component_ratios",
    "expand_components",
    "measured_rate",
]
