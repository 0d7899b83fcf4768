"""Closed-loop EMA optimizers, baselines, test problems, trajectory checkers,
and a desk-scale experiment harness."""

from .errors import (
    CheckFailure,
    ConfigError,
    DegenerateStepWarning,
    DiagnosticError,
    DivergenceError,
    GradientError,
    NotApplicableError,
)
from .optimizer import AdaptiveEMA, Hyperparameters, OptimizerState, Variant, run_stream
from .records import StepRecord, Trajectory

__all__ = [
    "AdaptiveEMA",
    "CheckFailure",
    "ConfigError",
    "DegenerateStepWarning",
    "DiagnosticError",
    "DivergenceError",
    "GradientError",
    "Hyperparameters",
    "NotApplicableError",
    "OptimizerState",
    "StepRecord",
    "Trajectory",
    "Variant",
    "run_stream",
]
