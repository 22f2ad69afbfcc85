"""Executable HC-extension machinery and the inequality checks built on it."""

from .extension import (
    ExtensionError,
    HcExtension,
    greedy_hc_extension,
    maximal_hc_extension,
    validate_extension,
)
from .paths import (
    compute_O,
    compute_O_u,
    compute_omega,
    delta_relation,
    longest_xy_path,
    t_transform,
)
from .stats import ExtensionStats, classify_vertices, compute_stats, lambda_path
from .theta import ThetaResult, theta_procedure

__all__ = [
    "ExtensionError",
    "ExtensionStats",
    "HcExtension",
    "ThetaResult",
    "classify_vertices",
    "compute_O",
    "compute_O_u",
    "compute_omega",
    "compute_stats",
    "delta_relation",
    "greedy_hc_extension",
    "lambda_path",
    "longest_xy_path",
    "maximal_hc_extension",
    "t_transform",
    "theta_procedure",
    "validate_extension",
]
