"""Horizontal disks, directed Kobayashi bounds and push-out shear constructions."""

from ._hypercontact import (
    ConfigError,
    DomainError,
    PushOut,
    alpha0,
    chow_path,
    distance_upper_full_space,
    horizontality_residual,
    legendrian_from_xy,
    legendrian_line,
    norm_bracket,
    norm_upper_full_space,
    run_experiment,
    validate_config,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "PushOut",
    "alpha0",
    "chow_path",
    "distance_upper_full_space",
    "horizontality_residual",
    "legendrian_from_xy",
    "legendrian_line",
    "norm_bracket",
    "norm_upper_full_space",
    "run_experiment",
    "validate_config",
]
