"""Deterministic multicore memory bandwidth regulation simulator."""

from ._bwsim import (
    ValidationError,
    allocate,
    inflation_factor,
    lines_per_period,
    run_scenario_file,
    run_scenario_json,
)

__all__ = [
    "ValidationError",
    "allocate",
    "inflation_factor",
    "lines_per_period",
    "run_scenario_file",
    "run_scenario_json",
]
