"""Geometric multipath error model for GNSS direct position estimation."""

from ._dpemp import (
    DpempError,
    LookAngles,
    Satellite,
    Scenario,
    ScenarioError,
    Space,
    azimuth_separation,
    caf,
    case_bound,
    case_study,
    cli,
    critical_points,
    delta_alpha,
    intersection_count,
    intersections,
    pair_bias,
    pair_bias_velocity,
    project_to_range,
    project_to_range_rate,
    random_azimuth_mc,
)

__all__ = [
    "DpempError",
    "LookAngles",
    "Satellite",
    "Scenario",
    "ScenarioError",
    "Space",
    "azimuth_separation",
    "caf",
    "case_bound",
    "case_study",
    "cli",
    "critical_points",
    "delta_alpha",
    "intersection_count",
    "intersections",
    "pair_bias",
    "pair_bias_velocity",
    "project_to_range",
    "project_to_range_rate",
    "random_azimuth_mc",
]
