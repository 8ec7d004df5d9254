"""Exact minimisation of the counting objectives and polynomial checks."""

from .hyperplane import min_quadratic_on_hyperplane
from .phi import PhiCase, PhiReport, check_phi_identity, phi_report, phi_three_level
from .pipeline import (
    Pipeline,
    check_bound_pipeline,
    check_steps,
    load_pipeline,
    parse_pipeline,
    pipeline_names,
)
from .polynomial import MultivarPoly, variables
from .triangle import (
    RegionEntry,
    HalfPlane,
    Objective,
    TriangleMinimum,
    TriangleRegion,
    interval_lower_bound,
    kkt_multipliers,
    load_region,
    min_on_triangle,
    objective_value,
    region_names,
)

__all__ = [
    "RegionEntry",
    "HalfPlane",
    "MultivarPoly",
    "Objective",
    "PhiCase",
    "PhiReport",
    "Pipeline",
    "TriangleMinimum",
    "TriangleRegion",
    "check_bound_pipeline",
    "check_phi_identity",
    "check_steps",
    "interval_lower_bound",
    "kkt_multipliers",
    "load_pipeline",
    "load_region",
    "min_on_triangle",
    "min_quadratic_on_hyperplane",
    "objective_value",
    "parse_pipeline",
    "phi_report",
    "phi_three_level",
    "pipeline_names",
    "region_names",
    "variables",
]
