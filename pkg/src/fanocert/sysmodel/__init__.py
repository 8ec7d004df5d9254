"""Parametric linear systems: data model, text format and shipped catalog."""

from .catalog import catalog_names, load_system, system_path
from .dsl import format_system, parse_system
from .model import (
    Constraint,
    LinearConstraint,
    LinearSystem,
    ParametricSystem,
    Relation,
    Variable,
    instantiate,
    limit_system,
    relax_strict,
)

__all__ = [
    "Constraint",
    "LinearConstraint",
    "LinearSystem",
    "ParametricSystem",
    "Relation",
    "Variable",
    "catalog_names",
    "format_system",
    "instantiate",
    "limit_system",
    "load_system",
    "parse_system",
    "relax_strict",
    "system_path",
]
