"""Incremental SAT solving, DIMACS export and external-tool bridges."""

from .cdcl import ModelEnumeration, Solver
from .cnf import (
    CnfFormula,
    ExternalResult,
    ExternalToolError,
    external_count,
    external_solve,
    parse_count_output,
    parse_solver_output,
    projected_vars,
)

__all__ = [
    "CnfFormula",
    "ExternalResult",
    "ExternalToolError",
    "ModelEnumeration",
    "Solver",
    "external_count",
    "external_solve",
    "parse_count_output",
    "parse_solver_output",
    "projected_vars",
]
