"""Exact Pareto pruning: pick k alternatives that best represent a Pareto front.

>>> from paretoprune import Instance, solve_value
>>> inst = Instance.from_points([(3, -10, 0), (1, 3, 0), (2, 2, 1), (0, 0, 3)])
>>> solve_value(inst, 2, "coverage").optimal_value
Fraction(6, 1)
"""

from .core import (
    APPROVAL,
    CARDINAL,
    COVERAGE,
    DIRECTED_COVERAGE,
    MEASURES,
    ORDINAL,
    UNIFORMITY,
    Instance,
    Slate,
    SolveResult,
    avg_sum_objective,
    coverage,
    default_reference_point,
    directed,
    directed_coverage,
    dominates,
    evaluate,
    hypervolume,
    manhattan,
    pareto_filter,
    uniformity,
)
from .errors import ContractError, InputError, NotApplicable, PruneError, SolverIncomplete
from .kernels import available_backends, default_backend
from .solvers import SolveRequest, duality_gap, solve, solve_brute, solve_value

__version__ = "0.1.0"

__all__ = [
    "APPROVAL",
    "CARDINAL",
    "COVERAGE",
    "DIRECTED_COVERAGE",
    "MEASURES",
    "ORDINAL",
    "UNIFORMITY",
    "ContractError",
    "InputError",
    "Instance",
    "NotApplicable",
    "PruneError",
    "Slate",
    "SolveRequest",
    "SolveResult",
    "SolverIncomplete",
    "available_backends",
    "avg_sum_objective",
    "coverage",
    "default_backend",
    "default_reference_point",
    "directed",
    "directed_coverage",
    "dominates",
    "duality_gap",
    "evaluate",
    "hypervolume",
    "manhattan",
    "pareto_filter",
    "solve",
    "solve_brute",
    "solve_value",
    "uniformity",
]
