"""Exact solvers for the three Pareto pruning problems."""

from fractions import Fraction

from ..core import APPROVAL, COVERAGE, UNIFORMITY, Slate, SolveResult, evaluate
from .approval import MAX_APPROVAL_D, equivalence_classes, solve_approval
from .brute import solve_brute
from .common import Budget, SolveRequest, ThresholdLadder
from .dp2d import line_embedding, solve_dp2d, solve_dp2d_directed, solve_dp2d_symmetric
from .exact import solve_exact_general

# approval enumeration is only worth it when 2**d is small
AUTO_APPROVAL_MAX_D = 8


def pick_solver(inst, measure):
    if inst.d == 2:
        return "dp2d"
    if all(kind == APPROVAL for kind in inst.kinds) and inst.d <= AUTO_APPROVAL_MAX_D:
        return "approval"
    return "exact"


def solve(req: SolveRequest) -> SolveResult:
    """Solve one request exactly.

    ``solver="auto"`` uses the 2-objective programs when d = 2, approval
    enumeration for small all-approval instances, and the general exact
    solver otherwise. Running out of budget raises SolverIncomplete.
    """
    inst, k, measure = req.instance, req.k, req.measure
    name = pick_solver(inst, measure) if req.solver == "auto" else req.solver
    budget = Budget(req.node_budget, req.time_budget)
    if name == "brute":
        result = solve_brute(inst, k, measure, backend=req.backend)
        if not req.enumerate_all_optimal:
            result = SolveResult(result.optimal_value, result.slate, None, result.solver_id, result.stats)
    elif name == "dp2d":
        result = solve_dp2d(inst, k, measure, req.enumerate_all_optimal, budget, req.backend)
    elif name == "approval":
        result = solve_approval(inst, k, measure, req.enumerate_all_optimal, budget, req.backend)
    else:
        result = solve_exact_general(inst, k, measure, req.enumerate_all_optimal, budget, req.backend)
    if evaluate(result.slate, inst, measure) != result.optimal_value:
        raise AssertionError(f"{name} returned a slate whose value differs from its reported optimum")
    return result


def solve_value(inst, k, measure, solver="auto", **kw):
    return solve(SolveRequest(inst, measure, k, solver=solver, **kw))


def duality_gap(inst, k, solver="auto", **kw):
    """Optimal coverage with k members against optimal uniformity with k + 1.

    Returns ``(K_k, M_{k+1}, M_{k+1} / K_k)``; the ratio is None when
    ``K_k`` is zero. Asserts ``K_k <= M_{k+1} <= 2 K_k``.
    """
    cover = solve_value(inst, k, COVERAGE, solver, **kw).optimal_value
    spread = solve_value(inst, k + 1, UNIFORMITY, solver, **kw).optimal_value
    if not cover <= spread <= 2 * cover:
        raise AssertionError(f"sandwich violated: K={cover}, M={spread}")
    ratio = Fraction(spread) / cover if cover else None
    return cover, spread, ratio


__all__ = [
    "MAX_APPROVAL_D",
    "Budget",
    "Slate",
    "SolveRequest",
    "ThresholdLadder",
    "duality_gap",
    "equivalence_classes",
    "line_embedding",
    "pick_solver",
    "solve",
    "solve_approval",
    "solve_brute",
    "solve_dp2d",
    "solve_dp2d_directed",
    "solve_dp2d_symmetric",
    "solve_exact_general",
    "solve_value",
]
