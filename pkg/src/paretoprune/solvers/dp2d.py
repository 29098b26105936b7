"""Polynomial-time solvers for two objectives.

A 2-objective Pareto front sorted by the first objective is sorted in
reverse by the second, so ``x - y`` places it on a line without changing
any Manhattan distance. Coverage and uniformity then become discrete
k-center and p-dispersion on that line. Directed coverage keeps its own
table, indexed by the rightmost selected point.
"""

from ..core import COVERAGE, DIRECTED_COVERAGE, UNIFORMITY, Slate, SolveResult, measure_id
from ..errors import ContractError
from .. import kernels
from .common import Budget, LineDecider, Prepared, canonical_slate, lex_slates, validate_k


def _sorted_front(prep):
    if prep.inst.d != 2:
        raise ContractError(f"the 2-objective solvers need d = 2, got d = {prep.inst.d}")
    order = sorted(range(prep.n), key=lambda i: prep.coords[i])
    xs = [prep.coords[i][0] for i in order]
    ys = [prep.coords[i][1] for i in order]
    return order, xs, ys


def line_embedding(xs, ys):
    """Line positions ``x - y`` of a front sorted by ascending ``x``.

    Raises if any pair's Manhattan distance is not the gap between their
    positions, which only happens for non-Pareto input.
    """
    phi = [x - y for x, y in zip(xs, ys)]
    for i in range(len(phi)):
        for j in range(i + 1, len(phi)):
            if abs(xs[i] - xs[j]) + abs(ys[i] - ys[j]) != phi[j] - phi[i]:
                raise AssertionError("line embedding does not preserve distances; input is not a Pareto front")
    return phi


def _finish(prep, k, value, solver_id, enumerate_all, budget, extra):
    decider = LineDecider(prep, budget)
    if enumerate_all:
        slates = tuple(Slate(s) for s in lex_slates(prep, decider, value, k))
        slate = slates[0]
    else:
        slates = None
        slate = Slate(canonical_slate(prep, decider, value, k))
    stats = {"feasibility_calls": budget.calls, **extra}
    return SolveResult(prep.value(value), slate, slates, solver_id, stats)


def solve_dp2d_directed(inst, k, enumerate_all=False, budget=None, backend=None):
    """Exact directed coverage for two objectives via the rightmost-member table."""
    validate_k(inst, k, DIRECTED_COVERAGE)
    prep = Prepared(inst, DIRECTED_COVERAGE, backend)
    _, xs, ys = _sorted_front(prep)
    for a, b in zip(ys, ys[1:]):
        if a < b:
            raise AssertionError("front is not sorted in reverse by the second objective")
    mod, name = kernels.dp_module(xs + ys, backend)
    value = mod.dp_directed(kernels.as_array(xs, name), kernels.as_array(ys, name), k)
    budget = budget or Budget()
    return _finish(prep, k, value, "dp2d", enumerate_all, budget, {"backend": name})


def solve_dp2d_symmetric(inst, k, measure, enumerate_all=False, budget=None, backend=None):
    """Exact coverage or uniformity for two objectives via the line embedding."""
    measure = measure_id(measure)
    if measure not in (COVERAGE, UNIFORMITY):
        raise ContractError(f"the line embedding applies to coverage and uniformity, not {measure}")
    validate_k(inst, k, measure)
    prep = Prepared(inst, measure, backend)
    _, xs, ys = _sorted_front(prep)
    phi = line_embedding(xs, ys)
    mod, name = kernels.dp_module(phi, backend)
    arr = kernels.as_array(phi, name)
    value = mod.dp_line_cover(arr, k) if measure == COVERAGE else mod.dp_line_dispersion(arr, k)
    budget = budget or Budget()
    return _finish(prep, k, value, "dp2d", enumerate_all, budget, {"backend": name})


def solve_dp2d(inst, k, measure, enumerate_all=False, budget=None, backend=None):
    measure = measure_id(measure)
    if measure == DIRECTED_COVERAGE:
        return solve_dp2d_directed(inst, k, enumerate_all, budget, backend)
    return solve_dp2d_symmetric(inst, k, measure, enumerate_all, budget, backend)
