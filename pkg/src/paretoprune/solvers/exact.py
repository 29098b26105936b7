"""Exact solver for any number of objectives by threshold decomposition.

The optimum of a min-max or max-min selection objective is one of the
pairwise distances, so a binary search over the sorted distinct distances
with an exact feasibility test per threshold finds it:

* coverage / directed coverage: can at most k members serve every
  alternative within tau? (set cover, branch-and-bound)
* uniformity: is there a k-subset with all pairwise distances >= tau?
  (independent set in the graph of pairs closer than tau)
"""

from ..core import Slate, SolveResult, measure_id
from .common import Budget, KernelDecider, Prepared, canonical_slate, lex_slates, validate_k


def feasible(prep, decider, tau, k):
    n = prep.n
    if prep.is_cover:
        return decider.cover(tau, [True] * n, [True] * n, k)
    return decider.indep(tau, [True] * n, k)


def optimal_threshold(prep, decider, k):
    """Binary search the ladder; returns ``(tau, probes)``.

    ``probes`` maps each tested threshold to its feasibility; the search
    asserts that feasibility is monotone over everything it saw.
    """
    ladder = prep.ladder()
    probes = {}
    lo, hi = 0, len(ladder) - 1
    if prep.is_cover:
        # smallest feasible; the largest value is always feasible
        while lo < hi:
            mid = (lo + hi) // 2
            ok = probes[ladder[mid]] = feasible(prep, decider, ladder[mid], k)
            if ok:
                hi = mid
            else:
                lo = mid + 1
    else:
        # largest feasible; zero is always feasible
        while lo < hi:
            mid = (lo + hi + 1) // 2
            ok = probes[ladder[mid]] = feasible(prep, decider, ladder[mid], k)
            if ok:
                lo = mid
            else:
                hi = mid - 1
    tau = ladder[lo]
    _check_monotone(probes, prep.is_cover)
    return tau, probes


def _check_monotone(probes, is_cover):
    yes = [t for t, ok in probes.items() if ok]
    no = [t for t, ok in probes.items() if not ok]
    if yes and no:
        if is_cover and min(yes) <= max(no):
            raise AssertionError(f"coverage feasibility not monotone: feasible at {min(yes)}, infeasible at {max(no)}")
        if not is_cover and max(yes) >= min(no):
            raise AssertionError(f"uniformity feasibility not monotone: feasible at {max(yes)}, infeasible at {min(no)}")


def solve_exact_general(inst, k, measure, enumerate_all=False, budget=None, backend=None):
    """Exact optimum for any d; raises SolverIncomplete when the budget runs out."""
    measure = measure_id(measure)
    validate_k(inst, k, measure)
    budget = budget or Budget()
    prep = Prepared(inst, measure, backend)
    decider = KernelDecider(prep, budget)
    tau, probes = optimal_threshold(prep, decider, k)
    if enumerate_all:
        slates = tuple(Slate(s) for s in lex_slates(prep, decider, tau, k))
        slate = slates[0]
    else:
        slates = None
        slate = Slate(canonical_slate(prep, decider, tau, k))
    stats = {
        "nodes": budget.used,
        "feasibility_calls": budget.calls,
        "ladder_size": len(prep.ladder()),
        "probes": len(probes),
        "backend": prep.kernels.backend,
    }
    return SolveResult(prep.value(tau), slate, slates, "exact", stats)
