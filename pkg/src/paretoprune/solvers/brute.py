"""Exhaustive enumeration; the testing oracle for every other solver."""

from math import comb

from ..core import Slate, SolveResult, measure_id
from ..errors import ContractError
from .common import Prepared, validate_k

DEFAULT_CAP = 5 * 10**6


def solve_brute(inst, k, measure, cap=DEFAULT_CAP, backend=None):
    """Evaluate every size-k slate and return the optimum with all optimal slates."""
    measure = measure_id(measure)
    validate_k(inst, k, measure)
    total = comb(inst.n, k)
    if total > cap:
        raise ContractError(f"C({inst.n}, {k}) = {total} slates exceeds the brute-force cap of {cap}")
    prep = Prepared(inst, measure, backend)
    best, optimal, leaves = prep.kernels.brute_force(k, 0 if prep.is_cover else 1)
    slates = tuple(Slate(s) for s in optimal)
    return SolveResult(
        optimal_value=prep.value(best),
        slate=slates[0],
        all_optimal=slates,
        solver_id="brute",
        stats={"leaves": leaves, "backend": prep.kernels.backend},
    )
