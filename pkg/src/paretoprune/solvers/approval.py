"""Approval objectives: enumerate slates of pairwise non-equivalent alternatives.

With d approval objectives there are at most 2**d distinct score vectors.
Picking two alternatives with the same vector never helps any measure, so
the optimum is found among subsets of one representative per class.
"""

import warnings
from math import comb

from .. import kernels
from ..core import APPROVAL, Instance, Slate, SolveResult, measure_id
from ..errors import ContractError, InputError
from .common import Budget, KernelDecider, Prepared, canonical_slate, lex_slates, validate_k

MAX_APPROVAL_D = 20


def equivalence_classes(inst: Instance):
    """Map each distinct score vector to the indices carrying it, in first-seen order."""
    classes = {}
    for i, p in enumerate(inst.points):
        classes.setdefault(p, []).append(i)
    return classes


def solve_approval(inst, k, measure, enumerate_all=False, budget=None, backend=None, cap=5 * 10**6):
    measure = measure_id(measure)
    if any(kind != APPROVAL for kind in inst.kinds):
        raise InputError("the approval solver needs every objective to be an approval objective")
    if inst.d > MAX_APPROVAL_D:
        raise ContractError(f"approval enumeration is limited to d <= {MAX_APPROVAL_D}")
    validate_k(inst, k, measure)
    budget = budget or Budget()
    prep = Prepared(inst, measure, backend)
    classes = equivalence_classes(inst)
    reps = [members[0] for members in classes.values()]

    if k <= len(reps):
        if comb(len(reps), k) > cap:
            raise ContractError(f"C({len(reps)}, {k}) representative slates exceeds the cap of {cap}")
        sub = [[prep.D[a][s] for s in reps] for a in reps]
        kern = kernels.Kernels(sub, backend)
        tau, _, leaves = kern.brute_force(k, 0 if prep.is_cover else 1)
    else:
        # every class is already represented; extra seats duplicate someone
        tau, leaves = 0, 0
        if not prep.is_cover:
            warnings.warn(
                f"k={k} exceeds the {len(reps)} distinct score vectors; uniformity is 0", stacklevel=2
            )

    decider = KernelDecider(prep, budget)
    if enumerate_all:
        slates = tuple(Slate(s) for s in lex_slates(prep, decider, tau, k))
        slate = slates[0]
    else:
        slates = None
        slate = Slate(canonical_slate(prep, decider, tau, k))
    stats = {"classes": len(reps), "leaves": leaves, "feasibility_calls": budget.calls}
    return SolveResult(prep.value(tau), slate, slates, "approval", stats)
