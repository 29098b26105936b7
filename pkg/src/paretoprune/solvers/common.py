"""Shared machinery for the exact solvers.

Instances are scaled to integers so every distance is an exact int; values
are converted back to Fractions only when results are reported.

Slates are canonicalized by prefix fixing: once the optimal threshold is
known, each seat takes the smallest index that still admits a completion.
That yields the lexicographically smallest optimal slate with at most ``n``
feasibility calls, and the same walk without early exit enumerates every
optimal slate in lexicographic order.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .. import kernels
from ..core import COVERAGE, DIRECTED_COVERAGE, MEASURES, UNIFORMITY, Instance, measure_id
from ..errors import ContractError, InputError, SolverIncomplete

DEFAULT_NODE_BUDGET = 10**7


@dataclass
class SolveRequest:
    instance: Instance
    measure: str
    k: int
    solver: str = "auto"
    enumerate_all_optimal: bool = False
    node_budget: int = DEFAULT_NODE_BUDGET
    time_budget: float | None = None
    backend: str | None = None

    def __post_init__(self):
        self.measure = measure_id(self.measure)
        validate_k(self.instance, self.k, self.measure)
        if self.solver not in ("auto", "dp2d", "approval", "exact", "brute"):
            raise InputError(f"unknown solver {self.solver!r}")


def validate_k(inst: Instance, k: int, measure: str) -> None:
    if not isinstance(k, int) or isinstance(k, bool):
        raise ContractError(f"k must be an integer, got {k!r}")
    if not 1 <= k <= inst.n:
        raise ContractError(f"k={k} outside 1..{inst.n}")
    if measure == UNIFORMITY and k < 2:
        raise ContractError("uniformity needs k >= 2")


class Budget:
    """Node and wall-clock budget shared by every search in one solve."""

    def __init__(self, nodes=DEFAULT_NODE_BUDGET, seconds=None):
        self.limit = nodes
        self.used = 0
        self.calls = 0
        self.deadline = None if seconds is None else time.monotonic() + seconds

    @property
    def remaining(self):
        return self.limit - self.used

    def charge(self, status, nodes):
        self.used += nodes
        self.calls += 1
        if status < 0 or self.used > self.limit:
            raise SolverIncomplete(f"node budget of {self.limit} exhausted", nodes=self.used)
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SolverIncomplete("time budget exhausted", nodes=self.used)


def scale(inst: Instance):
    """Return ``(L, coords)`` with ``coords[i][j] == inst[i][j] * L`` integral."""
    L = 1
    for p in inst.points:
        for c in p:
            L = math.lcm(L, c.denominator)
    return L, [tuple(int(c * L) for c in p) for p in inst.points]


def manhattan_matrix(coords):
    return [[sum(abs(a - b) for a, b in zip(p, q)) for q in coords] for p in coords]


def directed_matrix(coords):
    """``D[a][s] = directed(a, s)``: loss of serving ``a`` by ``s``."""
    return [[sum(a - b for a, b in zip(p, q) if a > b) for q in coords] for p in coords]


def measure_matrix(coords, measure):
    return directed_matrix(coords) if measure == DIRECTED_COVERAGE else manhattan_matrix(coords)


class Prepared:
    """An instance scaled to integers with the distance matrix for one measure."""

    def __init__(self, inst: Instance, measure: str, backend=None):
        self.inst = inst
        self.measure = measure_id(measure)
        self.L, self.coords = scale(inst)
        self.n = inst.n
        self.D = measure_matrix(self.coords, self.measure)
        self.backend = backend
        self._kernels = None

    @property
    def kernels(self) -> kernels.Kernels:
        if self._kernels is None:
            self._kernels = kernels.Kernels(self.D, self.backend)
        return self._kernels

    @property
    def is_cover(self):
        return self.measure != UNIFORMITY

    def value(self, scaled_value) -> Fraction:
        return Fraction(scaled_value, self.L)

    def ladder(self):
        return ThresholdLadder.from_matrix(self.D)


@dataclass(frozen=True)
class ThresholdLadder:
    """Sorted distinct candidate optimal values (scaled ints)."""

    values: tuple = field(default_factory=tuple)

    def __post_init__(self):
        vals = self.values
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise ContractError("ladder values must be strictly increasing")

    @classmethod
    def from_matrix(cls, D):
        return cls(tuple(sorted({v for row in D for v in row} | {0})))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __contains__(self, v):
        return v in self.values


class KernelDecider:
    """Threshold feasibility by exact branch-and-bound in the kernels."""

    def __init__(self, prep: Prepared, budget: Budget):
        self.prep = prep
        self.budget = budget

    def cover(self, tau, uncovered, cand, r):
        if not any(uncovered):
            return True
        if r <= 0:
            return False
        status, _, nodes = self.prep.kernels.cover_decide(tau, uncovered, cand, r, self.budget.remaining)
        self.budget.charge(status, nodes)
        return status == 1

    def indep(self, tau, cand, r):
        return self.lex_indep(tau, cand, r) is not None

    def lex_indep(self, tau, cand, r):
        """Lexicographically smallest feasible r-subset of ``cand``, or None."""
        if r <= 0:
            return []
        status, chosen, nodes = self.prep.kernels.indep_decide(tau, cand, r, self.budget.remaining)
        self.budget.charge(status, nodes)
        return chosen if status == 1 else None


class LineDecider:
    """Greedy feasibility for a 2-objective Pareto front.

    Sorted by the first objective, every alternative's service region is a
    contiguous run containing it (for both norms), and Manhattan distances
    are additive along the run, so greedy interval arguments are exact.
    """

    def __init__(self, prep: Prepared, budget: Budget):
        if prep.inst.d != 2:
            raise ContractError("line feasibility needs exactly two objectives")
        self.prep = prep
        self.budget = budget
        self.order = sorted(range(prep.n), key=lambda i: prep.coords[i])
        self.pos = {i: p for p, i in enumerate(self.order)}

    def _reach(self, s, tau):
        """Last sorted position that ``s`` serves within ``tau``."""
        D = self.prep.D
        p = self.pos[s]
        while p + 1 < len(self.order) and D[self.order[p + 1]][s] <= tau:
            p += 1
        return p

    def cover(self, tau, uncovered, cand, r):
        self.budget.charge(0, 1)
        D = self.prep.D
        order = self.order
        n = len(order)
        p = 0
        used = 0
        while True:
            while p < n and not uncovered[order[p]]:
                p += 1
            if p == n:
                return True
            if used == r:
                return False
            u = order[p]
            best = -1
            for s in range(n):
                if cand[s] and D[u][s] <= tau:
                    reach = self._reach(s, tau)
                    if reach > best:
                        best = reach
            if best < 0:
                return False
            used += 1
            p = best + 1

    def indep(self, tau, cand, r):
        self.budget.charge(0, 1)
        D = self.prep.D
        count = 0
        last = None
        for i in self.order:
            if not cand[i]:
                continue
            if last is None or D[last][i] >= tau:
                count += 1
                last = i
                if count >= r:
                    return True
        return r <= 0

    def lex_indep(self, tau, cand, r):
        return None


def lex_slates(prep: Prepared, decider, tau, k, limit=None):
    """Optimal-at-``tau`` slates of size k in lexicographic order.

    Cover measures: slates whose members serve every alternative within
    ``tau``. Uniformity: slates whose pairwise distances are all >= ``tau``.
    """
    n = prep.n
    D = prep.D
    out = []

    if prep.is_cover:
        def rec(prefix, covered):
            if limit is not None and len(out) >= limit:
                return
            r = k - len(prefix)
            if r == 0:
                out.append(tuple(prefix))
                return
            start = prefix[-1] + 1 if prefix else 0
            for i in range(start, n - r + 1):
                cov = [c or D[a][i] <= tau for a, c in enumerate(covered)]
                cand = [j > i for j in range(n)]
                if decider.cover(tau, [not c for c in cov], cand, r - 1):
                    rec(prefix + [i], cov)
                    if limit is not None and len(out) >= limit:
                        return

        rec([], [False] * n)
    else:
        def rec(prefix, cand):
            if limit is not None and len(out) >= limit:
                return
            r = k - len(prefix)
            if r == 0:
                out.append(tuple(prefix))
                return
            for i in range(n):
                if not cand[i]:
                    continue
                rest = [j > i and cand[j] and D[i][j] >= tau for j in range(n)]
                if decider.indep(tau, rest, r - 1):
                    rec(prefix + [i], rest)
                    if limit is not None and len(out) >= limit:
                        return

        rec([], [True] * n)
    return out


def canonical_slate(prep: Prepared, decider, tau, k):
    if not prep.is_cover:
        direct = decider.lex_indep(tau, [True] * prep.n, k)
        if direct is not None:
            return tuple(direct)
    found = lex_slates(prep, decider, tau, k, limit=1)
    if not found:
        raise AssertionError(f"no slate attains the claimed optimum {tau}")
    return found[0]


def check_measure(measure):
    if measure not in MEASURES:
        raise InputError(f"unknown measure {measure!r}")


__all__ = [
    "COVERAGE",
    "DIRECTED_COVERAGE",
    "UNIFORMITY",
    "Budget",
    "KernelDecider",
    "LineDecider",
    "Prepared",
    "SolveRequest",
    "ThresholdLadder",
    "canonical_slate",
    "lex_slates",
]
