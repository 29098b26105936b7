"""Executable checks of the five axioms on concrete cases.

Each checker decides one case exactly by enumerating all optimal slates
with the brute-force solver. Universal claims ("measure X satisfies axiom
Y") are only ever tested by randomized search over many cases.

A case whose preconditions fail raises :class:`NotApplicable`; that is
not a verdict. Modified instances must stay Pareto-optimal and duplicate
free, otherwise the case is not applicable either.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    COVERAGE,
    pareto_filter,
    DIRECTED_COVERAGE,
    UNIFORMITY,
    Instance,
    directed,
    dominates,
    manhattan,
    measure_id,
    point,
)
from .errors import InputError, NotApplicable, PruneError
from .solvers import solve_brute

MONOTONICITY = "monotonicity"
EPS_SPLIT = "eps_split"
EXTREMISM = "extremism"
STANDOUT = "standout"
OUTLIER = "outlier"
AXIOMS = (MONOTONICITY, EPS_SPLIT, EXTREMISM, STANDOUT, OUTLIER)


@dataclass(frozen=True)
class AxiomCase:
    """One concrete instance of an axiom.

    ``target`` is the index of the alternative being modified (or, for the
    consistency axioms, unused). ``replacements`` holds the dominating point
    for monotonicity and the two split points for eps-split. Extremism uses
    ``objective`` (0-based), ``direction`` ("max" or "min") and ``t``.
    """

    axiom: str
    instance: Instance
    k: int
    measure: str
    target: int | None = None
    replacements: tuple = ()
    eps: Fraction | None = None
    objective: int | None = None
    direction: str = "max"
    t: Fraction | None = None

    def __post_init__(self):
        if self.axiom not in AXIOMS:
            raise InputError(f"unknown axiom {self.axiom!r}")
        object.__setattr__(self, "measure", measure_id(self.measure))
        object.__setattr__(self, "replacements", tuple(point(p) for p in self.replacements))
        shapes = {MONOTONICITY: 1, EPS_SPLIT: 2, EXTREMISM: 0, STANDOUT: 0, OUTLIER: 0}
        if len(self.replacements) != shapes[self.axiom]:
            raise InputError(f"{self.axiom} takes {shapes[self.axiom]} replacement point(s)")
        if self.axiom in (MONOTONICITY, EPS_SPLIT, EXTREMISM):
            if self.target is None or not 0 <= self.target < self.instance.n:
                raise InputError(f"{self.axiom} needs a valid target index")
        if self.axiom == EXTREMISM:
            if self.objective is None or not 0 <= self.objective < self.instance.d:
                raise InputError("extremism needs an objective index")
            if self.direction not in ("max", "min"):
                raise InputError("direction must be 'max' or 'min'")
        if self.axiom == EPS_SPLIT and self.eps is None:
            raise InputError("eps-split needs eps")


@dataclass(frozen=True)
class AxiomVerdict:
    holds: bool
    witness: dict = field(default_factory=dict, compare=False)


def _optimal(inst, k, measure):
    """Optimal value and all optimal slates, as sets of coordinate tuples."""
    res = solve_brute(inst, k, measure)
    return res.optimal_value, [frozenset(inst.points[i] for i in s) for s in res.all_optimal]


def _modified(inst, target, new_points):
    """Instance with ``target`` replaced, or NotApplicable if it is no longer valid."""
    try:
        return inst.replace(target, new_points, strict=True)
    except InputError as exc:
        raise NotApplicable(f"modified instance is invalid: {exc}") from None


def _require_in_optimal(inst, k, measure, x):
    value, slates = _optimal(inst, k, measure)
    if not any(x in s for s in slates):
        raise NotApplicable(f"{x} is in no optimal slate")
    return value, slates


def _witness(before, after, **extra):
    (v0, s0), (v1, s1) = before, after
    return {
        "value_before": v0,
        "value_after": v1,
        "optimal_before": [sorted(s) for s in s0],
        "optimal_after": [sorted(s) for s in s1],
        **extra,
    }


def check_monotonicity(case: AxiomCase) -> AxiomVerdict:
    """Holds iff improving ``x`` to a dominating ``y`` keeps it selectable."""
    inst, k, measure = case.instance, case.k, case.measure
    x = inst.points[case.target]
    (y,) = case.replacements
    if len(y) != inst.d or not dominates(y, x):
        raise NotApplicable("replacement does not dominate the target")
    before = _require_in_optimal(inst, k, measure, x)
    changed = _modified(inst, case.target, [y])
    after = _optimal(changed, k, measure)
    holds = any(y in s for s in after[1])
    return AxiomVerdict(holds, _witness(before, after, instance_after=changed, target=x, replacement=y))


def uniformity_split_epsilon(inst: Instance, k: int) -> Fraction:
    """A split radius small enough that uniformity provably resists splitting.

    ``min(best uniformity / 3, smallest gap between distinct distances / 2)``
    shrunk by a factor ``1 - 1e-6`` to make the inequality strict.
    """
    best, _ = _optimal(inst, k, UNIFORMITY)
    dists = sorted({manhattan(p, q) for i, p in enumerate(inst.points) for q in inst.points[i + 1 :]})
    gaps = [b - a for a, b in zip(dists, dists[1:])]
    bound = best / 3
    if gaps:
        bound = min(bound, min(gaps) / 2)
    return bound * (1 - Fraction(1, 10**6))


def check_eps_split(case: AxiomCase) -> AxiomVerdict:
    """Holds iff every optimal slate of the split instance is acceptable.

    Acceptable means either it avoids both split points and is optimal in
    the original instance, or swapping the split point(s) back to ``x``
    gives an optimal slate of the original instance. Slates are compared by
    coordinates.
    """
    inst, k, measure = case.instance, case.k, case.measure
    x = inst.points[case.target]
    y, z = case.replacements
    eps = Fraction(case.eps)
    if eps <= 0 or len(y) != inst.d or len(z) != inst.d:
        raise InputError("malformed split")
    if not (manhattan(x, y) < eps and manhattan(x, z) < eps):
        raise InputError(f"split points must lie within {eps} of the target")
    before = _optimal(inst, k, measure)
    split = _modified(inst, case.target, list(dict.fromkeys([y, z])))
    after = _optimal(split, k, measure)
    original = set(before[1])
    original_points = set(inst.points)
    bad = []
    for s in after[1]:
        if s <= original_points and s in original:
            continue
        swapped = frozenset(p for p in s if p not in (y, z)) | {x}
        if len(swapped) == k and swapped in original:
            continue
        bad.append(sorted(s))
    return AxiomVerdict(not bad, _witness(before, after, instance_after=split, violating_slates=bad, eps=eps))


def check_extremism(case: AxiomCase) -> AxiomVerdict:
    """Holds iff pushing an extreme ``x`` further out keeps it selectable."""
    inst, k, measure = case.instance, case.k, case.measure
    x = inst.points[case.target]
    i = case.objective
    t = Fraction(case.t) if case.t is not None else None
    if t is None or t <= 0:
        raise NotApplicable("extremism needs t > 0")
    column = [p[i] for p in inst.points]
    if case.direction == "max" and x[i] != max(column):
        raise NotApplicable(f"objective {i + 1} of the target is not maximal")
    if case.direction == "min" and x[i] != min(column):
        raise NotApplicable(f"objective {i + 1} of the target is not minimal")
    before = _require_in_optimal(inst, k, measure, x)
    pushed = list(x)
    pushed[i] += t if case.direction == "max" else -t
    pushed = tuple(pushed)
    changed = _modified(inst, case.target, [pushed])
    after = _optimal(changed, k, measure)
    holds = any(pushed in s for s in after[1])
    return AxiomVerdict(holds, _witness(before, after, instance_after=changed, target=x, pushed=pushed))


def find_standout(inst: Instance):
    """The alternative whose smallest lead over every other one beats every lead over it."""
    if inst.n < 2:
        raise InputError("standout alternatives need at least two alternatives")
    found = []
    for x in inst.points:
        others = [a for a in inst.points if a != x]
        if not others:
            continue
        if min(directed(x, a) for a in others) > max(directed(a, x) for a in others):
            found.append(x)
    assert len(found) <= 1, f"several standout alternatives: {found}"
    return found[0] if found else None


def find_outlier(inst: Instance):
    """The alternative farther from every other one than any two others are apart."""
    if inst.n < 3:
        raise InputError("outlier alternatives need at least three alternatives")
    for x in inst.points:
        others = [a for a in inst.points if a != x]
        near = min(manhattan(x, a) for a in others)
        spread = max(manhattan(p, q) for j, p in enumerate(others) for q in others[j + 1 :])
        if near > spread:
            return x
    return None


def check_consistency(inst: Instance, k: int, measure: str, kind: str) -> AxiomVerdict:
    """Holds iff the standout/outlier alternative is in every optimal slate."""
    measure = measure_id(measure)
    if kind == STANDOUT:
        special = find_standout(inst)
    elif kind == OUTLIER:
        if k < 2:
            raise NotApplicable("outlier consistency is stated for k >= 2")
        special = find_outlier(inst)
    else:
        raise InputError(f"unknown consistency kind {kind!r}")
    if special is None:
        raise NotApplicable(f"no {kind} alternative")
    value, slates = _optimal(inst, k, measure)
    missing = [sorted(s) for s in slates if special not in s]
    return AxiomVerdict(
        not missing,
        {"value": value, "special": special, "optimal": [sorted(s) for s in slates], "violating_slates": missing},
    )


def check(case: AxiomCase) -> AxiomVerdict:
    if case.axiom == MONOTONICITY:
        return check_monotonicity(case)
    if case.axiom == EPS_SPLIT:
        return check_eps_split(case)
    if case.axiom == EXTREMISM:
        return check_extremism(case)
    return check_consistency(case.instance, case.k, case.measure, case.axiom)


def reverify(case: AxiomCase, verdict: AxiomVerdict) -> bool:
    """Recompute a verdict's witness from scratch with the brute-force oracle."""
    w = verdict.witness
    if case.axiom in (STANDOUT, OUTLIER):
        res = solve_brute(case.instance, case.k, case.measure)
        slates = [sorted(case.instance.points[i] for i in s) for s in res.all_optimal]
        return res.optimal_value == w["value"] and slates == w["optimal"]
    before = solve_brute(case.instance, case.k, case.measure)
    after = solve_brute(w["instance_after"], case.k, case.measure)
    return (
        before.optimal_value == w["value_before"]
        and after.optimal_value == w["value_after"]
        and [sorted(w["instance_after"].points[i] for i in s) for s in after.all_optimal] == w["optimal_after"]
    )


# ------------------------------------------------------------ random trials


def random_front(rng: random.Random, n_max=7, d_choices=(2, 3), radius=6) -> Instance:
    """A small random integer front with at least three alternatives."""
    while True:
        d = rng.choice(d_choices)
        raw = [tuple(rng.randint(-radius, radius) for _ in range(d)) for _ in range(rng.randint(3, n_max) * 2)]
        pts = pareto_filter(list(dict.fromkeys(raw)))[:n_max]
        if len(pts) >= 3:
            return Instance.from_points(pts)


def _sum_zero_points(rng, d, count, radius):
    """Distinct integer points on the hyperplane where coordinates sum to zero."""
    count = min(count, (2 * radius + 1) ** (d - 1))
    pts = set()
    while len(pts) < count:
        head = [rng.randint(-radius, radius) for _ in range(d - 1)]
        pts.add(tuple(head + [-sum(head)]))
    return sorted(pts)


def planted_standout(rng: random.Random):
    """A front with a verified standout alternative.

    The base lies on the sum-zero hyperplane inside ``[-R, R]``. The planted
    point is ``(B, ..., B, -c)`` with ``c > R`` and a random ``B``; it is a
    standout once ``B`` is large enough, and the caller gets NotApplicable
    otherwise.
    """
    d = rng.choice((2, 3))
    radius = rng.randint(1, 3)
    base = _sum_zero_points(rng, d, rng.randint(2, 6), radius)
    c = radius + rng.randint(1, 2)
    b = rng.randint(radius, 3 * radius + c + 2)
    x = tuple([b] * (d - 1) + [-c])
    if x in base:
        raise NotApplicable("planted point duplicates a base point")
    try:
        inst = Instance.from_points(base + [x])
    except InputError:
        raise NotApplicable("planted point broke Pareto optimality") from None
    if find_standout(inst) != point(x):
        raise NotApplicable("planted point is not a standout")
    return inst, point(x)


def planted_outlier(rng: random.Random):
    """A sum-zero front plus one far point on the same hyperplane, verified as an outlier."""
    d = rng.choice((2, 3, 4))
    radius = rng.randint(1, 3)
    base = _sum_zero_points(rng, d, rng.randint(2, 6), radius)
    far = rng.randint(radius, 4 * d * radius)
    x = tuple([far, -far] + [0] * (d - 2))
    if x in base:
        raise NotApplicable("far point duplicates a base point")
    inst = Instance.from_points(base + [x])
    if find_outlier(inst) != point(x):
        raise NotApplicable("far point is not an outlier")
    return inst, point(x)


def random_case(axiom: str, measure: str, rng: random.Random) -> AxiomCase:
    """Draw one case; may raise NotApplicable when the draw cannot be used."""
    measure = measure_id(measure)
    low = 2 if measure == UNIFORMITY else 1
    if axiom == STANDOUT:
        inst, _ = planted_standout(rng)
        return AxiomCase(axiom, inst, rng.randint(low, min(3, inst.n)), measure)
    if axiom == OUTLIER:
        inst, _ = planted_outlier(rng)
        return AxiomCase(axiom, inst, rng.randint(2, min(3, inst.n)), measure)
    inst = random_front(rng)
    k = rng.randint(low, min(3, inst.n - 1))
    _, slates = _optimal(inst, k, measure)
    # start from a member of an optimal slate so the main precondition holds
    x = rng.choice(sorted(rng.choice(slates)))
    target = inst.index_of(x)
    if axiom == MONOTONICITY:
        y = list(x)
        for i in rng.sample(range(inst.d), rng.randint(1, inst.d)):
            y[i] += rng.randint(1, 3)
        return AxiomCase(axiom, inst, k, measure, target, [tuple(y)])
    if axiom == EXTREMISM:
        extremes = [(i, side) for i in range(inst.d) for side, pick in (("max", max), ("min", min))
                    if x[i] == pick(p[i] for p in inst.points)]
        if not extremes:
            raise NotApplicable("the chosen alternative is extreme in no objective")
        i, side = rng.choice(extremes)
        return AxiomCase(axiom, inst, k, measure, target, objective=i, direction=side, t=rng.randint(1, 3))
    if axiom == EPS_SPLIT:
        eps = uniformity_split_epsilon(inst, k) if measure == UNIFORMITY else Fraction(rng.randint(1, 4), 4)
        if eps <= 0:
            raise NotApplicable("no positive split radius")
        i, j = rng.sample(range(inst.d), 2)
        step = eps * Fraction(rng.randint(1, 9), 20)
        y, z = list(x), list(x)
        y[i], y[j] = y[i] + step, y[j] - step
        z[i], z[j] = z[i] - step, z[j] + step
        return AxiomCase(axiom, inst, k, measure, target, [tuple(y), tuple(z)], eps=eps)
    raise InputError(f"unknown axiom {axiom!r}")


@dataclass
class TrialSummary:
    axiom: str
    measure: str
    seed: int
    attempts: int = 0
    holds: int = 0
    violated: int = 0
    not_applicable: int = 0
    first_violation: dict | None = None

    @property
    def valid(self):
        return self.holds + self.violated


def run_trials(axiom: str, measure: str, trials: int, seed=0, max_attempts=None) -> TrialSummary:
    """Draw cases until ``trials`` of them are applicable (or attempts run out).

    Not-applicable draws are counted on their own and never as passes. Each
    attempt uses its own seed ``(seed, attempt)`` so a violation can be
    replayed with :func:`replay_trial`.
    """
    measure = measure_id(measure)
    if axiom not in AXIOMS:
        raise InputError(f"unknown axiom {axiom!r}")
    if trials < 1:
        raise InputError("trials must be positive")
    max_attempts = max_attempts or 50 * trials
    out = TrialSummary(axiom, measure, seed)
    while out.valid < trials and out.attempts < max_attempts:
        attempt = out.attempts
        out.attempts += 1
        try:
            case, verdict = replay_trial(axiom, measure, seed, attempt)
        except NotApplicable:
            out.not_applicable += 1
            continue
        if verdict.holds:
            out.holds += 1
        else:
            out.violated += 1
            if out.first_violation is None:
                out.first_violation = {"attempt": attempt, "points": [list(p) for p in case.instance.points],
                                       "k": case.k, "target": case.target}
    return out


def replay_trial(axiom, measure, seed, attempt):
    rng = random.Random(f"{seed}:{axiom}:{measure_id(measure)}:{attempt}")
    case = random_case(axiom, measure, rng)
    return case, check(case)


__all__ = [
    "AXIOMS",
    "EPS_SPLIT",
    "EXTREMISM",
    "MONOTONICITY",
    "OUTLIER",
    "STANDOUT",
    "TrialSummary",
    "AxiomCase",
    "AxiomVerdict",
    "COVERAGE",
    "DIRECTED_COVERAGE",
    "NotApplicable",
    "PruneError",
    "UNIFORMITY",
    "check",
    "check_consistency",
    "check_eps_split",
    "check_extremism",
    "check_monotonicity",
    "planted_outlier",
    "planted_standout",
    "random_case",
    "random_front",
    "replay_trial",
    "run_trials",
    "find_outlier",
    "find_standout",
    "reverify",
    "uniformity_split_epsilon",
]
