"""Named counterexample and confirmation instances for the axiom table.

Instances are available by id for the CLI (``prune prop-unic-not-monotonic-A``)
and every axiom case is keyed ``"<instance family>/<measure>"``. Running
:func:`run_fixture_table` replays all fifteen cases and compares them with
the expected satisfied/violated matrix and the exact optimal values.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .axioms import (
    EPS_SPLIT,
    EXTREMISM,
    MONOTONICITY,
    OUTLIER,
    STANDOUT,
    AxiomCase,
    check,
    uniformity_split_epsilon,
)
from .core import COVERAGE, DIRECTED_COVERAGE, UNIFORMITY, Instance
from .embeddings import antisymmetric_lift
from .errors import InputError

SPLIT_OFFSET = Fraction(1, 4)

_CROSS = [(-1, 1), (-1, -1), (0, 0), (1, -1), (1, 1)]
_CROSS_SPLIT = [(-1, 1), (-1, -1), (-SPLIT_OFFSET, 0), (SPLIT_OFFSET, 0), (1, -1), (1, 1)]

INSTANCES = {
    "prop-unic-not-monotonic-uniformity-A": [(2, 0, 0), (0, 2, 0), (0, -2, 1)],
    "prop-unic-not-monotonic-uniformity-A'": [(2, 0, 0), (0, 2, 0), (0, 0, 1)],
    "prop-unic-not-monotonic-A": [(3, -10, 0), (1, 3, 0), (2, 2, 1), (0, 0, 3)],
    "prop-unic-not-monotonic-A'": [(3, 1, 0), (2, 2, 1), (1, 3, 0), (0, 0, 3)],
    "prop-cdc-not-epssplit-cross": _CROSS,
    "prop-cdc-not-epssplit-cross-split": _CROSS_SPLIT,
    "prop-cdc-not-epssplit-lift": antisymmetric_lift(_CROSS),
    "prop-cdc-not-epssplit-lift-split": antisymmetric_lift(_CROSS_SPLIT),
    "prop-cdc-not-extreme-coverage": [(3, 0, 0), (0, 3, 0), (2, 1, 1)],
    "prop-cdc-not-extreme-coverage'": [(3, 0, 0), (0, 3, 0), (2, 1, 3)],
    "prop-cdc-not-extreme-dc": [(2, 0), (0, 1)],
    "prop-cdc-not-extreme-dc'": [(2, -3), (0, 1)],
    "prop-unic-not-winner": [(0, 1), (2, 0)],
    "standout-uniformity-k2": [(0, 0), (1, -2), (-2, 1)],
    "prop-uni-dc-not-distance-uniformity": [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 20)],
    "prop-uni-dc-not-distance-dc": [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, -10)],
}


def instance(fixture_id: str) -> Instance:
    try:
        pts = INSTANCES[fixture_id]
    except KeyError:
        raise InputError(f"unknown fixture {fixture_id!r}") from None
    return Instance.from_points(pts, name=fixture_id)


@dataclass(frozen=True)
class Fixture:
    id: str
    case: AxiomCase
    expected: bool
    # exact optimal values the verdict's witness must reproduce
    values: dict = field(default_factory=dict)


def _lift(p):
    return antisymmetric_lift([p])[0]


def _build():
    I = instance
    fx = []

    def add(fid, expected, values=None, **kw):
        fx.append(Fixture(fid, AxiomCase(**kw), expected, values or {}))

    # monotonicity
    add("prop-unic-not-monotonic/uniformity", False,
        axiom=MONOTONICITY, instance=I("prop-unic-not-monotonic-uniformity-A"), k=2,
        measure=UNIFORMITY, target=2, replacements=[(0, 0, 1)])
    add("prop-unic-not-monotonic/coverage", False, {"value_before": 6, "value_after": 3},
        axiom=MONOTONICITY, instance=I("prop-unic-not-monotonic-A"), k=2,
        measure=COVERAGE, target=0, replacements=[(3, 1, 0)])
    add("prop-dc-monotonic/directed_coverage", True,
        axiom=MONOTONICITY, instance=I("prop-unic-not-monotonic-A"), k=2,
        measure=DIRECTED_COVERAGE, target=2, replacements=[(2, 2, 2)])

    # eps-split proofness on the lifted cross
    lift = I("prop-cdc-not-epssplit-lift")
    centre = lift.index_of(_lift((0, 0)))
    split = [_lift((-SPLIT_OFFSET, 0)), _lift((SPLIT_OFFSET, 0))]
    add("prop-uni-epssplit/uniformity", True,
        axiom=EPS_SPLIT, instance=lift, k=2, measure=UNIFORMITY, target=centre,
        replacements=split, eps=uniformity_split_epsilon(lift, 2))
    add("prop-cdc-not-epssplit/coverage", False, {"value_before": 2, "value_after": 2 - SPLIT_OFFSET},
        axiom=EPS_SPLIT, instance=lift, k=2, measure=COVERAGE, target=centre,
        replacements=split, eps=2 * SPLIT_OFFSET)
    add("prop-cdc-not-epssplit/directed_coverage", False,
        {"value_before": 1, "value_after": (2 - SPLIT_OFFSET) / 2},
        axiom=EPS_SPLIT, instance=lift, k=2, measure=DIRECTED_COVERAGE, target=centre,
        replacements=split, eps=2 * SPLIT_OFFSET)

    # extremism monotonicity
    add("prop-uni-extreme/uniformity", True,
        axiom=EXTREMISM, instance=I("prop-cdc-not-extreme-coverage"), k=2, measure=UNIFORMITY,
        target=0, objective=0, direction="max", t=2)
    add("prop-cdc-not-extreme/coverage", False, {"value_before": 5, "value_after": 6},
        axiom=EXTREMISM, instance=I("prop-cdc-not-extreme-coverage"), k=1, measure=COVERAGE,
        target=2, objective=2, direction="max", t=2)
    add("prop-cdc-not-extreme/directed_coverage", False,
        axiom=EXTREMISM, instance=I("prop-cdc-not-extreme-dc"), k=1, measure=DIRECTED_COVERAGE,
        target=0, objective=1, direction="min", t=3)

    # standout consistency
    add("prop-unic-not-winner/uniformity", False,
        axiom=STANDOUT, instance=I("standout-uniformity-k2"), k=2, measure=UNIFORMITY)
    add("prop-unic-not-winner/coverage", False,
        axiom=STANDOUT, instance=I("prop-unic-not-winner"), k=1, measure=COVERAGE)
    add("prop-dc-winner/directed_coverage", True, {"value": 1},
        axiom=STANDOUT, instance=I("prop-unic-not-winner"), k=1, measure=DIRECTED_COVERAGE)

    # outlier consistency
    add("prop-uni-dc-not-distance/uniformity", False, {"value": 2},
        axiom=OUTLIER, instance=I("prop-uni-dc-not-distance-uniformity"), k=3, measure=UNIFORMITY)
    add("prop-c-distance/coverage", True,
        axiom=OUTLIER, instance=I("prop-uni-dc-not-distance-uniformity"), k=3, measure=COVERAGE)
    add("prop-uni-dc-not-distance/directed_coverage", False,
        axiom=OUTLIER, instance=I("prop-uni-dc-not-distance-dc"), k=2, measure=DIRECTED_COVERAGE)
    return {f.id: f for f in fx}


FIXTURES = _build()

# measure -> axiom -> satisfied?
EXPECTED_TABLE = {
    UNIFORMITY: {MONOTONICITY: False, EPS_SPLIT: True, EXTREMISM: True, STANDOUT: False, OUTLIER: False},
    COVERAGE: {MONOTONICITY: False, EPS_SPLIT: False, EXTREMISM: False, STANDOUT: False, OUTLIER: True},
    DIRECTED_COVERAGE: {MONOTONICITY: True, EPS_SPLIT: False, EXTREMISM: False, STANDOUT: True, OUTLIER: False},
}


@dataclass
class FixtureOutcome:
    id: str
    measure: str
    axiom: str
    expected: bool
    holds: bool
    values_ok: bool
    values: dict

    @property
    def ok(self):
        return self.holds == self.expected and self.values_ok


def run_fixture(fixture_id: str) -> FixtureOutcome:
    try:
        fx = FIXTURES[fixture_id]
    except KeyError:
        raise InputError(f"unknown fixture {fixture_id!r}") from None
    verdict = check(fx.case)
    got = {key: verdict.witness.get(key) for key in fx.values}
    values_ok = all(Fraction(got[key]) == Fraction(v) for key, v in fx.values.items() if got[key] is not None)
    values_ok = values_ok and all(got[key] is not None for key in fx.values)
    return FixtureOutcome(fx.id, fx.case.measure, fx.case.axiom, fx.expected, verdict.holds, values_ok, got)


def run_fixture_table():
    """Replay every fixture; returns ``(outcomes, matrix, matches, seconds)``."""
    start = time.perf_counter()
    outcomes = [run_fixture(fid) for fid in FIXTURES]
    matrix = {m: {} for m in EXPECTED_TABLE}
    for o in outcomes:
        matrix[o.measure][o.axiom] = o.holds
    matches = matrix == EXPECTED_TABLE and all(o.ok for o in outcomes)
    return outcomes, matrix, matches, time.perf_counter() - start
