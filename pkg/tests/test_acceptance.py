"""Acceptance criteria. Each test prints one PASS/FAIL line with its timing.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed even
without ``-s``).
"""

import io
import itertools
import json
import random
import time
import warnings
from collections import defaultdict
from fractions import Fraction

import pytest

from paretoprune import (
    COVERAGE,
    DIRECTED_COVERAGE,
    UNIFORMITY,
    Instance,
    directed,
    dominates,
    duality_gap,
    manhattan,
    solve_brute,
)
from paretoprune.axioms import OUTLIER, STANDOUT, run_trials
from paretoprune.cli import main
from paretoprune.core import MEASURES
from paretoprune.embeddings import (
    antisymmetric_lift,
    hyperplane_embed,
    shear_map,
    shear_parameters,
    trigrid_distance,
    trigrid_embed,
)
from paretoprune.harness import BUILTINS, HIGHER_IS_BETTER, SCORE_OF_MEASURE, ExperimentConfig, check_report, run_experiment
from paretoprune.solvers import (
    solve_approval,
    solve_dp2d_directed,
    solve_dp2d_symmetric,
    solve_exact_general,
)

from conftest import random_front, random_front_2d


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, seconds, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({seconds:.2f} s){' - ' + detail if detail else ''}"
        with capsys.disabled():
            print("\n" + line)
        return ok

    return emit


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue()


# Hand-transcribed property matrix: measure -> axiom -> holds.
TABLE = {
    UNIFORMITY: {"monotonicity": False, "eps_split": True, "extremism": True, "standout": False, "outlier": False},
    COVERAGE: {"monotonicity": False, "eps_split": False, "extremism": False, "standout": False, "outlier": True},
    DIRECTED_COVERAGE: {"monotonicity": True, "eps_split": False, "extremism": False, "standout": True, "outlier": False},
}


def test_fixture_table(report):
    start = time.perf_counter()
    code, text = cli("axioms", "--fixture", "all", "--format", "json")
    seconds = time.perf_counter() - start
    doc = json.loads(text)
    got = {m: {a: v == "yes" for a, v in row.items()} for m, row in doc["matrix"].items()}
    values = {f["id"]: {k: Fraction(v) for k, v in f["values"].items()} for f in doc["fixtures"]}
    checks = [
        code == 0,
        len(doc["fixtures"]) == 15,
        all(f["ok"] for f in doc["fixtures"]),
        got == TABLE,
        values["prop-unic-not-monotonic/coverage"] == {"value_before": 6, "value_after": 3},
        values["prop-cdc-not-extreme/coverage"] == {"value_before": 5, "value_after": 6},
        # cross split at 1/4: 2 drops to 2 - 1/4
        values["prop-cdc-not-epssplit/coverage"] == {"value_before": 2, "value_after": 2 - Fraction(1, 4)},
        seconds < 5,
    ]
    assert report(1, "fixture table reproduced with exact values", all(checks), seconds, f"checks {checks}")


def test_dp2d_oracle(report):
    rng = random.Random(2024)
    start = time.perf_counter()
    mismatches = []
    for trial in range(200):
        inst = random_front_2d(rng, rng.randint(2, 18))
        for k in range(1, min(6, inst.n) + 1):
            for measure in MEASURES:
                if measure == UNIFORMITY and k < 2:
                    continue
                if measure == DIRECTED_COVERAGE:
                    got = solve_dp2d_directed(inst, k).optimal_value
                else:
                    got = solve_dp2d_symmetric(inst, k, measure).optimal_value
                want = solve_brute(inst, k, measure).optimal_value
                if got != want:
                    mismatches.append((trial, k, measure, got, want))
    seconds = time.perf_counter() - start
    ok = not mismatches and seconds < 60
    assert report(2, "2-D dynamic programs match brute force on 200 instances", ok, seconds,
                  f"{len(mismatches)} mismatches"), mismatches[:5]


def _embedded_instance(rng, trial):
    n = rng.randint(3, 16)
    planar = set()
    while len(planar) < n:
        planar.add((rng.randint(-12, 12), rng.randint(-12, 12)))
    planar = sorted(planar)
    if trial % 2:
        return Instance.from_points(antisymmetric_lift(planar))
    return Instance.from_points(hyperplane_embed(planar, Fraction(1, 8)))


def test_exact_general_oracle(report):
    rng = random.Random(77)
    start = time.perf_counter()
    mismatches = []
    for trial in range(100):
        inst = _embedded_instance(rng, trial)
        for measure in MEASURES:
            for k in range(2 if measure == UNIFORMITY else 1, min(5, inst.n) + 1):
                got = solve_exact_general(inst, k, measure)
                want = solve_brute(inst, k, measure)
                if (got.optimal_value, got.slate.members) != (want.optimal_value, want.slate.members):
                    mismatches.append((trial, k, measure))
    seconds = time.perf_counter() - start
    ok = not mismatches and seconds < 300
    assert report(3, "exact solver matches brute force on 100 embedded instances", ok, seconds,
                  f"{len(mismatches)} mismatches"), mismatches[:5]


def _approval_instance(rng):
    d = rng.randint(2, 4)
    raw = [tuple(rng.randint(0, 1) for _ in range(d)) for _ in range(rng.randint(2, 30))]
    keep = {p for p in raw if not any(dominates(q, p) for q in raw)}
    pts = [p for p in raw if p in keep]
    return Instance.from_points(pts, kinds=["approval"] * d, allow_duplicates=True)


def test_approval_oracle(report):
    rng = random.Random(31)
    start = time.perf_counter()
    mismatches = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for trial in range(100):
            inst = _approval_instance(rng)
            for measure in MEASURES:
                for k in range(2 if measure == UNIFORMITY else 1, min(4, inst.n) + 1):
                    got = solve_approval(inst, k, measure)
                    want = solve_brute(inst, k, measure)
                    if (got.optimal_value, got.slate.members) != (want.optimal_value, want.slate.members):
                        mismatches.append((trial, k, measure))
    seconds = time.perf_counter() - start
    ok = not mismatches and seconds < 30
    assert report(4, "approval solver matches brute force on 100 instances", ok, seconds,
                  f"{len(mismatches)} mismatches"), mismatches[:5]


def _grid_distances(radius):
    """All-pairs shortest paths on the triangular grid window by BFS."""
    cells = [(i, j) for i in range(-radius, radius + 1) for j in range(-radius, radius + 1)]
    steps = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)]
    dist = {}
    for src in cells:
        seen = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for i, j in frontier:
                for di, dj in steps:
                    u = (i + di, j + dj)
                    if u not in seen and abs(u[0]) <= radius and abs(u[1]) <= radius:
                        seen[u] = seen[(i, j)] + 1
                        nxt.append(u)
            frontier = nxt
        for dst, d in seen.items():
            dist[src, dst] = d
    return cells, dist


def test_embedding_invariants(report):
    start = time.perf_counter()
    failures = defaultdict(int)

    # shortest paths between window cells are monotone, so they stay inside the window
    cells, dist = _grid_distances(6)
    for v in cells:
        for w in cells:
            d = directed(trigrid_embed(v), trigrid_embed(w))
            if d != dist[v, w] or d != trigrid_distance(v, w):
                failures["trigrid"] += 1

    n, delta = 12, 4
    t, dp = shear_parameters(n, delta)
    grid = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1)]
    images, dp_map = shear_map(grid, delta, n=n)
    if (t, dp, dp_map) != (13, 56, 56):
        failures["shear parameters"] += 1
    for (x, fx), (y, fy) in itertools.product(zip(grid, images), repeat=2):
        if (manhattan(x, y) <= delta) != (manhattan(fx, fy) <= dp):
            failures["shear threshold"] += 1

    rng = random.Random(10)
    eps = Fraction(1, 8)
    for _ in range(10_000):
        x = (rng.randint(-50, 50), rng.randint(-50, 50))
        y = (x[0] + rng.randint(-6, 6), x[1] + rng.randint(-6, 6))
        if x == y:
            continue
        fx, fy = hyperplane_embed([x, y], eps)
        if dominates(fx, fy) or dominates(fy, fx):
            failures["hyperplane domination"] += 1
        before, after = manhattan(x, y), manhattan(fx, fy)
        if before <= 4 and after > Fraction(9, 2):
            failures["hyperplane near"] += 1
        if before >= 5 and after < 5:
            failures["hyperplane far"] += 1
    seconds = time.perf_counter() - start
    ok = not failures and seconds < 30
    assert report(5, "trigrid, shear and hyperplane invariants", ok, seconds, dict(failures) and str(dict(failures)))


def test_sandwich(report):
    rng = random.Random(6)
    start = time.perf_counter()
    violations = []
    for trial in range(100):
        if trial % 2:
            inst = random_front(rng, rng.randint(3, 14), 3, radius=8)
        else:
            inst = random_front_2d(rng, rng.randint(3, 14))
        k = rng.randint(1, min(5, inst.n - 1))
        try:
            cover, spread, _ = duality_gap(inst, k)
        except AssertionError as exc:
            violations.append((trial, str(exc)))
            continue
        # recompute both sides by brute force as an independent check
        if cover != solve_brute(inst, k, COVERAGE).optimal_value:
            violations.append((trial, "coverage value"))
        if spread != solve_brute(inst, k + 1, UNIFORMITY).optimal_value:
            violations.append((trial, "uniformity value"))
        if not cover <= spread <= 2 * cover:
            violations.append((trial, "sandwich"))
    seconds = time.perf_counter() - start
    assert report(6, "coverage / uniformity sandwich on 100 instances", not violations, seconds,
                  f"{len(violations)} violations"), violations[:5]


def test_consistency_properties(report):
    start = time.perf_counter()
    standout = run_trials(STANDOUT, DIRECTED_COVERAGE, 1000, seed=1)
    outlier = run_trials(OUTLIER, COVERAGE, 1000, seed=1)
    seconds = time.perf_counter() - start
    ok = (standout.valid == 1000 and outlier.valid == 1000
          and standout.violated == 0 and outlier.violated == 0)
    detail = (f"standout {standout.holds}/{standout.valid} ({standout.not_applicable} n/a), "
              f"outlier {outlier.holds}/{outlier.valid} ({outlier.not_applicable} n/a)")
    assert report(7, "standout and outlier always selected", ok, seconds, detail)


def test_harness_protocol(report, tmp_path):
    start = time.perf_counter()
    datasets = tuple(f"builtin:{name}" for name in sorted(BUILTINS))
    table = run_experiment(ExperimentConfig(datasets=datasets, output_dir=str(tmp_path)))
    problems = list(check_report(table))
    dims = {inst.d for inst in table.instances.values()}
    sizes = [inst.n for inst in table.instances.values()]
    # self-normalization and bounds, checked directly from the cells
    for c in table.cells:
        if c.status != "ok":
            continue
        if c.normalized[SCORE_OF_MEASURE[c.method]] != 1:
            problems.append(f"{c.instance} {c.method} k={c.k_abs} is not 100% on its own measure")
        for key, v in c.normalized.items():
            if v is not None and (v > 1 if HIGHER_IS_BETTER[key] else v < 1):
                problems.append(f"{c.instance} {c.method} {key} normalized {v} out of bounds")
    by_method = defaultdict(list)
    for c in table.cells:
        if c.status == "ok":
            by_method[c.instance, c.method].append((c.k_abs, c.raw[SCORE_OF_MEASURE[c.method]]))
    for (inst, method), rows in by_method.items():
        vals = [v for _, v in sorted(rows)]
        # a larger slate can only spread less and cover more, so every optimum is non-increasing in k
        if vals != sorted(vals, reverse=True):
            problems.append(f"{inst} {method} raw optima not monotone in k: {vals}")
    seconds = time.perf_counter() - start
    ok = (table.complete and not problems and dims == {2, 3} and max(sizes) <= 200
          and (tmp_path / "report.json").exists())
    assert report(8, "bench on bundled fronts: self 100%, bounds, monotone in k", ok, seconds,
                  f"{len(table.cells)} cells, {len(problems)} problems"), problems[:5]


def test_determinism(report):
    commands = [
        ("axioms", "--fixture", "all", "--format", "json"),
        ("axioms", "--random", "--axiom", "standout", "--measure", "dcoverage", "--trials", "50",
         "--seed", "4", "--format", "json"),
        ("prune", "builtin:concave2d", "-m", "coverage", "-k", "10%", "--format", "json"),
        ("bench", "--seed", "4", "--format", "json"),
    ]
    start = time.perf_counter()
    differing = []
    for argv in commands:
        first, second = cli(*argv), cli(*argv)
        if first != second or not first[1]:
            differing.append(argv[0])
        json.loads(first[1])
    seconds = time.perf_counter() - start
    assert report(9, "repeated runs give byte-identical JSON", not differing, seconds,
                  f"differing: {differing}" if differing else ""), differing
