"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Each workload is solved with both backends; results must agree exactly,
and the table reports the best wall time of ``--repeat`` runs.
"""

import argparse
import json
import random
import sys
import time

from paretoprune import COVERAGE, DIRECTED_COVERAGE, UNIFORMITY, Instance, SolveRequest, solve
from paretoprune.harness import concave_front, sphere_front, zdt3_front
from paretoprune.kernels import available_backends
from paretoprune.solvers import solve_brute


def random_front(rng, n, d):
    pts = set()
    while len(pts) < n:
        head = [rng.randint(-50, 50) for _ in range(d - 1)]
        pts.add(tuple(head + [-sum(head)]))
    return Instance.from_points(sorted(pts))


def workloads():
    rng = random.Random(7)
    small = random_front(rng, 22, 3)
    sphere = sphere_front()
    return [
        ("brute C(22,5) coverage", lambda b: solve_brute(small, 5, COVERAGE, backend=b).optimal_value),
        ("brute C(22,5) uniformity", lambda b: solve_brute(small, 5, UNIFORMITY, backend=b).optimal_value),
        ("exact sphere n=66 coverage k=7",
         lambda b: solve(SolveRequest(sphere, COVERAGE, 7, solver="exact", backend=b)).optimal_value),
        ("exact sphere n=66 dcoverage k=17",
         lambda b: solve(SolveRequest(sphere, DIRECTED_COVERAGE, 17, solver="exact", backend=b)).optimal_value),
        ("exact sphere n=66 uniformity k=17",
         lambda b: solve(SolveRequest(sphere, UNIFORMITY, 17, solver="exact", backend=b)).optimal_value),
        ("dp2d zdt3 dcoverage k=27",
         lambda b: solve(SolveRequest(zdt3_front(), DIRECTED_COVERAGE, 27, solver="dp2d", backend=b)).optimal_value),
        ("dp2d concave coverage k=15",
         lambda b: solve(SolveRequest(concave_front(), COVERAGE, 15, solver="dp2d", backend=b)).optimal_value),
    ]


def best_time(fn, backend, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(backend)
        best = min(best, time.perf_counter() - t0)
    return best, value


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="also write the results here")
    args = ap.parse_args(argv)
    if "cython" not in available_backends():
        print("compiled kernels are not built; only the Python fallback is available", file=sys.stderr)
        return 1
    rows = []
    print(f"{'workload':<36} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for name, fn in workloads():
        tc, vc = best_time(fn, "cython", args.repeat)
        tp, vp = best_time(fn, "python", args.repeat)
        if vc != vp:
            raise SystemExit(f"{name}: backends disagree ({vc} vs {vp})")
        rows.append({"workload": name, "cython_s": tc, "python_s": tp, "speedup": tp / tc, "value": str(vc)})
        print(f"{name:<36} {tc:>10.4f} {tp:>10.4f} {tp / tc:>7.1f}x")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
