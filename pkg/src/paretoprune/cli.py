"""Command-line entry point: ``paretoprune <subcommand> ...``.

Exit codes: 0 ok, 2 input or contract error, 3 budget exhausted,
4 fixture mismatch (or axiom violations under ``--random``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import axioms, embeddings, fixtures, harness
from .core import MEASURES, Instance, Slate, avg_sum_objective, default_reference_point, evaluate, hypervolume, measure_id
from .errors import ContractError, InputError, NotApplicable, PruneError, SolverIncomplete
from .harness import format_value
from .solvers import SolveRequest, solve
from .solvers.common import DEFAULT_NODE_BUDGET

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_MISMATCH = 0, 2, 3, 4
FORMATS = ("json", "csv", "text")
EVAL_MEASURES = ("uniformity", "coverage", "dcoverage", "hypervolume", "avg_sum")


class UsageError(InputError):
    pass


# ------------------------------------------------------------------ helpers


def load_instance(source: str, strict: bool) -> Instance:
    """A CSV path, a fixture instance id or ``builtin:<front>``."""
    path = Path(source)
    if path.is_file():
        return harness.ingest_csv(path, strict)
    if source in fixtures.INSTANCES:
        return fixtures.instance(source)
    if source.startswith(harness.BUILTIN_PREFIX):
        _, insts = harness.load_dataset(source, strict)
        return insts[0]
    raise InputError(f"{source!r} is neither a file nor a known fixture id")


def parse_k(text: str, n: int) -> int:
    text = text.strip()
    if text.endswith("%"):
        return harness.k_from_percentage(text[:-1], n)
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"--k must be an integer or a percentage like 10%, got {text!r}") from None


def parse_slate(text: str) -> list:
    """Indices separated by commas or whitespace, from a file or given inline."""
    path = Path(text)
    body = path.read_text(encoding="utf-8") if path.is_file() else text
    tokens = body.replace(",", " ").split()
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise UsageError(f"slate must list integer indices, got {body.strip()!r}") from None


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_value(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


def emit(doc: dict, fmt: str, out, table=None):
    """Print ``doc`` as JSON, or ``table`` rows as CSV/text when given."""
    if fmt == "json" or table is None:
        out.write(json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n")
        return
    header, rows = table
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_jsonable(c) for c in r])
        return
    widths = [max(len(str(_jsonable(c))) for c in col) for col in zip(header, *rows)]
    for r in [header, *rows]:
        out.write("  ".join(str(_jsonable(c)).ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _coords(p):
    return "(" + ", ".join(format_value(c) for c in p) + ")"


# ------------------------------------------------------------- subcommands


def cmd_prune(args, out):
    inst = load_instance(args.input, args.strict)
    k = parse_k(args.k, inst.n)
    req = SolveRequest(inst, args.measure, k, solver=args.solver, enumerate_all_optimal=args.all_optimal,
                       node_budget=args.node_budget, backend=args.backend)
    res = solve(req)
    doc = {
        "instance": inst.name,
        "measure": req.measure,
        "k": k,
        "n": inst.n,
        "solver": res.solver_id,
        "optimal_value": res.optimal_value,
        "slate": list(res.slate.members),
        "slate_points": [list(p) for p in res.slate.points(inst)],
    }
    if res.all_optimal is not None:
        doc["all_optimal"] = [list(s.members) for s in res.all_optimal]
    slates = res.all_optimal if res.all_optimal is not None else (res.slate,)
    rows = [[format_value(res.optimal_value), " ".join(map(str, s.members)),
             " ".join(_coords(inst.points[i]) for i in s.members)] for s in slates]
    emit(doc, args.format, out, (["value", "slate", "points"], rows))
    return EXIT_OK


def cmd_evaluate(args, out):
    inst = load_instance(args.input, args.strict)
    slate = Slate(tuple(parse_slate(args.slate))).check(inst)
    wanted = [m.strip() for m in args.measures.split(",") if m.strip()]
    scores = {}
    for m in wanted:
        if m in ("hypervolume", "hv"):
            scores["hypervolume"] = hypervolume(slate, inst, default_reference_point(inst))
        elif m in ("avg_sum", "avg-sum"):
            scores["avg_sum"] = avg_sum_objective(slate, inst)
        else:
            key = harness.SCORE_OF_MEASURE[measure_id(m)]
            scores[key] = evaluate(slate, inst, m)
    doc = {"instance": inst.name, "slate": list(slate.members), "scores": scores}
    emit(doc, args.format, out, (["measure", "value"], [[k, v] for k, v in scores.items()]))
    return EXIT_OK


def cmd_axioms(args, out):
    if args.random:
        if not args.axiom or not args.measure:
            raise UsageError("--random needs --axiom and --measure")
        summary = axioms.run_trials(args.axiom, args.measure, args.trials, args.seed)
        doc = {
            "axiom": summary.axiom,
            "measure": summary.measure,
            "seed": summary.seed,
            "trials": args.trials,
            "attempts": summary.attempts,
            "holds": summary.holds,
            "violated": summary.violated,
            "not_applicable": summary.not_applicable,
            "first_violation": summary.first_violation,
        }
        row = [summary.axiom, summary.measure, summary.holds, summary.violated, summary.not_applicable]
        emit(doc, args.format, out, (["axiom", "measure", "holds", "violated", "not_applicable"], [row]))
        return EXIT_OK if summary.violated == 0 else EXIT_MISMATCH
    if not args.fixture:
        raise UsageError("give --fixture <id|all> or --random")
    if args.fixture == "all":
        outcomes, matrix, matches, _ = fixtures.run_fixture_table()
    else:
        outcomes = [fixtures.run_fixture(args.fixture)]
        matrix, matches = None, outcomes[0].ok
    doc = {
        "fixtures": [
            {"id": o.id, "measure": o.measure, "axiom": o.axiom, "expected": o.expected, "holds": o.holds,
             "values": o.values, "ok": o.ok}
            for o in outcomes
        ],
        "matches": matches,
    }
    if matrix is not None:
        doc["matrix"] = {m: {a: ("yes" if v else "no") for a, v in row.items()} for m, row in matrix.items()}
    rows = [[o.id, "yes" if o.expected else "no", "yes" if o.holds else "no", "ok" if o.ok else "MISMATCH"]
            for o in outcomes]
    emit(doc, args.format, out, (["fixture", "expected", "holds", "status"], rows))
    return EXIT_OK if matches else EXIT_MISMATCH


def _read_points(source):
    """Raw rows of a CSV (no Pareto validation), for the embedding maps."""
    text = Path(source).read_text(encoding="utf-8") if Path(source).is_file() else source.replace(";", "\n")
    if not text.lstrip().startswith("o1"):
        text = "o1,o2\n" + text
    return harness._parse_rows(io.StringIO(text), str(source))


def cmd_embed(args, out):
    pts = _read_points(args.input)
    extra = {}
    if args.map == "trigrid":
        images = [embeddings.trigrid_embed((int(p[0]), int(p[1]))) for p in pts]
    elif args.map == "hyperplane":
        images = embeddings.hyperplane_embed(pts, Fraction(args.eps))
    elif args.map == "shear":
        if args.delta is None:
            raise UsageError("shear needs --delta")
        images, extra["delta_prime"] = embeddings.shear_map(pts, args.delta, args.n)
    else:
        images = embeddings.antisymmetric_lift(pts)
    doc = {"map": args.map, "points": [list(p) for p in pts], "images": [list(q) for q in images], **extra}
    header = [f"o{i}" for i in range(1, len(images[0]) + 1)]
    emit(doc, args.format, out, (header, [list(q) for q in images]))
    return EXIT_OK


def cmd_bench(args, out):
    datasets = args.datasets or [harness.BUILTIN_PREFIX + b for b in sorted(harness.BUILTINS)]
    cfg = harness.ExperimentConfig(
        datasets=tuple(datasets),
        k_percentages=tuple(args.k_pct),
        measures=tuple(args.measures.split(",")) if args.measures else MEASURES,
        cap=args.cap,
        seed=args.seed,
        output_dir=args.out,
        strict=args.strict,
        node_budget=args.node_budget,
        recheck_limit=args.recheck_limit,
    )
    table = harness.run_experiment(cfg)
    problems = harness.check_report(table)
    if args.format == "json":
        doc = json.loads(table.to_json())
        doc["invariant_violations"] = problems
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        out.write(table.summary_csv())
    else:
        for r in table.rows():
            m = r["mean_normalized"]
            cols = "  ".join(f"{k}={m[k]:.1f}%" for k in harness.SCORE_KEYS if m.get(k) is not None)
            out.write(f"{r['dataset']:<12} {r['method']:<14} k={r['k_pct']}%  {cols}\n")
        for p in problems:
            out.write(f"invariant violated: {p}\n")
    if problems:
        return EXIT_MISMATCH
    return EXIT_OK if table.complete else EXIT_BUDGET


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default 0)")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_true", default=argparse.SUPPRESS,
                      help="reject dominated alternatives in input files (default)")
    mode.add_argument("--lenient", dest="strict", action="store_false", default=argparse.SUPPRESS,
                      help="drop dominated alternatives with a warning")
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="output format (default text)")

    parser = argparse.ArgumentParser(prog="paretoprune", parents=[common],
                                     description="Exact Pareto pruning: select k representative alternatives.")
    parser.set_defaults(seed=0, strict=True, format="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prune", parents=[common], help="solve one instance exactly")
    p.add_argument("input", help="CSV file, fixture id or builtin:<front>")
    p.add_argument("--measure", "-m", required=True, help="uniformity, coverage or dcoverage")
    p.add_argument("--k", "-k", required=True, help="slate size, or a percentage such as 10%%")
    p.add_argument("--solver", default="auto", choices=("auto", "dp2d", "approval", "exact", "brute"))
    p.add_argument("--all-optimal", action="store_true", help="list every optimal slate")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--backend", choices=("cython", "python"), default=None)
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("evaluate", parents=[common], help="score a given slate")
    p.add_argument("input")
    p.add_argument("slate", help="file or inline list of 0-based indices, e.g. 0,3,5")
    p.add_argument("--measures", default=",".join(EVAL_MEASURES))
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("axioms", parents=[common], help="replay fixtures or run randomized axiom checks")
    p.add_argument("--fixture", help="fixture id, or 'all' for the whole table")
    p.add_argument("--random", action="store_true")
    p.add_argument("--axiom", choices=axioms.AXIOMS)
    p.add_argument("--measure")
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("embed", parents=[common], help="apply an embedding map to planar points")
    p.add_argument("map", choices=("trigrid", "hyperplane", "shear", "lift"))
    p.add_argument("input", help="CSV file of 2-D points, or inline 'x,y;x,y'")
    p.add_argument("--eps", default="1/8")
    p.add_argument("--delta", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("bench", parents=[common], help="run the normalized comparison experiment")
    p.add_argument("datasets", nargs="*", help="CSV files, directories or builtin:<front> (default: all builtins)")
    p.add_argument("--k-pct", type=Fraction, nargs="+", default=[5, 10, 25])
    p.add_argument("--measures", default=None)
    p.add_argument("--cap", type=int, default=200)
    p.add_argument("--out", default=None, help="directory for report.json, report.csv, summary.csv and plot data")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--recheck-limit", type=int, default=0,
                   help="recheck optima against brute force when C(n, k) is at most this")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code = args.func(args, out)
        for w in caught:
            err.write(f"warning: {w.message}\n")
        return code
    except SolverIncomplete as exc:
        err.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except (InputError, ContractError, NotApplicable) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except PruneError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
