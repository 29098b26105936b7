"""Experiment harness: ingest fronts, solve every cell, normalize and report.

A dataset is a CSV file, a directory of CSV files (one instance each) or
one of the bundled synthetic fronts (``builtin:zdt3``, ``builtin:concave2d``,
``builtin:sphere3d``). For every instance, k percentage and optimized
measure the exact optimum is computed and the chosen slate is scored
under five measures. Scores are normalized per instance against the best
method: higher-is-better values are divided by the maximum, lower-is-better
ones by the minimum, so the optimizing method always reads exactly 100%.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path

from .core import (
    COVERAGE,
    DIRECTED_COVERAGE,
    MEASURES,
    UNIFORMITY,
    Instance,
    avg_sum_objective,
    coverage,
    default_reference_point,
    directed_coverage,
    exact,
    hypervolume,
    measure_id,
    pareto_filter,
    uniformity,
)
from .errors import ContractError, InputError, SolverIncomplete
from .solvers import SolveRequest, solve, solve_brute
from .solvers.common import DEFAULT_NODE_BUDGET

# report column names, in output order
SCORE_KEYS = ("uniformity", "coverage", "dcoverage", "hypervolume", "avg_sum")
HIGHER_IS_BETTER = {"uniformity": True, "coverage": False, "dcoverage": False, "hypervolume": True, "avg_sum": True}
SCORE_OF_MEASURE = {UNIFORMITY: "uniformity", COVERAGE: "coverage", DIRECTED_COVERAGE: "dcoverage"}
METHOD_NAMES = {UNIFORMITY: "Uniformity", COVERAGE: "Coverage", DIRECTED_COVERAGE: "Dir. Coverage"}

BUILTIN_PREFIX = "builtin:"
GRID = 1000  # bundled fronts are rounded to multiples of 1/GRID


# ---------------------------------------------------------------- ingestion


def _parse_rows(lines, source):
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise InputError(f"{source}: empty file") from None
    header = [h.strip() for h in header]
    expected = [f"o{i}" for i in range(1, len(header) + 1)]
    if header != expected:
        raise InputError(f"{source}:1: header must be {','.join(expected)}, got {','.join(header)}")
    rows = []
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise InputError(f"{source}:{line}: expected {len(header)} values, got {len(row)}")
        try:
            rows.append(tuple(exact(c) for c in row))
        except InputError as exc:
            raise InputError(f"{source}:{line}: {exc}") from None
    if not rows:
        raise InputError(f"{source}: no alternatives")
    return rows


def ingest_csv(path, strict=True, name=None) -> Instance:
    """Read a front from a CSV with header ``o1,...,od``.

    Values may be decimals or exact rationals such as ``2/3``. Duplicates
    are dropped; dominated rows are an error in strict mode and dropped in
    lenient mode.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    rows = _parse_rows(io.StringIO(text), str(path))
    return Instance.from_points(rows, name=name or path.stem, strict=strict)


def parse_csv_text(text, strict=True, name="") -> Instance:
    return Instance.from_points(_parse_rows(io.StringIO(text), name or "<string>"), name=name, strict=strict)


def format_value(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def emit_csv(inst: Instance, target=None) -> str:
    """Write ``inst`` in the ingestible format; returns the text and writes it to ``target`` if given."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"o{i}" for i in range(1, inst.d + 1)])
    for p in inst.points:
        writer.writerow([format_value(c) for c in p])
    text = buf.getvalue()
    if target is not None:
        Path(target).write_text(text, encoding="utf-8")
    return text


def subsample(inst: Instance, cap: int, seed) -> Instance:
    """Keep ``cap`` alternatives chosen uniformly at random, in their original order."""
    if cap < 2:
        raise ContractError(f"subsample cap must be at least 2, got {cap}")
    if inst.n <= cap:
        return inst
    keep = sorted(random.Random(seed).sample(range(inst.n), cap))
    return Instance(tuple(inst.points[i] for i in keep), inst.kinds, inst.name, inst.allow_duplicates)


# ---------------------------------------------------------- bundled fronts


def _grid_round(v: float) -> Fraction:
    return Fraction(round(v * GRID), GRID)


def _front(points, name):
    pts = pareto_filter(list(dict.fromkeys(tuple(_grid_round(c) for c in p) for p in points)))
    return Instance.from_points(pts, name=name)


def zdt3_front(samples=400) -> Instance:
    """Disconnected ZDT3 optimal front, negated so both objectives are maximized."""
    pts = []
    for s in range(samples):
        f1 = s / (samples - 1)
        f2 = 1 - math.sqrt(f1) - f1 * math.sin(10 * math.pi * f1)
        pts.append((-f1, -f2))
    return _front(pts, "zdt3")


def concave_front(samples=60) -> Instance:
    """Quarter circle with both objectives maximized."""
    pts = []
    for s in range(samples):
        a = (math.pi / 2) * s / (samples - 1)
        pts.append((math.cos(a), math.sin(a)))
    return _front(pts, "concave2d")


def sphere_front(steps=10) -> Instance:
    """Points of the positive unit-sphere octant on a regular (theta, phi) lattice."""
    pts = []
    for a in range(steps + 1):
        theta = (math.pi / 2) * a / steps
        for b in range(a + 1):
            phi = (math.pi / 2) * (b / a if a else 0)
            pts.append((math.cos(theta), math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi)))
    return _front(pts, "sphere3d")


BUILTINS = {"zdt3": zdt3_front, "concave2d": concave_front, "sphere3d": sphere_front}


def load_dataset(spec, strict=True):
    """Return ``(dataset name, [instances])`` for a path, a directory or a builtin id."""
    spec = str(spec)
    if spec.startswith(BUILTIN_PREFIX):
        key = spec[len(BUILTIN_PREFIX) :]
        if key not in BUILTINS:
            raise InputError(f"unknown builtin front {key!r}; choose from {', '.join(sorted(BUILTINS))}")
        return key, [BUILTINS[key]()]
    path = Path(spec)
    if path.is_dir():
        files = sorted(path.glob("*.csv"))
        if not files:
            raise InputError(f"{path}: no CSV files")
        return path.name, [ingest_csv(f, strict) for f in files]
    return path.stem, [ingest_csv(path, strict)]


# --------------------------------------------------------------- experiment


def k_from_percentage(pct, n) -> int:
    """Round ``pct``% of ``n`` half up to an integer in ``1..n``."""
    pct = exact(pct)
    if not 0 < pct <= 100:
        raise ContractError(f"k percentage must lie in (0, 100], got {pct}")
    k = math.floor(pct * n / 100 + Fraction(1, 2))
    return min(max(k, 1), n)


@dataclass(frozen=True)
class ExperimentConfig:
    datasets: tuple
    k_percentages: tuple = (5, 10, 25)
    measures: tuple = MEASURES
    cap: int = 200
    seed: int = 0
    reference: str = "min-minus-one"
    output_dir: str | None = None
    strict: bool = True
    solver: str = "auto"
    node_budget: int = DEFAULT_NODE_BUDGET
    # recheck each optimum against brute force when C(n, k) is at most this
    recheck_limit: int = 0

    def __post_init__(self):
        object.__setattr__(self, "datasets", tuple(str(d) for d in self.datasets))
        object.__setattr__(self, "k_percentages", tuple(exact(p) for p in self.k_percentages))
        object.__setattr__(self, "measures", tuple(measure_id(m) for m in self.measures))
        if not self.datasets:
            raise InputError("no datasets given")
        for p in self.k_percentages:
            if not 0 < p <= 100:
                raise ContractError(f"k percentage must lie in (0, 100], got {p}")
        if self.cap < 2:
            raise ContractError(f"subsample cap must be at least 2, got {self.cap}")
        if self.reference != "min-minus-one":
            raise InputError(f"unknown hypervolume reference rule {self.reference!r}")


@dataclass
class Cell:
    dataset: str
    instance: str
    method: str
    k_pct: Fraction
    k_abs: int
    status: str = "ok"  # ok | incomplete | absent
    slate: tuple = ()
    raw: dict = field(default_factory=dict)
    normalized: dict = field(default_factory=dict)
    note: str = ""

    def to_json(self):
        out = {
            "dataset": self.dataset,
            "instance": self.instance,
            "method": METHOD_NAMES[self.method],
            "k_pct": _num(self.k_pct),
            "k_abs": self.k_abs,
            "status": self.status,
            "slate": list(self.slate),
            "raw": {k: _num(v) for k, v in self.raw.items()},
            "raw_exact": {k: format_value(v) for k, v in self.raw.items()},
            "normalized": {k: _pct(v) for k, v in self.normalized.items()},
        }
        if self.note:
            out["note"] = self.note
        return out


def _num(v):
    v = Fraction(v)
    return int(v) if v.denominator == 1 else round(float(v), 12)


def _pct(v):
    return None if v is None else round(float(v * 100), 9)


@dataclass
class ReportTable:
    config: ExperimentConfig
    cells: list
    instances: dict  # instance name -> Instance (after subsampling)

    @property
    def complete(self) -> bool:
        return all(c.status != "incomplete" for c in self.cells)

    def rows(self):
        """Mean normalized score per (dataset, method, k%), over completed instances."""
        groups = {}
        for c in self.cells:
            if c.status == "ok":
                groups.setdefault((c.dataset, c.method, c.k_pct), []).append(c)
        out = []
        for (dataset, method, k_pct), cells in sorted(groups.items(), key=lambda kv: _row_key(kv[0])):
            means = {}
            for key in SCORE_KEYS:
                vals = [c.normalized[key] for c in cells if c.normalized.get(key) is not None]
                if vals:
                    means[key] = sum(vals, Fraction(0)) / len(vals)
            out.append({"dataset": dataset, "method": METHOD_NAMES[method], "k_pct": _num(k_pct),
                        "instances": len(cells), "mean_normalized": {k: _pct(v) for k, v in means.items()}})
        return out

    def to_json(self) -> str:
        doc = {
            "config": {
                "datasets": list(self.config.datasets),
                "k_percentages": [_num(p) for p in self.config.k_percentages],
                "measures": list(self.config.measures),
                "cap": self.config.cap,
                "seed": self.config.seed,
                "reference": self.config.reference,
            },
            "complete": self.complete,
            "cells": [c.to_json() for c in self.cells],
            "summary": self.rows(),
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["dataset", "instance", "method", "k_pct", "k_abs", "status"]
                   + [f"raw_{k}" for k in SCORE_KEYS] + [f"norm_{k}" for k in SCORE_KEYS])
        for c in self.cells:
            raw = [format_value(c.raw[k]) if k in c.raw else "" for k in SCORE_KEYS]
            norm = ["" if c.normalized.get(k) is None else repr(_pct(c.normalized[k])) for k in SCORE_KEYS]
            w.writerow([c.dataset, c.instance, METHOD_NAMES[c.method], format_value(c.k_pct), c.k_abs, c.status]
                       + raw + norm)
        return buf.getvalue()

    def summary_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["dataset", "method", "k_pct", "instances"] + list(SCORE_KEYS))
        for r in self.rows():
            m = r["mean_normalized"]
            w.writerow([r["dataset"], r["method"], r["k_pct"], r["instances"]]
                       + ["" if m.get(k) is None else repr(m[k]) for k in SCORE_KEYS])
        return buf.getvalue()

    def plot_csv(self, instance_name) -> str:
        """Alternative coordinates plus one 0/1 column per (method, k%) selection."""
        inst = self.instances[instance_name]
        cells = [c for c in self.cells if c.instance == instance_name and c.status == "ok"]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"o{i}" for i in range(1, inst.d + 1)]
                   + [f"{c.method}@{format_value(c.k_pct)}" for c in cells])
        chosen = [set(c.slate) for c in cells]
        for i, p in enumerate(inst.points):
            w.writerow([format_value(v) for v in p] + [int(i in s) for s in chosen])
        return buf.getvalue()

    def write(self, outdir) -> list:
        outdir = Path(outdir)
        (outdir / "plot").mkdir(parents=True, exist_ok=True)
        written = {
            outdir / "report.json": self.to_json(),
            outdir / "report.csv": self.to_csv(),
            outdir / "summary.csv": self.summary_csv(),
        }
        for name in sorted(self.instances):
            written[outdir / "plot" / f"{_safe(name)}.csv"] = self.plot_csv(name)
        for path, text in written.items():
            path.write_text(text, encoding="utf-8")
        return sorted(written)


def _safe(name):
    return "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in name)


def _row_key(key):
    dataset, method, k_pct = key
    return dataset, k_pct, MEASURES.index(method)


def score_slate(slate, inst: Instance, ref) -> dict:
    """The five report measures of one slate, exactly."""
    scores = {}
    if len(slate) >= 2:
        scores["uniformity"] = uniformity(slate, inst)
    scores["coverage"] = coverage(slate, inst)
    scores["dcoverage"] = directed_coverage(slate, inst)
    scores["hypervolume"] = hypervolume(slate, inst, ref)
    scores["avg_sum"] = avg_sum_objective(slate, inst)
    return scores


def normalize(cells, offsets=None):
    """Fill ``normalized`` for the completed cells of one (instance, k) group.

    ``offsets`` shifts a score before taking ratios. The average summed
    objective is measured from the hypervolume reference point, so that
    ratios stay meaningful on fronts with negative values.
    """
    offsets = offsets or {}
    done = [c for c in cells if c.status == "ok"]
    for key in SCORE_KEYS:
        shift = offsets.get(key, 0)
        vals = [c.raw[key] - shift for c in done if key in c.raw]
        if not vals:
            continue
        best = max(vals) if HIGHER_IS_BETTER[key] else min(vals)
        for c in done:
            if key not in c.raw:
                continue
            v = c.raw[key] - shift
            if best == 0:
                # ratio to a zero optimum: equal means 100%, otherwise unbounded
                c.normalized[key] = Fraction(1) if v == 0 else None
            else:
                c.normalized[key] = Fraction(v) / best


def _recheck(inst, k, measure, value, limit):
    if comb(inst.n, k) <= limit:
        oracle = solve_brute(inst, k, measure, cap=limit).optimal_value
        if oracle != value:
            raise AssertionError(f"{inst.name}: {measure} with k={k} solved to {value}, brute force gives {oracle}")


def run_instance(dataset, inst, cfg: ExperimentConfig):
    ref = default_reference_point(inst)
    cells = []
    for pct in cfg.k_percentages:
        k = k_from_percentage(pct, inst.n)
        group = []
        for measure in cfg.measures:
            cell = Cell(dataset, inst.name, measure, pct, k)
            group.append(cell)
            if measure == UNIFORMITY and k < 2:
                cell.status, cell.note = "absent", "uniformity needs k >= 2"
                continue
            try:
                res = solve(SolveRequest(inst, measure, k, solver=cfg.solver, node_budget=cfg.node_budget))
            except SolverIncomplete as exc:
                cell.status, cell.note = "incomplete", str(exc)
                continue
            if cfg.recheck_limit:
                _recheck(inst, k, measure, res.optimal_value, cfg.recheck_limit)
            cell.slate = res.slate.members
            cell.raw = score_slate(res.slate, inst, ref)
            own = SCORE_OF_MEASURE[measure]
            assert cell.raw[own] == res.optimal_value
        normalize(group, {"avg_sum": sum(ref)})
        cells.extend(group)
    return cells


def run_experiment(cfg: ExperimentConfig) -> ReportTable:
    """Solve, score and normalize every cell; incomplete cells are kept and marked."""
    cells, instances = [], {}
    for spec in cfg.datasets:
        dataset, insts = load_dataset(spec, cfg.strict)
        for inst in insts:
            # one sample per instance, shared by every method and k
            seed = f"{cfg.seed}:{dataset}:{inst.name}"
            inst = subsample(inst, cfg.cap, seed)
            key = f"{dataset}/{inst.name}"
            if key in instances:
                raise InputError(f"instance {key} appears twice")
            inst = Instance(inst.points, inst.kinds, key, inst.allow_duplicates)
            instances[key] = inst
            cells.extend(run_instance(dataset, inst, cfg))
    table = ReportTable(cfg, cells, instances)
    if cfg.output_dir:
        table.write(cfg.output_dir)
    return table


def check_report(table: ReportTable) -> list:
    """Violations of the report invariants (empty when everything holds).

    * each method scores exactly 100% on its own measure;
    * higher-is-better scores are at most 100%, lower-is-better at least 100%;
    * every method's own raw optimum is non-increasing in k (a larger slate
      covers better but cannot spread further apart);
    * every slate indexes into its instance.
    """
    problems = []
    for c in table.cells:
        if c.status != "ok":
            continue
        own = SCORE_OF_MEASURE[c.method]
        if c.normalized.get(own) != 1:
            problems.append(f"{c.instance} {c.method} k={c.k_abs}: own measure at {c.normalized.get(own)}")
        for key, v in c.normalized.items():
            if v is None:
                continue
            if HIGHER_IS_BETTER[key] and v > 1 or not HIGHER_IS_BETTER[key] and v < 1:
                problems.append(f"{c.instance} {c.method} k={c.k_abs}: {key} normalized to {v}")
        inst = table.instances[c.instance]
        if len(c.slate) != c.k_abs or not all(0 <= i < inst.n for i in c.slate):
            problems.append(f"{c.instance} {c.method}: slate {c.slate} invalid")
    series = {}
    for c in table.cells:
        if c.status == "ok":
            series.setdefault((c.instance, c.method), []).append((c.k_abs, c.raw[SCORE_OF_MEASURE[c.method]]))
    for (name, method), pts in series.items():
        pts.sort()
        for (k0, v0), (k1, v1) in zip(pts, pts[1:]):
            if k1 > k0 and v1 > v0:
                problems.append(f"{name} {method}: optimum rose from {v0} at k={k0} to {v1} at k={k1}")
    return problems
