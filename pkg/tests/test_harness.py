import random
from fractions import Fraction

import pytest

from paretoprune import COVERAGE, UNIFORMITY, ContractError, InputError, Instance, dominates
from paretoprune.harness import (
    BUILTINS,
    ExperimentConfig,
    check_report,
    emit_csv,
    ingest_csv,
    k_from_percentage,
    parse_csv_text,
    run_experiment,
    subsample,
)

from conftest import oracle, random_front


def test_ingest_lenient_drops_dominated(tmp_path):
    f = tmp_path / "front.csv"
    f.write_text("o1,o2\n1,0\n0,1\n0,0\n")
    with pytest.warns(UserWarning):
        inst = ingest_csv(f, strict=False)
    assert inst.n == 2
    with pytest.raises(InputError, match="dominates"):
        ingest_csv(f, strict=True)


def test_ingest_errors(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(InputError, match="empty"):
        ingest_csv(empty)
    bad = tmp_path / "bad.csv"
    bad.write_text("o1,o2\n1,0\n0,x\n")
    with pytest.raises(InputError, match=":3:"):
        ingest_csv(bad)
    with pytest.raises(InputError, match="header"):
        parse_csv_text("a,b\n1,2\n")
    with pytest.raises(InputError, match="expected 2"):
        parse_csv_text("o1,o2\n1\n")
    with pytest.raises(InputError):
        ingest_csv(tmp_path / "missing.csv")


def test_round_trip(tmp_path):
    rng = random.Random(1)
    inst = Instance.from_points([(Fraction(rng.randint(-50, 50), rng.randint(1, 7)), Fraction(i, 3), -i)
                                 for i in range(15)], strict=False)
    path = tmp_path / "rt.csv"
    emit_csv(inst, path)
    back = ingest_csv(path)
    assert back.points == inst.points
    assert parse_csv_text("o1,o2\n0.5,1/3\n").points == ((Fraction(1, 2), Fraction(1, 3)),)


def test_subsample():
    rng = random.Random(2)
    inst = random_front(rng, 150, 3, radius=40)
    assert subsample(inst, 200, 0) is inst
    big = random_front(rng, 500, 3, radius=60)
    a, b = subsample(big, 200, 7), subsample(big, 200, 7)
    assert a.points == b.points and a.n == 200
    assert set(a.points) <= set(big.points)
    assert not any(dominates(p, q) for p in a.points for q in a.points)
    with pytest.raises(ContractError):
        subsample(big, 1, 0)


def test_k_percentage_rounding():
    assert k_from_percentage(5, 40) == 2
    assert k_from_percentage(5, 30) == 2  # 1.5 rounds half up
    assert k_from_percentage(5, 10) == 1
    assert k_from_percentage(100, 17) == 17
    with pytest.raises(ContractError):
        k_from_percentage(0, 10)


def test_builtin_fronts_are_valid():
    for make in BUILTINS.values():
        inst = make()
        assert 2 <= inst.n <= 200


def test_experiment_invariants(tmp_path):
    cfg = ExperimentConfig(datasets=("builtin:concave2d", "builtin:zdt3"), output_dir=str(tmp_path))
    table = run_experiment(cfg)
    assert table.complete and check_report(table) == []
    assert (tmp_path / "report.json").exists() and (tmp_path / "summary.csv").exists()
    plots = sorted((tmp_path / "plot").iterdir())
    assert len(plots) == 2
    header = plots[0].read_text().splitlines()[0].split(",")
    assert header[:2] == ["o1", "o2"] and len(header) == 2 + 9


def test_uniformity_cell_absent_for_tiny_k(tmp_path):
    f = tmp_path / "tiny.csv"
    f.write_text("o1,o2\n" + "".join(f"{i},{-i}\n" for i in range(10)))
    table = run_experiment(ExperimentConfig(datasets=(str(f),), k_percentages=(5,)))
    cells = {c.method: c for c in table.cells}
    assert cells[UNIFORMITY].status == "absent"
    assert "uniformity" not in cells[COVERAGE].raw


def test_full_selection_cells(tmp_path):
    f = tmp_path / "full.csv"
    f.write_text("o1,o2,o3\n3,0,0\n0,3,0\n0,0,3\n1,1,1\n")
    table = run_experiment(ExperimentConfig(datasets=(str(f),), k_percentages=(100,)))
    hv = {c.raw["hypervolume"] for c in table.cells}
    assert len(hv) == 1
    for c in table.cells:
        assert c.raw["coverage"] == 0 and c.raw["dcoverage"] == 0


def test_cells_match_oracle_on_small_front(tmp_path):
    rng = random.Random(3)
    xs = sorted(rng.sample(range(400), 40))
    ys = sorted(rng.sample(range(400), 40), reverse=True)
    f = tmp_path / "f40.csv"
    f.write_text("o1,o2\n" + "".join(f"{x},{y}\n" for x, y in zip(xs, ys)))
    # k = 4 cells are rechecked against brute force inside the harness
    table = run_experiment(ExperimentConfig(datasets=(str(f),), k_percentages=(5, 10), recheck_limit=10**5))
    inst = next(iter(table.instances.values()))
    keys = {UNIFORMITY: "uniformity", COVERAGE: "coverage", "directed_coverage": "dcoverage"}
    for c in table.cells:
        if c.k_abs == 2:
            assert c.raw[keys[c.method]] == oracle(inst, 2, c.method)[0]


def test_report_is_deterministic():
    cfg = ExperimentConfig(datasets=("builtin:concave2d",), seed=3)
    assert run_experiment(cfg).to_json() == run_experiment(cfg).to_json()


def test_config_validation():
    with pytest.raises(ContractError):
        ExperimentConfig(datasets=("builtin:zdt3",), k_percentages=(0,))
    with pytest.raises(ContractError):
        ExperimentConfig(datasets=("builtin:zdt3",), cap=1)
    with pytest.raises(InputError):
        ExperimentConfig(datasets=())
    with pytest.raises(InputError):
        run_experiment(ExperimentConfig(datasets=("builtin:dtlz9",)))
