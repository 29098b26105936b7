import itertools
import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paretoprune import (
    ContractError,
    InputError,
    Instance,
    Slate,
    avg_sum_objective,
    coverage,
    directed,
    directed_coverage,
    dominates,
    hypervolume,
    manhattan,
    pareto_filter,
    uniformity,
)
from paretoprune.core import exact, measure_id

from conftest import plain_directed, plain_l1

coords = st.lists(st.integers(-20, 20), min_size=3, max_size=3)


def test_dominance_cases():
    assert dominates((1, 1), (0, 1))
    assert not dominates((0, 1), (1, 0)) and not dominates((1, 0), (0, 1))
    assert not dominates((2, 3), (2, 3))
    with pytest.raises(InputError):
        dominates((1, 2), (1, 2, 3))


def test_pareto_filter_examples():
    assert pareto_filter([(1, 0), (0, 1), (0, 0)]) == [(1, 0), (0, 1)]
    assert pareto_filter([(5,)]) == [(5,)]


def test_pareto_filter_matches_pairwise_oracle():
    rng = random.Random(3)
    for _ in range(30):
        pts = [tuple(rng.randint(0, 9) for _ in range(3)) for _ in range(50)]
        expected = [p for p in pts if not any(all(b >= a for a, b in zip(p, q)) and q != p for q in pts)]
        got = pareto_filter(pts)
        assert got == [tuple(Fraction(c) for c in p) for p in expected]
        assert pareto_filter(got) == got


def test_norm_examples():
    assert manhattan((2, 0, 0), (0, -2, 1)) == 5
    tenth = Fraction(1, 10)
    assert manhattan((1, 0), (0, tenth)) == Fraction(11, 10)
    assert directed((1, 0), (0, tenth)) == 1
    assert directed((0, tenth), (1, 0)) == tenth
    assert directed((3, 4), (3, 4)) == 0
    assert directed((0, 1), (1, 1)) == 0


@settings(max_examples=200, deadline=None)
@given(coords, coords, coords)
def test_norm_identities(x, y, z):
    assert directed(x, y) + directed(y, x) == manhattan(x, y)
    assert manhattan(x, y) == manhattan(y, x) == plain_l1(x, y)
    assert directed(x, y) == plain_directed(x, y)
    assert manhattan(x, z) <= manhattan(x, y) + manhattan(y, z)
    assert (manhattan(x, y) == 0) == (x == y)
    if all(b >= a for a, b in zip(x, y)):
        assert directed(x, y) == 0


def test_exact_parsing():
    assert exact("0.1") == Fraction(1, 10)
    assert exact(0.1) == Fraction(1, 10)
    assert exact("2/3") == Fraction(2, 3)
    for bad in ("abc", float("nan"), True):
        with pytest.raises(InputError):
            exact(bad)
    assert measure_id("dc") == measure_id("dcoverage") == "directed_coverage"
    with pytest.raises(InputError):
        measure_id("spread")


def test_instance_validation():
    with pytest.raises(InputError, match="dominates"):
        Instance.from_points([(1, 1), (0, 0)])
    with pytest.raises(InputError):
        Instance.from_points([])
    with pytest.raises(InputError):
        Instance.from_points([(1, 0), (0, 1, 2)])
    with pytest.warns(UserWarning, match="duplicate"):
        inst = Instance.from_points([(1, 0), (1, 0), (0, 1)])
    assert inst.n == 2
    with pytest.warns(UserWarning, match="dominated"):
        inst = Instance.from_points([(1, 0), (0, 1), (0, 0)], strict=False)
    assert inst.points == ((1, 0), (0, 1))


def test_objective_kinds():
    Instance.from_points([(1, 0), (0, 1)], kinds=["approval", "approval"])
    with pytest.raises(InputError, match="approval"):
        Instance.from_points([(2, 0), (0, 1)], kinds=["approval", "approval"])
    Instance.from_points([(1, 2), (2, 1)], kinds=["ordinal", "ordinal"])
    with pytest.raises(InputError, match="ordinal"):
        Instance.from_points([(1, 3), (3, 1)], kinds=["ordinal", "ordinal"])
    with pytest.raises(InputError):
        Instance.from_points([(1, 0), (0, 1)], kinds=["weird", "approval"])


def test_slate_checks():
    inst = Instance.from_points([(1, 0), (0, 1)])
    assert Slate((1, 0)).members == (0, 1)
    with pytest.raises(ContractError):
        Slate((0, 0))
    with pytest.raises(InputError):
        Slate((0, 5)).check(inst)


def test_measure_examples(monotone_fixture):
    four = Instance.from_points([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 20)])
    assert uniformity((0, 1, 2), four) == 2
    assert coverage((0, 2), monotone_fixture) == 6
    moved = Instance.from_points([(3, 1, 0), (2, 2, 1), (1, 3, 0), (0, 0, 3)])
    assert coverage((1, 3), moved) == 3
    assert coverage(range(4), moved) == 0
    two = Instance.from_points([(2, 0), (0, 1)])
    assert directed_coverage((0,), two) == 1
    assert directed_coverage((0, 1), two) == 0
    with pytest.raises(ContractError):
        uniformity((0,), two)
    with pytest.raises(ContractError):
        coverage((), two)


def test_measures_against_definitions():
    rng = random.Random(8)
    for _ in range(50):
        pts = Instance.from_points([(a, -a, rng.randint(-5, 5)) for a in rng.sample(range(-20, 20), 8)])
        k = rng.randint(2, pts.n)
        s = sorted(rng.sample(range(pts.n), k))
        chosen = [pts.points[i] for i in s]
        assert uniformity(s, pts) == min(plain_l1(p, q) for p, q in itertools.combinations(chosen, 2))
        assert coverage(s, pts) == max(min(plain_l1(a, c) for c in chosen) for a in pts.points)
        assert directed_coverage(s, pts) == max(min(plain_directed(a, c) for c in chosen) for a in pts.points)


def test_measures_monotone_in_slate():
    rng = random.Random(9)
    inst = Instance.from_points([(i, -i, rng.randint(0, 3)) for i in range(12)])
    for _ in range(40):
        small = sorted(rng.sample(range(inst.n), 3))
        big = sorted(set(small) | set(rng.sample(range(inst.n), 3)))
        assert coverage(big, inst) <= coverage(small, inst)
        assert directed_coverage(big, inst) <= directed_coverage(small, inst)
        assert uniformity(big, inst) <= uniformity(small, inst)


def test_hypervolume_examples():
    one = Instance.from_points([(1, 1)])
    assert hypervolume((0,), one, (0, 0)) == 1
    two = Instance.from_points([(1, 2), (2, 1)])
    assert hypervolume((0, 1), two, (0, 0)) == 3
    with pytest.raises(InputError):
        hypervolume((0,), one, (1, 0))


def test_hypervolume_monte_carlo():
    """Exact volume against a seeded Monte Carlo estimate (within 4 sigma)."""
    warnings.simplefilter("ignore")
    rng = random.Random(21)
    for d in (2, 3):
        pts = Instance.from_points([tuple(rng.randint(1, 10) for _ in range(d)) for _ in range(8)], strict=False)
        ref = (0,) * d
        exact_vol = hypervolume(range(pts.n), pts, ref)
        hi = [max(p[i] for p in pts.points) for i in range(d)]
        box = 1
        for h in hi:
            box *= h
        samples = 60_000
        hits = 0
        for _ in range(samples):
            z = [rng.uniform(0, h) for h in hi]
            if any(all(c <= p[i] for i, c in enumerate(z)) for p in pts.points):
                hits += 1
        p_hat = hits / samples
        sigma = box * (p_hat * (1 - p_hat) / samples) ** 0.5
        assert abs(box * p_hat - float(exact_vol)) <= 4 * sigma + 1e-9


def test_hypervolume_properties():
    rng = random.Random(5)
    inst = Instance.from_points([(i, 10 - i, rng.randint(0, 4)) for i in range(10)], strict=False)
    ref = (-1, -1, -1)
    for _ in range(20):
        s = rng.sample(range(inst.n), 4)
        assert hypervolume(s, inst, ref) == hypervolume(list(reversed(s)), inst, ref)
        extra = sorted(set(s) | {rng.randrange(inst.n)})
        assert hypervolume(extra, inst, ref) >= hypervolume(s, inst, ref)


def test_avg_sum_objective():
    assert avg_sum_objective((0, 1), Instance.from_points([(1, 4), (3, 2)])) == 5
    zero = Instance.from_points([(0, 0, 0)])
    assert avg_sum_objective((0,), zero) == 0
    scaled = Instance.from_points([(3, 12), (9, 6)])
    base = Instance.from_points([(1, 4), (3, 2)])
    assert avg_sum_objective((0, 1), scaled) == 3 * avg_sum_objective((0, 1), base)
