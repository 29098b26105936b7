import itertools
import random
from fractions import Fraction

import pytest

from paretoprune import InputError, Instance, directed, dominates, manhattan
from paretoprune.embeddings import (
    GridPoint,
    antisymmetric_lift,
    hyperplane_embed,
    shear_map,
    shear_parameters,
    trigrid_distance,
    trigrid_embed,
    trigrid_window,
)


def bfs_grid_distance(v, w, radius):
    """Shortest path on the triangular grid by breadth-first search."""
    steps = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)]
    frontier, seen, dist = [v], {v}, 0
    while frontier:
        if w in frontier:
            return dist
        nxt = []
        for i, j in frontier:
            for di, dj in steps:
                u = (i + di, j + dj)
                if u not in seen and abs(u[0]) <= radius and abs(u[1]) <= radius:
                    seen.add(u)
                    nxt.append(u)
        frontier, dist = nxt, dist + 1
    raise AssertionError("unreachable")


def test_trigrid_distance_examples():
    assert trigrid_distance((0, 0), (2, 1)) == 3
    assert trigrid_distance((0, 0), (2, -1)) == 2
    assert trigrid_distance(GridPoint(3, 4), GridPoint(3, 4)) == 0


def test_trigrid_distance_is_shortest_path():
    rng = random.Random(1)
    for _ in range(60):
        v = (rng.randint(-3, 3), rng.randint(-3, 3))
        w = (rng.randint(-3, 3), rng.randint(-3, 3))
        # paths never need to leave a slightly larger window
        assert trigrid_distance(v, w) == bfs_grid_distance(v, w, 8)


def test_trigrid_embed_examples():
    assert trigrid_embed((2, -1)) == (2, -1, -1)
    assert directed(trigrid_embed((2, -1)), trigrid_embed((0, 0))) == 2
    assert trigrid_embed((0, 0)) == (0, 0, 0)
    assert len(trigrid_window(6)) == 169


def test_hyperplane_embed_properties():
    rng = random.Random(2)
    eps = Fraction(1, 8)
    pts = [(rng.randint(-10, 10), rng.randint(-10, 10)) for _ in range(40)]
    images = hyperplane_embed(pts)
    for f in images:
        assert f[0] + eps * f[1] + eps * f[2] == 0
    for f, g in itertools.combinations(images, 2):
        assert not dominates(f, g) and not dominates(g, f)
    assert hyperplane_embed([(3, 4)]) == hyperplane_embed([(3, 4)])
    with pytest.raises(InputError):
        hyperplane_embed([(1, 1)], eps=0)


def test_shear_map_examples():
    assert shear_parameters(12, 4) == (13, 56)
    images, dp = shear_map([(1, 1), (1, 5), (1, 1)], 4, n=12)
    assert dp == 56
    assert images[0] == images[2]
    assert images[0][0] != images[1][0]
    with pytest.raises(InputError):
        shear_map([(0, 1)], 4, n=12)
    with pytest.raises(InputError):
        shear_map([(1, 1)], 0)


@pytest.mark.parametrize("delta", [1, 2, 3])
def test_shear_map_threshold_small(delta):
    grid = [(a, b) for a in range(1, 8) for b in range(1, 8)]
    images, dp = shear_map(grid, delta, n=7)
    for (x, fx), (y, fy) in itertools.combinations(zip(grid, images), 2):
        assert (manhattan(x, y) <= delta) == (manhattan(fx, fy) <= dp)
        assert fx[0] != fy[0] and fx[1] != fy[1]


def test_antisymmetric_lift():
    assert antisymmetric_lift([(2, 0)]) == [(1, -1, 0, 0)]
    assert antisymmetric_lift([(0, 0)]) == [(0, 0, 0, 0)]
    rng = random.Random(3)
    pts = list({(Fraction(rng.randint(-40, 40), rng.randint(1, 4)), rng.randint(-9, 9)) for _ in range(60)})
    images = antisymmetric_lift(pts)
    Instance.from_points(images)
    for (x, fx), (y, fy) in itertools.combinations(zip(pts, images), 2):
        assert manhattan(fx, fy) == manhattan(x, y)
        assert directed(fx, fy) == manhattan(x, y) / 2
