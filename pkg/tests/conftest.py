import itertools
import random
from fractions import Fraction

import pytest

from paretoprune import Instance, evaluate
from paretoprune.core import UNIFORMITY


def plain_l1(x, y):
    return sum(abs(a - b) for a, b in zip(x, y))


def plain_directed(x, y):
    return sum(max(a - b, 0) for a, b in zip(x, y))


def oracle(inst, k, measure):
    """Optimum and every optimal slate by itertools enumeration and the definitions."""
    best, slates = None, []
    maximize = measure == UNIFORMITY
    for combo in itertools.combinations(range(inst.n), k):
        pts = [inst.points[i] for i in combo]
        if measure == UNIFORMITY:
            v = min(plain_l1(p, q) for p, q in itertools.combinations(pts, 2))
        elif measure == "coverage":
            v = max(min(plain_l1(a, s) for s in pts) for a in inst.points)
        else:
            v = max(min(plain_directed(a, s) for s in pts) for a in inst.points)
        if best is None or (v > best if maximize else v < best):
            best, slates = v, [combo]
        elif v == best:
            slates.append(combo)
    return best, slates


def random_front_2d(rng, n):
    """n points with strictly increasing x and strictly decreasing y."""
    xs = sorted(rng.sample(range(0, 4 * n), n))
    ys = sorted(rng.sample(range(0, 4 * n), n), reverse=True)
    return Instance.from_points(list(zip(xs, ys)))


def random_front(rng, n, d, radius=20):
    """Sum-zero integer points: always mutually non-dominating."""
    pts = set()
    while len(pts) < n:
        head = [rng.randint(-radius, radius) for _ in range(d - 1)]
        pts.add(tuple(head + [-sum(head)]))
    return Instance.from_points(sorted(pts))


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def monotone_fixture():
    return Instance.from_points([(3, -10, 0), (1, 3, 0), (2, 2, 1), (0, 0, 3)])


__all__ = ["oracle", "plain_l1", "plain_directed", "random_front", "random_front_2d", "Fraction", "evaluate"]
