"""Distance-preserving maps that turn planar point sets into Pareto fronts.

These are the transformations behind the hardness reductions. They are
useful on their own as generators of valid 3- and 4-objective instances
with controlled distances. All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import exact, point
from .errors import InputError

DEFAULT_EPS = Fraction(1, 8)


@dataclass(frozen=True, order=True)
class GridPoint:
    i: int
    j: int


def _grid(v) -> GridPoint:
    if isinstance(v, GridPoint):
        return v
    i, j = v
    return GridPoint(int(i), int(j))


def trigrid_distance(v, w) -> int:
    """Shortest-path length between two vertices of the triangular grid.

    Neighbours of (i, j) are (i±1, j), (i, j±1), (i+1, j-1) and (i-1, j+1).
    When the coordinate differences share a sign (zero counts as either)
    the path length is their sum, otherwise the larger of the two.
    """
    v, w = _grid(v), _grid(w)
    di, dj = v.i - w.i, v.j - w.j
    if di * dj >= 0:
        return abs(di) + abs(dj)
    return max(abs(di), abs(dj))


def trigrid_embed(v):
    """Map (i, j) to i·(1, 0, -1) + j·(0, 1, -1).

    Directed distance between images equals :func:`trigrid_distance`.
    """
    v = _grid(v)
    return (Fraction(v.i), Fraction(v.j), Fraction(-v.i - v.j))


def trigrid_window(radius):
    """All grid points with ``|i|, |j| <= radius``."""
    return [GridPoint(i, j) for i in range(-radius, radius + 1) for j in range(-radius, radius + 1)]


def hyperplane_embed(points, eps=DEFAULT_EPS):
    """Place planar points on the plane orthogonal to (1, eps, eps).

    ``(x1, x2) -> x1·(-eps, 0, 1) + x2·(-eps, 1, 0)``. No image dominates
    another, and distances stretch by at most a factor ``1 + eps``.
    """
    eps = exact(eps)
    if eps <= 0:
        raise InputError(f"eps must be positive, got {eps}")
    out = []
    for p in points:
        p = point(p)
        if len(p) != 2:
            raise InputError(f"hyperplane_embed takes 2-D points, got {len(p)}-D")
        x1, x2 = p
        out.append((-eps * (x1 + x2), x2, x1))
    return out


def shear_map(points, delta, n=None):
    """Spread points of [n]×[n] so that no two share a coordinate.

    Uses ``(x1, x2) -> (t·x1 + x2, x1 + t·x2)`` with ``t = max(n + 1, 2Δ + 2)``
    and returns ``(images, Δ')`` with ``Δ' = (t + 1)·Δ``, for which
    ``|x - y| <= Δ`` iff ``|f(x) - f(y)| <= Δ'`` on integer inputs.
    ``n`` defaults to the largest input coordinate.
    """
    pts = [tuple(int(c) for c in p) for p in points]
    if int(delta) != delta or delta < 1:
        raise InputError(f"delta must be a positive integer, got {delta}")
    delta = int(delta)
    for p, raw in zip(pts, points):
        if len(p) != 2 or any(Fraction(c) != Fraction(r) for c, r in zip(p, raw)):
            raise InputError(f"shear_map takes integer 2-D points, got {raw}")
    if n is None:
        n = max((max(p) for p in pts), default=1)
    for p in pts:
        if not all(1 <= c <= n for c in p):
            raise InputError(f"{p} has a coordinate outside 1..{n}")
    t = max(n + 1, 2 * delta + 2)
    images = [(Fraction(t * x1 + x2), Fraction(x1 + t * x2)) for x1, x2 in pts]
    return images, (t + 1) * delta


def shear_parameters(n, delta):
    """``(t, Δ')`` used by :func:`shear_map`."""
    t = max(n + 1, 2 * delta + 2)
    return t, (t + 1) * delta


def antisymmetric_lift(points):
    """``(x1, x2) -> (x1/2, -x1/2, x2/2, -x2/2)``.

    Keeps Manhattan distances, halves them under the directed norm in both
    directions, and produces images that never dominate one another, so any
    planar point set becomes a valid 4-objective instance.
    """
    out = []
    for p in points:
        p = point(p)
        if len(p) != 2:
            raise InputError(f"antisymmetric_lift takes 2-D points, got {len(p)}-D")
        x1, x2 = p
        out.append((x1 / 2, -x1 / 2, x2 / 2, -x2 / 2))
    return out
