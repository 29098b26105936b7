"""Domain types, dominance, the two norms and the slate quality measures.

All coordinates are held as :class:`fractions.Fraction`, so every measure
value is exact and optimal values can be compared with ``==``.

Orientation: every objective is maximized. ``y`` dominates ``x`` when
``y`` is at least as good in every objective and strictly better in one.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import ContractError, InputError

Alternative = tuple  # tuple[Fraction, ...]

CARDINAL = "cardinal"
ORDINAL = "ordinal"
APPROVAL = "approval"
OBJECTIVE_KINDS = (CARDINAL, ORDINAL, APPROVAL)

UNIFORMITY = "uniformity"
COVERAGE = "coverage"
DIRECTED_COVERAGE = "directed_coverage"
MEASURES = (UNIFORMITY, COVERAGE, DIRECTED_COVERAGE)

_MEASURE_ALIASES = {
    "uniformity": UNIFORMITY,
    "u": UNIFORMITY,
    "coverage": COVERAGE,
    "c": COVERAGE,
    "directed_coverage": DIRECTED_COVERAGE,
    "directed-coverage": DIRECTED_COVERAGE,
    "dcoverage": DIRECTED_COVERAGE,
    "dc": DIRECTED_COVERAGE,
}


def measure_id(name: str) -> str:
    """Normalize a measure name (``"dcoverage"``, ``"dc"``...) to its canonical id."""
    try:
        return _MEASURE_ALIASES[name.strip().lower()]
    except KeyError:
        raise InputError(f"unknown measure {name!r}; expected one of {', '.join(MEASURES)}") from None


def exact(value) -> Fraction:
    """Convert an int, decimal string, float or rational to an exact Fraction.

    Floats go through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a number: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise InputError(f"non-finite value {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a number: {value!r}") from None
    try:
        return Fraction(value)
    except (TypeError, ValueError):
        raise InputError(f"not a number: {value!r}") from None


def point(coords: Iterable) -> Alternative:
    """Build an alternative (a tuple of Fractions) from any numeric iterable."""
    p = tuple(exact(c) for c in coords)
    if not p:
        raise InputError("an alternative needs at least one coordinate")
    return p


def _same_dim(x: Sequence, y: Sequence) -> None:
    if len(x) != len(y):
        raise InputError(f"dimension mismatch: {len(x)} vs {len(y)}")


def dominates(y: Sequence, x: Sequence) -> bool:
    """Return True iff ``y`` dominates ``x``.

    That is ``x_i <= y_i`` for every objective and ``x_j < y_j`` for some ``j``.
    Note the argument order: the dominating candidate comes first.
    """
    _same_dim(x, y)
    strict = False
    for xi, yi in zip(x, y):
        if xi > yi:
            return False
        if xi < yi:
            strict = True
    return strict


def pareto_filter(points: Sequence[Sequence]) -> list:
    """Return the points not dominated by any other input point, in input order."""
    pts = list(points)
    keep = []
    for i, p in enumerate(pts):
        if not any(j != i and dominates(q, p) for j, q in enumerate(pts)):
            keep.append(p)
    return keep


def manhattan(x: Sequence, y: Sequence):
    """l1 distance ``sum |x_i - y_i|``."""
    _same_dim(x, y)
    return sum((abs(a - b) for a, b in zip(x, y)), Fraction(0))


def directed(x: Sequence, y: Sequence):
    """Positive-part distance ``sum max(x_i - y_i, 0)``: how much ``x`` leads ``y``.

    ``directed(a, s)`` is the efficiency lost by presenting ``s`` instead of ``a``.
    Not symmetric; ``directed(x, y) + directed(y, x) == manhattan(x, y)``.
    """
    _same_dim(x, y)
    return sum((a - b for a, b in zip(x, y) if a > b), Fraction(0))


@dataclass(frozen=True)
class Instance:
    """A validated set of mutually non-dominating alternatives.

    Use :meth:`from_points` to build one from raw data; it handles conversion,
    de-duplication and (in lenient mode) dominance filtering. The constructor
    itself only validates.
    """

    points: tuple
    kinds: tuple = ()
    name: str = ""
    allow_duplicates: bool = field(default=False, compare=False)

    def __post_init__(self):
        pts = tuple(point(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise InputError("an instance needs at least one alternative")
        d = len(pts[0])
        for p in pts:
            if len(p) != d:
                raise InputError(f"dimension mismatch: {len(p)} vs {d}")
        kinds = tuple(self.kinds) if self.kinds else (CARDINAL,) * d
        if len(kinds) != d:
            raise InputError(f"{len(kinds)} objective kinds given for {d} objectives")
        for kind in kinds:
            if kind not in OBJECTIVE_KINDS:
                raise InputError(f"unknown objective kind {kind!r}")
        object.__setattr__(self, "kinds", kinds)

        if not self.allow_duplicates and len(set(pts)) != len(pts):
            seen = {}
            for i, p in enumerate(pts):
                if p in seen:
                    raise InputError(f"alternatives {seen[p]} and {i} are identical")
                seen[p] = i
        for i, p in enumerate(pts):
            for j, q in enumerate(pts):
                if i != j and dominates(q, p):
                    raise InputError(f"alternative {j} {_fmt(q)} dominates alternative {i} {_fmt(p)}")
        for axis, kind in enumerate(kinds):
            column = [p[axis] for p in pts]
            if kind == APPROVAL and any(v not in (0, 1) for v in column):
                raise InputError(f"objective {axis + 1} is approval but has values outside {{0, 1}}")
            if kind == ORDINAL and sorted(column) != list(range(1, len(pts) + 1)):
                raise InputError(f"objective {axis + 1} is ordinal but is not a permutation of 1..{len(pts)}")

    @classmethod
    def from_points(cls, points, kinds=None, name="", strict=True, allow_duplicates=False):
        """Build an instance from raw coordinates.

        Duplicates are dropped with a warning unless ``allow_duplicates``.
        Dominated points raise :class:`InputError` in strict mode and are
        dropped with a warning otherwise.
        """
        pts = [point(p) for p in points]
        if not pts:
            raise InputError("an instance needs at least one alternative")
        if not allow_duplicates:
            unique = list(dict.fromkeys(pts))
            if len(unique) != len(pts):
                warnings.warn(f"dropped {len(pts) - len(unique)} duplicate alternative(s)", stacklevel=2)
            pts = unique
        if not strict:
            kept = pareto_filter(pts)
            if len(kept) != len(pts):
                warnings.warn(f"dropped {len(pts) - len(kept)} dominated alternative(s)", stacklevel=2)
            pts = kept
        return cls(tuple(pts), tuple(kinds) if kinds else (), name, allow_duplicates)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return len(self.points[0])

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def index_of(self, p) -> int:
        """Index of the first alternative with coordinates ``p``."""
        p = point(p)
        try:
            return self.points.index(p)
        except ValueError:
            raise InputError(f"{_fmt(p)} is not an alternative of this instance") from None

    def replace(self, i, new_points, strict=True):
        """Return a copy with alternative ``i`` replaced by zero or more new points."""
        pts = list(self.points[:i]) + [point(p) for p in new_points] + list(self.points[i + 1 :])
        return Instance.from_points(pts, self.kinds, self.name, strict, self.allow_duplicates)


@dataclass(frozen=True)
class Slate:
    """A size-k selection, stored as a sorted tuple of instance indices."""

    members: tuple

    def __post_init__(self):
        members = tuple(sorted(int(i) for i in self.members))
        if len(set(members)) != len(members):
            raise ContractError(f"slate has repeated indices: {members}")
        object.__setattr__(self, "members", members)

    @property
    def k(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, i):
        return i in self.members

    def points(self, inst: Instance) -> list:
        return [inst.points[i] for i in self.members]

    def check(self, inst: Instance) -> "Slate":
        for i in self.members:
            if not 0 <= i < inst.n:
                raise InputError(f"slate index {i} out of range for {inst.n} alternatives")
        return self


@dataclass(frozen=True)
class SolveResult:
    optimal_value: Fraction
    slate: Slate
    all_optimal: tuple | None = None
    solver_id: str = ""
    stats: dict = field(default_factory=dict, compare=False)


def _fmt(p) -> str:
    return "(" + ", ".join(str(c) for c in p) + ")"


def _members(slate, inst: Instance) -> list:
    if not isinstance(slate, Slate):
        slate = Slate(tuple(slate))
    slate.check(inst)
    return [inst.points[i] for i in slate.members]


def uniformity(slate, inst: Instance):
    """Minimum Manhattan distance over distinct pairs of slate members."""
    pts = _members(slate, inst)
    if len(pts) < 2:
        raise ContractError("uniformity needs a slate of at least two alternatives")
    return min(manhattan(pts[a], pts[b]) for a in range(len(pts)) for b in range(a + 1, len(pts)))


def coverage(slate, inst: Instance):
    """Largest Manhattan distance from an alternative to its nearest slate member."""
    pts = _members(slate, inst)
    if not pts:
        raise ContractError("coverage of an empty slate is undefined")
    return max(min(manhattan(a, s) for s in pts) for a in inst.points)


def directed_coverage(slate, inst: Instance):
    """Largest directed distance from an alternative to its best slate member."""
    pts = _members(slate, inst)
    if not pts:
        raise ContractError("directed coverage of an empty slate is undefined")
    return max(min(directed(a, s) for s in pts) for a in inst.points)


def evaluate(slate, inst: Instance, measure: str):
    """Dispatch on a measure id."""
    measure = measure_id(measure)
    if measure == UNIFORMITY:
        return uniformity(slate, inst)
    if measure == COVERAGE:
        return coverage(slate, inst)
    return directed_coverage(slate, inst)


def hypervolume(slate, inst: Instance, ref_point: Sequence):
    """Exact volume of the union of boxes ``[ref_point, a]`` over slate members.

    Every member must strictly dominate the reference point in each objective.
    Computed by slicing along the last objective; exact for any ``d`` but the
    cost grows quickly beyond four objectives.
    """
    pts = _members(slate, inst)
    ref = point(ref_point)
    for p in pts:
        _same_dim(p, ref)
        if any(a <= r for a, r in zip(p, ref)):
            raise InputError(f"{_fmt(p)} does not dominate the reference point {_fmt(ref)}")
    return _hv(pts, ref)


def _hv(pts, ref):
    if not pts:
        return Fraction(0)
    if len(ref) == 1:
        return max(p[0] for p in pts) - ref[0]
    pts = sorted(pts, key=lambda p: p[-1], reverse=True)
    vol = Fraction(0)
    active = []
    i = 0
    while i < len(pts):
        level = pts[i][-1]
        while i < len(pts) and pts[i][-1] == level:
            active.append(pts[i][:-1])
            i += 1
        lower = pts[i][-1] if i < len(pts) else ref[-1]
        vol += _hv(pareto_filter(set(active)), ref[:-1]) * (level - lower)
    return vol


def avg_sum_objective(slate, inst: Instance):
    """Mean over slate members of the summed objective values."""
    pts = _members(slate, inst)
    if not pts:
        raise ContractError("average summed objective of an empty slate is undefined")
    return sum((sum(p, Fraction(0)) for p in pts), Fraction(0)) / len(pts)


def default_reference_point(inst: Instance) -> Alternative:
    """Componentwise minimum over the instance minus one unit."""
    return tuple(min(p[i] for p in inst.points) - 1 for i in range(inst.d))
