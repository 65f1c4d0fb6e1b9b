"""Finite metric spaces with exact rational distances."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .errors import MetricError, SubsetError

logger = logging.getLogger(__name__)

Rational = Fraction

BASE_POINT_LABEL = 'e'
TRUNCATION_LEVEL = Fraction(2)


def to_rational(value):
    """Exact conversion of ints, Fractions, "p/q" and decimal strings"""
    if isinstance(value, bool):
        raise TypeError(f"Not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # floats arrive from JSON numbers; their shortest repr is taken literally
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"Not a rational: {value!r}")


@dataclass(frozen=True)
class MetricSpace:
    labels: Tuple[str, ...]
    dist: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise MetricError("Point labels must be distinct")
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise MetricError(f"Distance matrix must be {n}x{n}")

    @classmethod
    def from_rows(cls, rows, labels=None, check=True):
        dist = tuple(tuple(to_rational(v) for v in row) for row in rows)
        if labels is None:
            labels = [f"x{i}" for i in range(len(dist))]
        space = cls(tuple(str(label) for label in labels), dist)
        if check:
            report = validate(space)
            if not report.ok:
                raise MetricError(report.message, report)
        return space

    def __len__(self):
        return len(self.labels)

    @property
    def size(self):
        return len(self.labels)

    def d(self, i, j):
        return self.dist[i][j]

    def index_of(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise SubsetError(f"Unknown point label: {label}")


@dataclass(frozen=True)
class PointSubset:
    parent: MetricSpace
    indices: Tuple[int, ...]

    def __post_init__(self):
        if not self.indices:
            raise SubsetError("Point subset must be nonempty")
        if list(self.indices) != sorted(set(self.indices)):
            raise SubsetError(f"Subset indices must be sorted and distinct: {self.indices}")
        n = len(self.parent)
        for i in self.indices:
            if not 0 <= i < n:
                raise SubsetError(f"Index {i} out of range for a space of {n} points")

    @classmethod
    def of(cls, parent, indices: Iterable[int]):
        return cls(parent, tuple(sorted(set(int(i) for i in indices))))

    @classmethod
    def full(cls, parent):
        return cls(parent, tuple(range(len(parent))))

    def __len__(self):
        return len(self.indices)

    def __contains__(self, index):
        return index in self.indices

    def complement(self):
        return tuple(i for i in range(len(self.parent)) if i not in self.indices)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: Optional[str] = None
    witness: Tuple[int, ...] = ()
    message: str = 'ok'


def validate(space: MetricSpace) -> ValidationReport:
    """Check the metric axioms; the first violation found is reported"""
    n = len(space)
    d = space.dist
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] != d[j][i]:
                return ValidationReport(False, 'asymmetry', (i, j),
                                        f"Asymmetry at ({i},{j}): {d[i][j]} != {d[j][i]}")
    for i in range(n):
        if d[i][i] != 0:
            return ValidationReport(False, 'nonzero-diagonal', (i,),
                                    f"Nonzero diagonal at {i}: {d[i][i]}")
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] <= 0:
                return ValidationReport(False, 'nonpositive-distance', (i, j),
                                        f"Nonpositive distance at ({i},{j}): {d[i][j]}")
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if k in (i, j):
                    continue
                if d[i][j] > d[i][k] + d[k][j]:
                    return ValidationReport(
                        False, 'triangle', (i, j, k),
                        f"Triangle inequality fails: d({i},{j})={d[i][j]} > "
                        f"d({i},{k})+d({k},{j})={d[i][k] + d[k][j]}")
    return ValidationReport(True)


def line_space(points: Sequence, labels=None) -> MetricSpace:
    """Subset of the real line with |a - b| distances"""
    coords = [to_rational(p) for p in points]
    if labels is None:
        labels = [str(p) for p in points]
    rows = [[abs(a - b) for b in coords] for a in coords]
    return MetricSpace.from_rows(rows, labels)


def diameter(space: MetricSpace):
    n = len(space)
    return max((space.dist[i][j] for i in range(n) for j in range(n)), default=Fraction(0))


def distance_to_subset(space: MetricSpace, x: int, indices: Iterable[int]):
    return min(space.dist[x][p] for p in indices)


def induced_subspace(subset: PointSubset) -> MetricSpace:
    parent = subset.parent
    idx = subset.indices
    labels = tuple(parent.labels[i] for i in idx)
    dist = tuple(tuple(parent.dist[i][j] for j in idx) for i in idx)
    return MetricSpace(labels, dist)


def subset_within(inner: PointSubset, outer: PointSubset) -> PointSubset:
    """Re-index `inner` as a subset of induced_subspace(outer)"""
    if inner.parent != outer.parent:
        raise SubsetError("Subsets live in different spaces")
    position = {p: k for k, p in enumerate(outer.indices)}
    missing = [i for i in inner.indices if i not in position]
    if missing:
        raise SubsetError(f"Indices {missing} are not in the outer subset")
    return PointSubset(induced_subspace(outer), tuple(position[i] for i in inner.indices))


def truncate_metric(space: MetricSpace) -> MetricSpace:
    """d'(x, y) = min(d(x, y), 2)"""
    dist = tuple(tuple(min(v, TRUNCATION_LEVEL) for v in row) for row in space.dist)
    return MetricSpace(space.labels, dist)


def add_base_point(space: MetricSpace) -> MetricSpace:
    """Adjoin a point at distance 1 from every point; needs diameter <= 2"""
    diam = diameter(space)
    if diam > TRUNCATION_LEVEL:
        raise MetricError(
            f"Cannot add a base point to a space of diameter {diam} > 2 "
            f"(d+ would break the triangle inequality)")
    label = BASE_POINT_LABEL
    while label in space.labels:
        label += "'"
    one = Fraction(1)
    rows = [row + (one,) for row in space.dist]
    rows.append(tuple(one for _ in space.labels) + (Fraction(0),))
    logger.debug(f"Added base point {label!r} to a space of {len(space)} points")
    return MetricSpace(space.labels + (label,), tuple(rows))
