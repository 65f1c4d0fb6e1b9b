"""Bounded Lipschitz functions on a finite metric space."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, Tuple

from .errors import SpaceMismatchError, SubsetError
from .metric import MetricSpace, PointSubset, induced_subspace, to_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LipFunction:
    space: MetricSpace
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != len(self.space):
            raise SpaceMismatchError(
                f"Function has {len(self.values)} values for a space of {len(self.space)} points")

    @classmethod
    def of(cls, space, values: Iterable):
        return cls(space, tuple(to_rational(v) for v in values))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __neg__(self):
        return LipFunction(self.space, tuple(-v for v in self.values))

    def __add__(self, other):
        _same_space(self, other)
        return LipFunction(self.space, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        _same_space(self, other)
        return LipFunction(self.space, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, factor):
        factor = to_rational(factor)
        return LipFunction(self.space, tuple(factor * v for v in self.values))

    def is_zero(self):
        return all(v == 0 for v in self.values)


@dataclass(frozen=True)
class NormReport:
    sup_norm: Fraction
    lip_const: Fraction
    bl_norm: Fraction
    fm_norm: Fraction


def _same_space(f, g):
    if f.space != g.space:
        raise SpaceMismatchError("Functions live on different spaces")


def constant(space: MetricSpace, c) -> LipFunction:
    c = to_rational(c)
    return LipFunction(space, tuple(c for _ in range(len(space))))


def restrict(f: LipFunction, subset: PointSubset) -> LipFunction:
    """f|_P as a function on induced_subspace(P)"""
    if subset.parent != f.space:
        raise SubsetError("Subset does not belong to the function's space")
    return LipFunction(induced_subspace(subset), tuple(f.values[i] for i in subset.indices))


def sup_norm(f: LipFunction):
    return max((abs(v) for v in f.values), default=Fraction(0))


def lip_const(f: LipFunction):
    """Largest difference quotient; 0 on singletons"""
    n = len(f)
    d = f.space.dist
    best = Fraction(0)
    for i in range(n):
        for j in range(i + 1, n):
            q = abs(f.values[i] - f.values[j]) / d[i][j]
            if q > best:
                best = q
    return best


def norms(f: LipFunction) -> NormReport:
    sup = sup_norm(f)
    lip = lip_const(f)
    return NormReport(sup_norm=sup, lip_const=lip, bl_norm=sup + lip, fm_norm=max(sup, lip))


def lattice_max(f: LipFunction, g: LipFunction) -> LipFunction:
    _same_space(f, g)
    return LipFunction(f.space, tuple(max(a, b) for a, b in zip(f.values, g.values)))


def lattice_min(f: LipFunction, g: LipFunction) -> LipFunction:
    _same_space(f, g)
    return LipFunction(f.space, tuple(min(a, b) for a, b in zip(f.values, g.values)))


def diff_quotient(f: LipFunction, s: int, p: int):
    """(f(p) - f(s)) / d(s, p)"""
    if s == p:
        raise ValueError(f"Difference quotient needs two distinct points, got {s} twice")
    return (f.values[p] - f.values[s]) / f.space.dist[s][p]


def max_set(f: LipFunction) -> FrozenSet[int]:
    """M_f: points where |f| attains the sup norm"""
    top = sup_norm(f)
    return frozenset(i for i, v in enumerate(f.values) if abs(v) == top)


def neg_max_set(f: LipFunction) -> FrozenSet[int]:
    """Points where f = -||f||_inf"""
    top = sup_norm(f)
    return frozenset(i for i, v in enumerate(f.values) if v == -top)


def dominates(f: LipFunction, g: LipFunction):
    """True when f >= g pointwise"""
    _same_space(f, g)
    return all(a >= b for a, b in zip(f.values, g.values))
