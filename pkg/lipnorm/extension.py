"""McShane-type extension operators from a subset P to the ambient space."""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, SpaceMismatchError, SubsetError
from .lipfun import LipFunction, lip_const, norms, restrict, sup_norm
from .metric import (
    MetricSpace,
    PointSubset,
    add_base_point,
    induced_subspace,
    subset_within,
    truncate_metric,
)

logger = logging.getLogger(__name__)


class Variant(enum.Enum):
    MCSHANE = 'mcshane'
    TIETZE = 'tietze'
    MIRRORED = 'mirrored'

    @classmethod
    def parse(cls, value):
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"Unknown extension variant: {value!r}")


@dataclass(frozen=True)
class ExtensionProblem:
    ambient: MetricSpace
    subset: PointSubset
    boundary_values: LipFunction

    def __post_init__(self):
        if self.subset.parent != self.ambient:
            raise SubsetError("Subset does not belong to the ambient space")
        if self.boundary_values.space != induced_subspace(self.subset):
            raise SpaceMismatchError("Boundary values must live on the induced subspace")

    @classmethod
    def of(cls, ambient, indices, values):
        subset = PointSubset.of(ambient, indices)
        return cls(ambient, subset, LipFunction.of(induced_subspace(subset), values))


def mcshane_extend(prob: ExtensionProblem) -> LipFunction:
    """E_P^{S,0}(f)(x) = max_p [f(p) - |f|_L d(p, x)]"""
    f = prob.boundary_values
    lip = lip_const(f)
    d = prob.ambient.dist
    pairs = list(zip(prob.subset.indices, f.values))
    values = tuple(max(fp - lip * d[p][x] for p, fp in pairs) for x in range(len(prob.ambient)))
    return LipFunction(prob.ambient, values)


def tietze_extend(prob: ExtensionProblem) -> LipFunction:
    """E_P^S(f) = max(E_P^{S,0}(f), -||f||_inf), postconditions checked"""
    f = prob.boundary_values
    floor = -sup_norm(f)
    base = mcshane_extend(prob)
    extended = LipFunction(prob.ambient, tuple(max(v, floor) for v in base.values))
    _check_tietze(prob, extended)
    return extended


def mirrored_extend(prob: ExtensionProblem) -> LipFunction:
    """-E_P^S(-f)"""
    flipped = ExtensionProblem(prob.ambient, prob.subset, -prob.boundary_values)
    return -tietze_extend(flipped)


def extend(prob: ExtensionProblem, variant=Variant.TIETZE) -> LipFunction:
    if not isinstance(variant, Variant):
        variant = Variant.parse(variant)
    logger.debug(f"Extending from {len(prob.subset)} to {len(prob.ambient)} points ({variant.value})")
    if variant is Variant.MCSHANE:
        return mcshane_extend(prob)
    if variant is Variant.MIRRORED:
        return mirrored_extend(prob)
    return tietze_extend(prob)


def _check_tietze(prob, extended):
    f = prob.boundary_values
    if restrict(extended, prob.subset).values != f.values:
        raise ConsistencyError("Tietze extension does not restrict to the boundary data")
    before, after = norms(f), norms(extended)
    if after.sup_norm != before.sup_norm:
        raise ConsistencyError(f"Tietze extension changed the sup norm: {before.sup_norm} -> {after.sup_norm}")
    if after.lip_const != before.lip_const:
        raise ConsistencyError(
            f"Tietze extension changed the Lipschitz constant: {before.lip_const} -> {after.lip_const}")


def h_function(space: MetricSpace, subset: PointSubset) -> LipFunction:
    """h_P(x) = max(-1, max_p [1 - d(x, p)])"""
    if subset.parent != space:
        raise SubsetError("Subset does not belong to the space")
    one = Fraction(1)
    d = space.dist
    values = tuple(max(-one, max(one - d[x][p] for p in subset.indices)) for x in range(len(space)))
    return LipFunction(space, values)


def compose_check(space: MetricSpace, outer: PointSubset, inner: PointSubset, f: LipFunction) -> bool:
    """E_{P'}^S o E_P^{P'} = E_P^S, truncated and untruncated, for this input"""
    if not set(inner.indices) <= set(outer.indices):
        raise SubsetError("Inner subset must be contained in the outer subset")
    middle = induced_subspace(outer)
    inner_in_middle = subset_within(inner, outer)
    for operator in (mcshane_extend, tietze_extend):
        step = operator(ExtensionProblem(middle, inner_in_middle, f))
        twice = operator(ExtensionProblem(space, outer, step))
        once = operator(ExtensionProblem(space, inner, f))
        if twice.values != once.values:
            logger.warning(f"Composition identity fails for {operator.__name__}")
            return False
    return True


def base_point_embedding(f: LipFunction) -> LipFunction:
    """f extended by 0 at the base point of S+ built from (S, min(d, 2))"""
    pointed = add_base_point(truncate_metric(f.space))
    return LipFunction(pointed, f.values + (Fraction(0),))
