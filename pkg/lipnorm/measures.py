"""Molecular measures and their Dudley (BL) and Fortet-Mourier (FM) norms."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import ConsistencyError, SpaceMismatchError, SubsetError
from .extension import ExtensionProblem, tietze_extend
from .extremes import (
    BallKind,
    ball_constraints,
    e_set_candidates,
    enumerate_extremes,
    fm_trivial_witness,
    in_ball,
    is_trivial_pattern,
)
from .lipfun import LipFunction, constant, restrict
from .metric import MetricSpace, PointSubset, induced_subspace, to_rational
from .polytope import lp_max

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


@dataclass(frozen=True)
class MolecularMeasure:
    """sum_j a_j delta_{s_j}; weights are (index, a_j) pairs, sorted, nonzero"""
    space: MetricSpace
    weights: Tuple[Tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        indices = [i for i, _ in self.weights]
        if indices != sorted(set(indices)):
            raise SubsetError(f"Measure indices must be sorted and distinct: {indices}")
        n = len(self.space)
        for i, a in self.weights:
            if not 0 <= i < n:
                raise SubsetError(f"Index {i} out of range for a space of {n} points")
            if a == 0:
                raise ValueError(f"Zero weight stored at index {i}")

    @classmethod
    def of(cls, space, weights):
        """Build from a mapping or (index, weight) pairs; repeated indices add up"""
        items = weights.items() if hasattr(weights, 'items') else weights
        total = {}
        for i, a in items:
            total[int(i)] = total.get(int(i), ZERO) + to_rational(a)
        return cls(space, tuple(sorted((i, a) for i, a in total.items() if a != 0)))

    @classmethod
    def dirac(cls, space, index, weight=1):
        return cls.of(space, {index: weight})

    def is_zero(self):
        return not self.weights

    def support(self) -> Optional[PointSubset]:
        if self.is_zero():
            return None
        return PointSubset(self.space, tuple(i for i, _ in self.weights))

    def coefficients(self) -> Tuple[Fraction, ...]:
        return tuple(a for _, a in self.weights)

    def dense(self) -> Tuple[Fraction, ...]:
        lookup = dict(self.weights)
        return tuple(lookup.get(i, ZERO) for i in range(len(self.space)))

    def total_variation(self):
        return sum((abs(a) for a in self.coefficients()), ZERO)

    def __add__(self, other):
        if self.space != other.space:
            raise SpaceMismatchError("Measures live on different spaces")
        return MolecularMeasure.of(self.space, list(self.weights) + list(other.weights))

    def __neg__(self):
        return MolecularMeasure(self.space, tuple((i, -a) for i, a in self.weights))

    def scale(self, factor):
        factor = to_rational(factor)
        return MolecularMeasure.of(self.space, [(i, factor * a) for i, a in self.weights])


@dataclass(frozen=True)
class NormResult:
    kind: BallKind
    value: Fraction
    witness: Optional[LipFunction]
    witness_extended: LipFunction


@dataclass(frozen=True)
class NormingCheck:
    lp_support: Fraction
    lp_ambient: Fraction
    e_set: Fraction
    extremes: Fraction

    @property
    def agrees(self):
        return self.lp_support == self.lp_ambient == self.e_set == self.extremes


def pair(mu: MolecularMeasure, f: LipFunction) -> Fraction:
    """<mu, f> = sum_j a_j f(s_j)"""
    if mu.space != f.space:
        raise SpaceMismatchError("Measure and function live on different spaces")
    return sum((a * f.values[i] for i, a in mu.weights), ZERO)


def _extend_witness(space, support, witness, kind):
    if not is_trivial_pattern(witness):
        return tietze_extend(ExtensionProblem(space, support, witness))
    if kind is BallKind.BL:
        return constant(space, witness.values[0])
    return fm_trivial_witness(space, support, witness)


def dual_norm(mu: MolecularMeasure, kind) -> NormResult:
    """||mu||*, maximized over the ball of the support subspace"""
    kind = BallKind.parse(kind)
    if mu.is_zero():
        return NormResult(kind, ZERO, None, constant(mu.space, 1))

    support = mu.support()
    sub = induced_subspace(support)
    result = lp_max(ball_constraints(sub, kind), mu.coefficients())
    witness = LipFunction(sub, result.optimizer)
    extended = _extend_witness(mu.space, support, witness, kind)

    if restrict(extended, support).values != witness.values:
        raise ConsistencyError("Extended witness does not restrict to the support witness")
    if not in_ball(extended, kind):
        raise ConsistencyError(f"Extended witness is outside the {kind.value} ball")
    if pair(mu, extended) != result.optimal_value:
        raise ConsistencyError("Extended witness does not attain the dual norm")
    logger.info(f"{kind.value} dual norm over a support of {len(support)} points: {result.optimal_value}")
    return NormResult(kind, result.optimal_value, witness, extended)


def ambient_dual_norm(mu: MolecularMeasure, kind) -> Fraction:
    """Same norm, maximized over the ball of the whole space"""
    if mu.is_zero():
        return ZERO
    return lp_max(ball_constraints(mu.space, BallKind.parse(kind)), mu.dense()).optimal_value


def norming_values(mu: MolecularMeasure, kind, cap=None) -> NormingCheck:
    kind = BallKind.parse(kind)
    if mu.is_zero():
        return NormingCheck(ZERO, ZERO, ZERO, ZERO)
    support = mu.support()
    coefficients = mu.coefficients()
    candidates = e_set_candidates(mu.space, support, kind, cap)
    extremes = enumerate_extremes(induced_subspace(support), kind, cap)
    check = NormingCheck(
        lp_support=dual_norm(mu, kind).value,
        lp_ambient=ambient_dual_norm(mu, kind),
        e_set=max(pair(mu, F) for F in candidates),
        extremes=max(sum((a * v for a, v in zip(coefficients, f.values)), ZERO) for f in extremes),
    )
    if not check.agrees:
        logger.warning(f"Norming values disagree: {check}")
    return check


def norming_crosscheck(mu: MolecularMeasure, kind, cap=None) -> bool:
    return norming_values(mu, kind, cap).agrees


def norm_equivalence_check(mu: MolecularMeasure) -> bool:
    """||mu||_BL* <= ||mu||_FM* <= 2 ||mu||_BL*"""
    bl = dual_norm(mu, BallKind.BL).value
    fm = dual_norm(mu, BallKind.FM).value
    return bl <= fm <= 2 * bl
