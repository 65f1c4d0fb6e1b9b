"""Unit balls of BL(S) and their extreme points.

Extremality is decided on the H-representation of the ball: a point of the
ball is extreme exactly when its active rows have full rank. A non-extreme
point comes with an explicit perturbation g such that f + g and f - g both
stay in the ball.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from .config import resolve_cap
from .errors import ConsistencyError, DimensionCapError, OutsideBallError
from .extension import ExtensionProblem, h_function, mirrored_extend, tietze_extend
from .lipfun import LipFunction, constant, max_set, norms, restrict
from .metric import (
    MetricSpace,
    PointSubset,
    distance_to_subset,
    induced_subspace,
    subset_within,
)
from .polytope import (
    HPolytope,
    active_rows,
    enumerate_vertices,
    null_space_vector,
    rank,
    rational_vector,
)

logger = logging.getLogger(__name__)

ONE = Fraction(1)


class BallKind(enum.Enum):
    BL = 'BL'
    FM = 'FM'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"Unknown ball kind: {value!r} (expected bl or fm)")


class ExtremeClass(enum.Enum):
    TRIVIAL = 'trivial'
    NON_TRIVIAL = 'non-trivial'
    NOT_EXTREME = 'not-extreme'


@dataclass(frozen=True)
class ExtremalityCertificate:
    extreme: bool
    active_rank: int
    witness: Optional[LipFunction] = None

    @property
    def verdict(self):
        return 'extreme' if self.extreme else 'not-extreme'


@dataclass(frozen=True)
class JohnsonVerdict:
    member: bool
    clause: Optional[str] = None
    point: Optional[int] = None
    message: str = ''


def ball_norm(f: LipFunction, kind) -> Fraction:
    report = norms(f)
    return report.bl_norm if BallKind.parse(kind) is BallKind.BL else report.fm_norm


def in_ball(f: LipFunction, kind) -> bool:
    return ball_norm(f, kind) <= 1


def is_trivial_pattern(f: LipFunction) -> bool:
    return all(abs(v) == 1 for v in f.values)


@lru_cache(maxsize=256)
def ball_constraints(space: MetricSpace, kind) -> HPolytope:
    """H-representation of B_BL or B_FM over the space"""
    kind = BallKind.parse(kind)
    n = len(space)
    d = space.dist
    rows, rhs = [], []

    def unit(i, s):
        row = [Fraction(0)] * n
        row[i] = Fraction(s)
        return row

    if kind is BallKind.FM or n == 1:
        for i in range(n):
            for s in (1, -1):
                rows.append(unit(i, s))
                rhs.append(ONE)
    for j in range(n):
        for k in range(n):
            if j == k:
                continue
            if kind is BallKind.FM:
                row = [Fraction(0)] * n
                row[j] += 1
                row[k] -= 1
                rows.append(row)
                rhs.append(d[j][k])
                continue
            for i in range(n):
                for s in (1, -1):
                    row = unit(i, s)
                    row[j] += 1 / d[j][k]
                    row[k] -= 1 / d[j][k]
                    rows.append(row)
                    rhs.append(ONE)
    logger.debug(f"{kind.value} ball over {n} points: {len(rows)} rows")
    return HPolytope.from_rows(rows, rhs, n)


def unit_box(n):
    return (tuple(-ONE for _ in range(n)), tuple(ONE for _ in range(n)))


def certify_extreme(f: LipFunction, kind) -> ExtremalityCertificate:
    kind = BallKind.parse(kind)
    if not in_ball(f, kind):
        raise OutsideBallError(f"Function has {kind.value} norm {ball_norm(f, kind)} > 1")
    n = len(f)
    poly = ball_constraints(f.space, kind)
    active = sorted(active_rows(poly, f.values))
    active_matrix = [poly.rows[i] for i in active]
    active_rank = rank(active_matrix)
    if active_rank == n:
        return ExtremalityCertificate(True, active_rank)

    direction = null_space_vector(active_matrix, n)
    actions = poly.A.dot(rational_vector(direction)).tolist()
    slacks = poly.slacks(f.values)
    inactive = [i for i in range(poly.n_rows) if slacks[i] > 0]
    if not inactive:
        raise ConsistencyError("Non-extreme point of a bounded ball with no inactive rows")
    scale = min(slacks[i] for i in inactive) / max(abs(a) for a in actions) / 2
    witness = LipFunction(f.space, tuple(scale * v for v in direction))
    if not (in_ball(f + witness, kind) and in_ball(f - witness, kind)):
        raise ConsistencyError("Perturbation witness leaves the ball")
    logger.debug(f"Not extreme: active rank {active_rank} < {n}")
    return ExtremalityCertificate(False, active_rank, witness)


def classify_extreme(f: LipFunction, kind) -> ExtremeClass:
    if not in_ball(f, kind) or not certify_extreme(f, kind).extreme:
        return ExtremeClass.NOT_EXTREME
    return ExtremeClass.TRIVIAL if is_trivial_pattern(f) else ExtremeClass.NON_TRIVIAL


def _check_cap(size, cap):
    cap = resolve_cap(cap)
    if size > cap:
        raise DimensionCapError(size, cap)
    return cap


def enumerate_extremes(space: MetricSpace, kind, cap=None) -> List[LipFunction]:
    """ext(B) over the space, sorted, by vertex enumeration of the ball"""
    kind = BallKind.parse(kind)
    cap = _check_cap(len(space), cap)
    poly = ball_constraints(space, kind)
    vertices = enumerate_vertices(poly, box=unit_box(len(space)), cap=cap)
    return [LipFunction(space, v) for v in vertices]


def two_point_extremes(d) -> Tuple[Tuple[Fraction, Fraction], ...]:
    """Non-trivial BL extremes on two points at distance d"""
    a = Fraction(d) / (Fraction(d) + 2)
    return ((a, -a), (-a, a))


def johnson_membership(f: LipFunction, kind) -> JohnsonVerdict:
    """Finite Johnson-set test with P_f = S; partners must differ from the point"""
    kind = BallKind.parse(kind)
    n = len(f)
    d = f.space.dist
    report = norms(f)
    top = report.sup_norm
    peaks = max_set(f)

    if kind is BallKind.BL:
        if all(v == 1 for v in f.values) or all(v == -1 for v in f.values):
            return JohnsonVerdict(True, message='constant +-1 (member by definition)')
        if report.bl_norm != 1:
            return JohnsonVerdict(False, 'norm', message=f"BL norm is {report.bl_norm}, not 1")
        if {f.values[i] for i in peaks} != {top, -top}:
            return JohnsonVerdict(False, 'peaks', message=f"f does not attain both +{top} and -{top}")
        slope = 1 - top
    else:
        if report.fm_norm > 1:
            return JohnsonVerdict(False, 'ball', message=f"FM norm is {report.fm_norm} > 1")
        if top != 1:
            return JohnsonVerdict(False, 'sup', message=f"sup norm is {top}, not 1")
        slope = ONE

    for s in range(n):
        if s in peaks:
            continue
        if not any(p != s and abs(f.values[p] - f.values[s]) == slope * d[p][s] for p in range(n)):
            return JohnsonVerdict(False, 'partner', s, f"point {s} has no partner realizing slope {slope}")
    return JohnsonVerdict(True)


def inductive_extremes(space: MetricSpace, cap=None) -> List[LipFunction]:
    """Everything reachable from two-point BL extremes by E and its mirror, one point at a time"""
    n = len(space)
    _check_cap(n, cap)
    if n < 2:
        return []
    states = {}
    for x in range(n):
        for y in range(x + 1, n):
            states[frozenset((x, y))] = set(two_point_extremes(space.dist[x][y]))

    for size in range(2, n):
        for key in [k for k in states if len(k) == size]:
            inner = PointSubset(space, tuple(sorted(key)))
            inner_space = induced_subspace(inner)
            for z in inner.complement():
                outer = PointSubset.of(space, inner.indices + (z,))
                middle = induced_subspace(outer)
                relative = subset_within(inner, outer)
                target = states.setdefault(frozenset(outer.indices), set())
                for values in states[key]:
                    prob = ExtensionProblem(middle, relative, LipFunction(inner_space, values))
                    target.add(tietze_extend(prob).values)
                    target.add(mirrored_extend(prob).values)
        logger.debug(f"Inductive extremes: subsets of size {size + 1} reached")

    reached = sorted(states.get(frozenset(range(n)), ()))
    logger.info(f"Inductive construction produced {len(reached)} functions on {n} points")
    return [LipFunction(space, values) for values in reached]


def fm_trivial_witness(space: MetricSpace, support: PointSubset, fstar: LipFunction) -> LipFunction:
    """h_{P+} for a trivial FM extreme f* on the support, P+ = {f* = 1}"""
    positive = [p for p, v in zip(support.indices, fstar.values) if v == 1]
    if not positive:
        return constant(space, -1)
    for p, v in zip(support.indices, fstar.values):
        if v != 1 and distance_to_subset(space, p, positive) < 2:
            raise ConsistencyError(f"Point {p} lies within distance 2 of P+")
    h = h_function(space, PointSubset.of(space, positive))
    if restrict(h, support).values != fstar.values:
        raise ConsistencyError("h_{P+} does not restrict to the trivial extreme")
    return h


def e_set_candidates(space: MetricSpace, support: PointSubset, kind, cap=None) -> List[LipFunction]:
    """Norming candidates over S built from ext(B^P) for P = support"""
    kind = BallKind.parse(kind)
    cap = _check_cap(len(support), cap)
    sub = induced_subspace(support)
    found = {}
    for fstar in enumerate_extremes(sub, kind, cap):
        if not is_trivial_pattern(fstar):
            candidate = tietze_extend(ExtensionProblem(space, support, fstar))
        elif kind is BallKind.BL:
            candidate = constant(space, fstar.values[0])
        else:
            candidate = fm_trivial_witness(space, support, fstar)
        found[candidate.values] = candidate
    for c in (1, -1):
        found.setdefault(constant(space, c).values, constant(space, c))
    for candidate in found.values():
        if not in_ball(candidate, kind):
            raise ConsistencyError(f"Candidate {candidate.values} is outside the {kind.value} ball")
    logger.info(f"{len(found)} {kind.value} norming candidates from a support of {len(support)} points")
    return list(found.values())
