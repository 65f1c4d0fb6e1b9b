"""Built-in worked examples, checked in exact arithmetic."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List

from .config import resolve_cap
from .documents import values_doc
from .errors import LipnormError
from .extremes import (
    BallKind,
    certify_extreme,
    enumerate_extremes,
    in_ball,
    inductive_extremes,
    is_trivial_pattern,
    johnson_membership,
    two_point_extremes,
)
from .lipfun import LipFunction
from .metric import line_space

logger = logging.getLogger(__name__)

PASS = 'PASS'
FAIL = 'FAIL'
SKIPPED_CAP = 'SKIPPED-CAP'

# extreme, yet unreachable from two-point extremes
GAP_POINTS = ('0', '1.5', '2.5', '4')
GAP_VALUES = ('0.5', '-0.25', '0.25', '-0.5')
# in the finite Johnson set, not extreme
JOHNSON_POINTS = ('0', '1.5', '2', '4')
JOHNSON_VALUES = ('0.5', '-0.25', '0', '-0.5')
TWO_POINT_DISTANCES = ('1', '2', '5', '7/3')

NAMES = {
    'a': 'extreme point outside the inductive set',
    'b': 'Johnson member that is not extreme',
    'c': 'two-point closed form',
}


@dataclass(frozen=True)
class ReproductionItem:
    key: str
    name: str
    status: str
    detail: str
    data: Dict = field(default_factory=dict)

    def as_dict(self):
        return {'item': self.key, 'name': self.name, 'status': self.status,
                'detail': self.detail, 'data': self.data}


def _function(points, values):
    return LipFunction.of(line_space(points), values)


def check_inductive_gap(corrupt=False) -> ReproductionItem:
    name = NAMES['a']
    points, values = (JOHNSON_POINTS, JOHNSON_VALUES) if corrupt else (GAP_POINTS, GAP_VALUES)
    f = _function(points, values)
    cert = certify_extreme(f, BallKind.BL)
    reached = any(g.values == f.values for g in inductive_extremes(f.space))
    data = {'points': list(points), 'values': values_doc(f.values),
            'verdict': cert.verdict, 'in_inductive_set': reached}
    if cert.extreme and not reached:
        return ReproductionItem('a', name, PASS, 'certified extreme and not reached by induction', data)
    return ReproductionItem('a', name, FAIL, f"verdict {cert.verdict}, in inductive set: {reached}", data)


def check_johnson_not_extreme(corrupt=False) -> ReproductionItem:
    name = NAMES['b']
    points, values = (GAP_POINTS, GAP_VALUES) if corrupt else (JOHNSON_POINTS, JOHNSON_VALUES)
    f = _function(points, values)
    verdict = johnson_membership(f, BallKind.BL)
    cert = certify_extreme(f, BallKind.BL)
    data = {'points': list(points), 'values': values_doc(f.values),
            'member': verdict.member, 'verdict': cert.verdict,
            'witness': values_doc(cert.witness.values) if cert.witness else None}
    if not verdict.member:
        return ReproductionItem('b', name, FAIL, f"not a Johnson member ({verdict.clause})", data)
    if cert.extreme:
        return ReproductionItem('b', name, FAIL, 'certified extreme', data)
    g = cert.witness
    if g.is_zero() or not (in_ball(f + g, BallKind.BL) and in_ball(f - g, BallKind.BL)):
        return ReproductionItem('b', name, FAIL, 'witness does not certify non-extremality', data)
    return ReproductionItem('b', name, PASS, 'Johnson member, not extreme, witness verified', data)


def check_two_point_formula(corrupt=False) -> ReproductionItem:
    name = NAMES['c']
    data, bad = {}, []
    for d in TWO_POINT_DISTANCES:
        dist = Fraction(d)
        extremes = enumerate_extremes(line_space(['0', d]), BallKind.BL, cap=2)
        found = {f.values for f in extremes if not is_trivial_pattern(f)}
        expected = set(two_point_extremes(dist + 1 if corrupt else dist))
        trivial = {f.values for f in extremes if is_trivial_pattern(f)}
        data[d] = sorted(values_doc(v) for v in found)
        if found != expected or trivial != {(1, 1), (-1, -1)}:
            bad.append(d)
    if bad:
        return ReproductionItem('c', name, FAIL, f"mismatch at d in {bad}", data)
    return ReproductionItem('c', name, PASS, f"d in {list(TWO_POINT_DISTANCES)}", data)


ITEMS = (
    ('a', 4, check_inductive_gap),
    ('b', 4, check_johnson_not_extreme),
    ('c', 2, check_two_point_formula),
)


def run_reproduce(cap=None, corrupt=False) -> List[ReproductionItem]:
    cap = resolve_cap(cap)
    results = []
    for key, needed, check in ITEMS:
        if needed > cap:
            results.append(ReproductionItem(key, NAMES[key], SKIPPED_CAP,
                                             f"needs {needed} points, cap is {cap}"))
            continue
        try:
            item = check(corrupt)
        except LipnormError as e:
            logger.error(f"Item {key} raised {type(e).__name__}: {e}")
            item = ReproductionItem(key, NAMES[key], FAIL, f"{type(e).__name__}: {e}")
        logger.info(f"Item ({key}) {item.name}: {item.status}")
        results.append(item)
    return results


def report(items: List[ReproductionItem]):
    passed = sum(1 for item in items if item.status == PASS)
    return {
        'success': not any(item.status == FAIL for item in items),
        'passed': passed,
        'total': len(items),
        'items': [item.as_dict() for item in items],
    }
