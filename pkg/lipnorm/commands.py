"""Document-level operations shared by the CLI and the HTTP routes.

Each function takes a parsed JSON document (plus the directory it came from,
for relative space paths) and returns a JSON-ready payload.
"""
from __future__ import annotations

import logging
import os
import tempfile
from datetime import datetime

import pandas as pd

from .documents import (
    add_decimals,
    extension_from_doc,
    function_from_doc,
    measure_from_doc,
    metric_doc,
    resolve_space,
    values_doc,
)
from .extension import extend
from .extremes import (
    BallKind,
    certify_extreme,
    classify_extreme,
    enumerate_extremes,
    inductive_extremes,
    is_trivial_pattern,
    johnson_membership,
)
from .measures import dual_norm
from .metric import validate

logger = logging.getLogger(__name__)


def validate_document(doc, base_dir='.', decimal=None):
    """Metric document -> axiom report; does not raise on invalid metrics"""
    space = resolve_space(doc.get('space', doc), base_dir, check=False)
    report = validate(space)
    logger.info(f"Validated {len(space)} points: {report.message}")
    return add_decimals({
        'valid': report.ok,
        'size': len(space),
        'axiom': report.axiom,
        'witness': list(report.witness),
        'message': report.message,
    }, decimal)


def norm_document(doc, base_dir='.', kind='bl', decimal=None):
    mu = measure_from_doc(doc, base_dir)
    result = dual_norm(mu, kind)
    support = mu.support()
    return add_decimals({
        'kind': result.kind.value,
        'value': str(result.value),
        'support': list(support.indices) if support else [],
        'witness': values_doc(result.witness.values) if result.witness else None,
        'witness_extended': values_doc(result.witness_extended.values),
    }, decimal)


def extend_document(doc, base_dir='.', variant=None, decimal=None):
    prob, doc_variant = extension_from_doc(doc, base_dir)
    chosen = variant or doc_variant
    extended = extend(prob, chosen)
    logger.info(f"Extended from {len(prob.subset)} to {len(prob.ambient)} points")
    return add_decimals({
        'variant': getattr(chosen, 'value', chosen),
        'space': metric_doc(extended.space),
        'values': values_doc(extended.values),
    }, decimal)


def extreme_check_document(doc, base_dir='.', kind='bl', decimal=None):
    f = function_from_doc(doc, base_dir)
    kind = BallKind.parse(kind)
    cert = certify_extreme(f, kind)
    logger.info(f"{kind.value} extremality: {cert.verdict} (rank {cert.active_rank}/{len(f)})")
    return add_decimals({
        'kind': kind.value,
        'verdict': cert.verdict,
        'class': classify_extreme(f, kind).value,
        'active_rank': cert.active_rank,
        'dimension': len(f),
        'witness': values_doc(cert.witness.values) if cert.witness else None,
    }, decimal)


def enum_document(doc, base_dir='.', kind='bl', cap=None, decimal=None):
    """-> (payload, DataFrame of the vertex list)"""
    space = resolve_space(doc.get('space', doc), base_dir)
    kind = BallKind.parse(kind)
    extremes = enumerate_extremes(space, kind, cap)
    rows = []
    for f in extremes:
        label = 'trivial' if is_trivial_pattern(f) else 'non-trivial'
        rows.append({'values': values_doc(f.values), 'class': label})
    frame = pd.DataFrame([r['values'] for r in rows], columns=list(space.labels))
    frame['class'] = [r['class'] for r in rows]
    payload = {'kind': kind.value, 'size': len(space), 'count': len(rows), 'extremes': rows}
    return add_decimals(payload, decimal), frame


def johnson_document(doc, base_dir='.', kind='bl', decimal=None):
    f = function_from_doc(doc, base_dir)
    kind = BallKind.parse(kind)
    verdict = johnson_membership(f, kind)
    return add_decimals({
        'kind': kind.value,
        'member': verdict.member,
        'clause': verdict.clause,
        'point': verdict.point,
        'message': verdict.message,
    }, decimal)


def inductive_document(doc, base_dir='.', cap=None, decimal=None):
    space = resolve_space(doc.get('space', doc), base_dir)
    functions = inductive_extremes(space, cap)
    return add_decimals({
        'size': len(space),
        'count': len(functions),
        'functions': [{'values': values_doc(f.values)} for f in functions],
    }, decimal)


def save_to_csv(frame: pd.DataFrame, filename=None):
    if not filename:
        timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
        filename = os.path.join(tempfile.gettempdir(), f'extremes_{timestamp}.csv')
    frame.to_csv(filename, index=False)
    logger.info(f"Saved {len(frame)} extreme points to {filename}")
    return filename
