"""JSON documents: metric spaces, functions, measures and extension problems.

Every rational is written as a "p/q" (or integer) string. A function or
measure document names its space either inline or as a path to a metric
document, resolved relative to the referring document.
"""
from __future__ import annotations

import json
import logging
import os
import re
from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import DocumentError
from .extension import ExtensionProblem, Variant
from .lipfun import LipFunction
from .measures import MolecularMeasure
from .metric import MetricSpace, PointSubset, induced_subspace, line_space, to_rational

logger = logging.getLogger(__name__)

RATIONAL_PATTERN = re.compile(r'^-?\d+(/\d+)?$')
# keys whose contents are never given decimal copies
SKIP_DECIMAL_KEYS = ('space', 'labels')


def parse_rational(value, field):
    try:
        return to_rational(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise DocumentError(f"Malformed rational {value!r} in {field}", field)


def rational_str(q) -> str:
    return str(Fraction(q))


def load_document(path):
    """Read a JSON document; OSError is left to the caller"""
    with open(path, 'r', encoding='utf-8') as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise DocumentError(f"{path} is not valid JSON: {e}")
    if not isinstance(doc, dict):
        raise DocumentError(f"{path} must contain a JSON object")
    logger.debug(f"Loaded {path}")
    return doc


def _require(doc, key, field=None):
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"Missing field {key!r}", field or key)
    return doc[key]


def _list(value, field):
    if not isinstance(value, list):
        raise DocumentError(f"{field} must be a list", field)
    return value


def metric_from_doc(doc, field='space', check=True) -> MetricSpace:
    """{"labels": [...], "dist": [[...]]} or {"points": [...]} on the real line"""
    if not isinstance(doc, dict):
        raise DocumentError("Metric document must be an object", field)
    labels = doc.get('labels')
    if labels is not None:
        labels = [str(label) for label in _list(labels, f"{field}.labels")]
    if 'points' in doc and 'dist' not in doc:
        points = [parse_rational(p, f"{field}.points[{i}]")
                  for i, p in enumerate(_list(doc['points'], f"{field}.points"))]
        if labels is None:
            labels = [str(p) for p in doc['points']]
        return line_space(points, labels)
    rows = _list(_require(doc, 'dist', f"{field}.dist"), f"{field}.dist")
    dist = []
    for i, row in enumerate(rows):
        row = _list(row, f"{field}.dist[{i}]")
        if len(row) != len(rows):
            raise DocumentError(f"Distance matrix must be square; row {i} has {len(row)} entries",
                                f"{field}.dist[{i}]")
        dist.append([parse_rational(v, f"{field}.dist[{i}][{j}]") for j, v in enumerate(row)])
    if labels is not None and len(labels) != len(dist):
        raise DocumentError(f"{len(labels)} labels for {len(dist)} points", f"{field}.labels")
    return MetricSpace.from_rows(dist, labels, check=check)


def resolve_space(value, base_dir='.', field='space', check=True) -> MetricSpace:
    if isinstance(value, str):
        return metric_from_doc(load_document(os.path.join(base_dir, value)), field, check)
    return metric_from_doc(value, field, check)


def _values(doc, key='values'):
    return [parse_rational(v, f"{key}[{i}]") for i, v in enumerate(_list(_require(doc, key), key))]


def function_from_doc(doc, base_dir='.') -> LipFunction:
    space = resolve_space(_require(doc, 'space'), base_dir)
    return LipFunction.of(space, _values(doc))


def measure_from_doc(doc, base_dir='.') -> MolecularMeasure:
    space = resolve_space(_require(doc, 'space'), base_dir)
    weights = _require(doc, 'weights')
    if not isinstance(weights, dict):
        raise DocumentError("weights must map point indices to rationals", 'weights')
    pairs = []
    for key, value in weights.items():
        try:
            index = int(key)
        except ValueError:
            raise DocumentError(f"Weight key {key!r} is not a point index", f"weights.{key}")
        pairs.append((index, parse_rational(value, f"weights.{key}")))
    return MolecularMeasure.of(space, pairs)


def extension_from_doc(doc, base_dir='.'):
    """-> (ExtensionProblem, Variant); the variant defaults to tietze"""
    space = resolve_space(_require(doc, 'space'), base_dir)
    indices = _list(_require(doc, 'subset'), 'subset')
    if not all(isinstance(i, int) and not isinstance(i, bool) for i in indices):
        raise DocumentError("subset must list point indices", 'subset')
    if sorted(indices) != indices:
        raise DocumentError("subset indices must be sorted", 'subset')
    if len(set(indices)) != len(indices):
        raise DocumentError("subset indices must be distinct", 'subset')
    subset = PointSubset(space, tuple(indices))
    boundary = LipFunction.of(induced_subspace(subset), _values(doc))
    try:
        variant = Variant.parse(doc.get('variant', Variant.TIETZE.value))
    except ValueError as e:
        raise DocumentError(str(e), 'variant')
    return ExtensionProblem(space, subset, boundary), variant


def metric_doc(space: MetricSpace):
    return {
        'labels': list(space.labels),
        'dist': [[rational_str(v) for v in row] for row in space.dist],
    }


def values_doc(values):
    return [rational_str(v) for v in values]


def function_doc(f: LipFunction):
    return {'space': metric_doc(f.space), 'values': values_doc(f.values)}


def measure_doc(mu: MolecularMeasure):
    return {
        'space': metric_doc(mu.space),
        'weights': {str(i): rational_str(a) for i, a in mu.weights},
    }


def decimal_str(q, digits) -> str:
    q = Fraction(q)
    with localcontext() as ctx:
        ctx.prec = max(50, digits + 30)
        return format(Decimal(q.numerator) / Decimal(q.denominator), f'.{digits}f')


def _is_rational_str(value):
    return isinstance(value, str) and RATIONAL_PATTERN.match(value) is not None


def add_decimals(payload, digits):
    """Copy every rational entry `k` to `k_decimal` with the given digits"""
    if digits is None or not isinstance(payload, dict):
        return payload
    out = {}
    for key, value in payload.items():
        if key in SKIP_DECIMAL_KEYS:
            out[key] = value
            continue
        if isinstance(value, dict):
            out[key] = add_decimals(value, digits)
        elif isinstance(value, list):
            out[key] = [add_decimals(v, digits) if isinstance(v, dict) else v for v in value]
        else:
            out[key] = value
        if _is_rational_str(value):
            out[f"{key}_decimal"] = decimal_str(Fraction(value), digits)
        elif isinstance(value, list) and value and all(_is_rational_str(v) for v in value):
            out[f"{key}_decimal"] = [decimal_str(Fraction(v), digits) for v in value]
    return out


def dump(payload) -> str:
    return json.dumps(payload, indent=2)
