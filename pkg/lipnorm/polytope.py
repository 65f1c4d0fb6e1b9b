"""Exact rational H-polytopes: active rows, ranks, vertex enumeration and LP."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import FrozenSet, List, Optional, Sequence, Tuple

import cdd
import numpy as np

from .config import resolve_cap
from .errors import ConsistencyError, DimensionCapError, PolytopeError

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


def rational_matrix(rows, ncols=None):
    """Object-dtype numpy matrix of Fractions"""
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    out = np.empty((len(rows), ncols), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise PolytopeError(f"Row {i} has {len(row)} entries, expected {ncols}")
        for j, v in enumerate(row):
            out[i, j] = Fraction(v)
    return out


def rational_vector(values):
    values = list(values)
    out = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        out[i] = Fraction(v)
    return out


@dataclass(frozen=True, eq=False)
class HPolytope:
    """{x : A x <= b}"""
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        if self.A.ndim != 2 or self.b.ndim != 1 or self.A.shape[0] != self.b.shape[0]:
            raise PolytopeError(f"Inconsistent shapes A{self.A.shape} and b{self.b.shape}")
        self.A.setflags(write=False)
        self.b.setflags(write=False)

    @classmethod
    def from_rows(cls, rows, rhs, dim=None):
        rows = list(rows)
        if dim is None:
            dim = len(rows[0]) if rows else 0
        return cls(rational_matrix(rows, dim), rational_vector(rhs))

    @property
    def dim(self):
        return self.A.shape[1]

    @property
    def n_rows(self):
        return self.A.shape[0]

    @cached_property
    def rows(self) -> List[Tuple[Fraction, ...]]:
        return [tuple(row) for row in self.A.tolist()]

    @cached_property
    def rhs(self) -> List[Fraction]:
        return list(self.b.tolist())

    @cached_property
    def columns(self):
        """Per column, the row indices and values of its nonzero entries"""
        out = []
        for j in range(self.dim):
            column = self.A[:, j]
            nonzero = np.flatnonzero(column != 0)
            out.append((nonzero, column[nonzero]))
        return out

    def times(self, x):
        """A x, touching only the nonzero entries of A and x"""
        out = np.full(self.n_rows, ZERO, dtype=object)
        for (nonzero, values), xj in zip(self.columns, x):
            if xj:
                out[nonzero] += values * xj
        return out

    def slack_vector(self, x):
        return self.b - self.times(x)

    def slacks(self, x):
        return self.slack_vector(x).tolist()

    def contains(self, x):
        return all(s >= 0 for s in self.slacks(x))


@dataclass(frozen=True)
class LPResult:
    optimal_value: Fraction
    optimizer: Tuple[Fraction, ...]
    basis: FrozenSet[int]


def _integer_row(row):
    row = [Fraction(v) for v in row]
    scale = reduce(lambda acc, v: acc * v.denominator // gcd(acc, v.denominator), row, 1)
    return [int(v * scale) for v in row]


def primitive(vector):
    """Scale a nonzero rational vector to coprime integer entries"""
    ints = _integer_row(vector)
    common = reduce(gcd, (abs(v) for v in ints), 0)
    if common == 0:
        return tuple(Fraction(v) for v in ints)
    return tuple(Fraction(v // common) for v in ints)


def active_rows(poly: HPolytope, x) -> FrozenSet[int]:
    """Rows with A_i x = b_i; x must be feasible"""
    slacks = poly.slacks(x)
    violated = [i for i, s in enumerate(slacks) if s < 0]
    if violated:
        raise PolytopeError(f"Point violates rows {violated[:5]}")
    return frozenset(i for i, s in enumerate(slacks) if s == 0)


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination on integer rows"""
    m = [_integer_row(row) for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, len(m)):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == len(m):
            break
    return r


def null_space_vector(rows: Sequence[Sequence], n: int) -> Optional[Tuple[Fraction, ...]]:
    """A primitive nonzero x with rows . x = 0, or None when the rows have rank n"""
    m = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for c in range(n):
        if r == len(m):
            break
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    k = free[0]
    vector = [ZERO] * n
    vector[k] = ONE
    for row_index, c in enumerate(pivots):
        vector[c] = -m[row_index][k]
    return primitive(vector)


def independent_rows(rows: Sequence[Sequence], candidates, n: int) -> List[int]:
    """Greedy maximal linearly independent subset of the candidate rows"""
    echelon = []
    chosen = []
    for i in candidates:
        v = [Fraction(x) for x in rows[i]]
        for lead, prow in echelon:
            if v[lead] != 0:
                factor = v[lead]
                v = [a - factor * b for a, b in zip(v, prow)]
        lead = next((c for c in range(n) if v[c] != 0), None)
        if lead is None:
            continue
        inv = 1 / v[lead]
        echelon.append((lead, [a * inv for a in v]))
        chosen.append(int(i))
        if len(chosen) == n:
            break
    return chosen


def _inverse(matrix):
    """Gauss-Jordan inverse of a square rational matrix"""
    n = len(matrix)
    x = [[Fraction(v) for v in row] for row in matrix]
    y = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for i in range(n):
        pivot = next((j for j in range(i, n) if x[j][i] != 0), None)
        if pivot is None:
            raise ConsistencyError("Basis matrix is singular")
        x[i], x[pivot] = x[pivot], x[i]
        y[i], y[pivot] = y[pivot], y[i]
        inv = 1 / x[i][i]
        x[i] = [v * inv for v in x[i]]
        y[i] = [v * inv for v in y[i]]
        for j in range(n):
            if j != i and x[j][i] != 0:
                factor = x[j][i]
                x[j] = [a - factor * b for a, b in zip(x[j], x[i])]
                y[j] = [a - factor * b for a, b in zip(y[j], y[i])]
    return y


def _max_step(poly: HPolytope, slack, direction):
    rates = poly.times(direction)
    rising = np.flatnonzero(rates > 0)
    if len(rising) == 0:
        return None
    return min(slack[rising] / rates[rising])


def _walk_to_vertex(poly: HPolytope, x):
    """Move a feasible point along null-space directions until n independent rows are tight"""
    n = poly.dim
    x = rational_vector(x)
    while True:
        slack = poly.slack_vector(x)
        tight = np.flatnonzero(slack == 0)
        basis = independent_rows(poly.rows, tight, n)
        if len(basis) == n:
            return x, basis
        direction = rational_vector(null_space_vector([poly.rows[i] for i in basis], n))
        step = _max_step(poly, slack, direction)
        if step is None:
            direction = -direction
            step = _max_step(poly, slack, direction)
        if step is None:
            raise PolytopeError("Polyhedron contains a line; it is unbounded")
        x = x + step * direction


def _simplex(poly: HPolytope, c, x, basis) -> LPResult:
    """Vertex-to-vertex primal simplex with Bland's smallest-index rule.

    The slack vector and the inverse of the basis rows are updated in place
    at each pivot: slacks by the step along the edge, the inverse by a
    rank-one (eta) correction.
    """
    n = poly.dim
    c = rational_vector(c)
    x = rational_vector(x)
    basis = list(basis)
    slack = poly.slack_vector(x)
    inv = rational_matrix(_inverse([poly.rows[i] for i in basis]), n)
    pivots = 0
    while True:
        multipliers = c.dot(inv)
        negative = [k for k in range(n) if multipliers[k] < 0]
        if not negative:
            break
        k = min(negative, key=lambda q: basis[q])
        direction = -inv[:, k]
        rates = poly.times(direction)
        rising = rates > 0
        rising[basis] = False
        candidates = np.flatnonzero(rising)
        if len(candidates) == 0:
            raise PolytopeError("Objective is unbounded over the polytope")
        ratios = slack[candidates] / rates[candidates]
        t = min(ratios)
        entering = int(candidates[np.flatnonzero(ratios == t)[0]])

        x = x + t * direction
        moved = np.flatnonzero(rates != 0)
        slack[moved] -= t * rates[moved]
        w = poly.A[entering].dot(inv)
        pivot_column = inv[:, k] / w[k]
        inv = inv - np.outer(pivot_column, w)
        inv[:, k] = pivot_column
        basis[k] = entering
        pivots += 1
    logger.debug(f"Simplex finished after {pivots} pivots")
    return LPResult(Fraction(c.dot(x)), tuple(Fraction(v) for v in x), frozenset(basis))


def _feasible_point(poly: HPolytope):
    n = poly.dim
    rhs = poly.rhs
    if all(beta >= 0 for beta in rhs):
        return [ZERO] * n
    # phase one: minimize t subject to A x - t <= b, 0 <= t <= t0
    t0 = max(-beta for beta in rhs)
    rows = [list(a) + [-ONE] for a in poly.rows]
    rows.append([ZERO] * n + [-ONE])
    rows.append([ZERO] * n + [ONE])
    aux = HPolytope.from_rows(rows, list(rhs) + [ZERO, t0], n + 1)
    x, basis = _walk_to_vertex(aux, [ZERO] * n + [t0])
    result = _simplex(aux, [ZERO] * n + [-ONE], x, basis)
    if result.optimal_value < 0:
        raise PolytopeError("Polytope is empty")
    return list(result.optimizer[:n])


def lp_max(poly: HPolytope, c) -> LPResult:
    """Exact max of <c, x> over the polytope; the optimizer is a vertex"""
    c = [Fraction(v) for v in c]
    if len(c) != poly.dim:
        raise PolytopeError(f"Objective has {len(c)} entries for dimension {poly.dim}")
    x = _feasible_point(poly)
    x, basis = _walk_to_vertex(poly, x)
    return _simplex(poly, c, x, basis)


def _box_rows(box, n):
    lo, hi = [tuple(Fraction(v) for v in side) for side in box]
    if any(low >= high for low, high in zip(lo, hi)):
        raise PolytopeError("Polytope is not full-dimensional")
    rows = []
    for j in range(n):
        upper = [hi[j]] + [ZERO] * n
        upper[j + 1] = -ONE
        lower = [-lo[j]] + [ZERO] * n
        lower[j + 1] = ONE
        rows += [upper, lower]
    return rows


def enumerate_vertices(poly: HPolytope, box=None, cap=None) -> List[Tuple[Fraction, ...]]:
    """All vertices by exact double description (cddlib in rational arithmetic).

    `box` is an optional pair (lo, hi) of coordinate bounds that must contain
    the polytope; its faces seed the representation.
    """
    n = poly.dim
    cap = resolve_cap(cap)
    if n > cap:
        raise DimensionCapError(n, cap)
    # cdd rows are [b_i, -A_i], meaning b_i - A_i x >= 0
    rows = [[beta] + [-v for v in a] for a, beta in zip(poly.rows, poly.rhs)]
    if box is not None:
        rows = _box_rows(box, n) + rows
    matrix = cdd.Matrix(rows, number_type='fraction')
    matrix.rep_type = cdd.RepType.INEQUALITY
    generators = cdd.Polyhedron(matrix).get_generators()
    if generators.lin_set:
        raise PolytopeError("Polyhedron contains a line; it is unbounded")

    found = set()
    for i in range(generators.row_size):
        lead, *coords = (Fraction(v) for v in generators[i])
        if lead == 0:
            raise PolytopeError("Polyhedron has an unbounded direction")
        found.add(tuple(v / lead for v in coords))
    if not found:
        raise PolytopeError("Polytope is empty")

    vertices = sorted(found)
    for v in vertices:
        act = active_rows(poly, v)
        if rank([poly.rows[i] for i in act]) != n:
            raise ConsistencyError(f"Enumerated point {v} is not a vertex")
    logger.info(f"Enumerated {len(vertices)} vertices in dimension {n} from {poly.n_rows} rows")
    return vertices
