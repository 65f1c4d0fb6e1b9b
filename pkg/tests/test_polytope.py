from fractions import Fraction

import pytest

from lipnorm.errors import DimensionCapError, PolytopeError
from lipnorm.polytope import (
    HPolytope,
    active_rows,
    enumerate_vertices,
    lp_max,
    null_space_vector,
    primitive,
    rank,
)


def cube(n, k=1):
    rows, rhs = [], []
    for j in range(n):
        for s in (1, -1):
            row = [0] * n
            row[j] = s
            rows.append(row)
            rhs.append(k)
    return HPolytope.from_rows(rows, rhs, n)


def test_active_rows():
    square = cube(2)
    assert active_rows(square, [0, 0]) == frozenset()
    assert active_rows(square, [1, 1]) == {0, 2}
    with pytest.raises(PolytopeError):
        active_rows(square, [2, 0])


@pytest.mark.parametrize('rows, expected', [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3),
    ([[1, 2], [1, 2]], 1),
    ([[1, 1], [1, -1], [2, 0]], 2),
    ([['1/2', '1/3'], [3, 2]], 1),
    ([], 0),
])
def test_rank(rows, expected):
    assert rank([[Fraction(v) for v in row] for row in rows]) == expected


def test_null_space_vector():
    v = null_space_vector([[1, 1, 0], [0, 1, 1]], 3)
    assert v is not None and any(v)
    assert v[0] + v[1] == 0 and v[1] + v[2] == 0
    assert null_space_vector([[1, 0], [0, 1]], 2) is None
    assert primitive([Fraction(1, 2), Fraction(-3, 4)]) == (2, -3)


def test_cube_vertices():
    vertices = enumerate_vertices(cube(2))
    assert set(vertices) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}


def test_two_point_fm_ball_has_six_vertices():
    rows = [[1, 0], [-1, 0], [0, 1], [0, -1], [1, -1], [-1, 1]]
    poly = HPolytope.from_rows(rows, [1] * 6, 2)
    assert set(enumerate_vertices(poly)) == {(1, 1), (-1, -1), (1, 0), (-1, 0), (0, 1), (0, -1)}


def test_vertices_of_cut_polytope():
    # triangle x >= 0, y >= 0, x + y <= 1
    poly = HPolytope.from_rows([[-1, 0], [0, -1], [1, 1]], [0, 0, 1], 2)
    assert enumerate_vertices(poly) == [(0, 0), (0, 1), (1, 0)]


def test_enumeration_respects_cap():
    with pytest.raises(DimensionCapError):
        enumerate_vertices(cube(3), cap=2)


def test_lp_max_on_cube():
    result = lp_max(cube(3), [1, 1, 1])
    assert result.optimal_value == 3
    assert result.optimizer == (1, 1, 1)
    assert lp_max(cube(3), [0, 0, 0]).optimal_value == 0


def test_lp_max_matches_vertices():
    poly = HPolytope.from_rows([[1, 2], [3, -1], [-1, 0], [0, -1]], ['4', '9/2', 0, 0], 2)
    c = [2, 1]
    best = max(2 * x + y for x, y in enumerate_vertices(poly))
    assert lp_max(poly, c).optimal_value == best


def test_lp_max_unbounded():
    poly = HPolytope.from_rows([[-1, 0], [0, -1]], [0, 0], 2)
    with pytest.raises(PolytopeError):
        lp_max(poly, [1, 1])


def test_lp_max_empty():
    poly = HPolytope.from_rows([[1], [-1]], [-1, -1], 1)
    with pytest.raises(PolytopeError):
        lp_max(poly, [1])


def test_lp_phase_one_finds_offset_polytope():
    # 2 <= x <= 3 has no feasible origin
    poly = HPolytope.from_rows([[1], [-1]], [3, -2], 1)
    assert lp_max(poly, [-1]).optimal_value == -2
    assert enumerate_vertices(poly) == [(2,), (3,)]


def test_enumeration_with_seed_box():
    rows = [[1, 0], [-1, 0], [0, 1], [0, -1], [1, -1], [-1, 1]]
    poly = HPolytope.from_rows(rows, [1] * 6, 2)
    box = ((-1, -1), (1, 1))
    assert enumerate_vertices(poly, box=box) == enumerate_vertices(poly)
    with pytest.raises(PolytopeError):
        enumerate_vertices(poly, box=((0, -1), (0, 1)))


def test_enumeration_rejects_unbounded_and_empty():
    quadrant = HPolytope.from_rows([[-1, 0], [0, -1]], [0, 0], 2)
    with pytest.raises(PolytopeError):
        enumerate_vertices(quadrant)
    strip = HPolytope.from_rows([[1, 0], [-1, 0]], [1, 1], 2)
    with pytest.raises(PolytopeError):
        enumerate_vertices(strip)
    empty = HPolytope.from_rows([[1], [-1]], [-1, -1], 1)
    with pytest.raises(PolytopeError):
        enumerate_vertices(empty)


def test_times_skips_zero_entries():
    poly = HPolytope.from_rows([[1, 0, 2], [0, 0, 0], ['1/2', -1, 0]], [1, 1, 1], 3)
    assert poly.times([2, 3, 0]).tolist() == [2, 0, -2]
    assert poly.slacks([2, 3, 0]) == [-1, 1, 3]


def test_degenerate_lp_terminates():
    # pyramid apex (0, 0, 1) is tight for four rows
    rows = [[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1], [0, 0, -1]]
    poly = HPolytope.from_rows(rows, [1, 1, 1, 1, 0], 3)
    result = lp_max(poly, [0, 0, 1])
    assert result.optimal_value == 1 and result.optimizer == (0, 0, 1)
    assert lp_max(poly, [1, 1, 0]).optimal_value == 2
