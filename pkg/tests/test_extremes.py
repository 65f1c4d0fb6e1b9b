from fractions import Fraction

import pytest

from lipnorm.errors import DimensionCapError, OutsideBallError
from lipnorm.extremes import (
    BallKind,
    ExtremeClass,
    ball_constraints,
    certify_extreme,
    classify_extreme,
    e_set_candidates,
    enumerate_extremes,
    in_ball,
    inductive_extremes,
    johnson_membership,
    two_point_extremes,
)
from lipnorm.lipfun import LipFunction, constant, norms
from lipnorm.metric import PointSubset, line_space
from lipnorm.polytope import rank


def values(functions):
    return {f.values for f in functions}


def test_singleton_ball_is_an_interval():
    for kind in BallKind:
        poly = ball_constraints(line_space(['0']), kind)
        assert poly.rows == [(1,), (-1,)]
        assert poly.rhs == [1, 1]


def test_two_point_fm_ball_rows(two_points):
    assert ball_constraints(two_points(1), BallKind.FM).n_rows == 6


def test_ball_membership_matches_norms(gap_space):
    samples = [
        ['1/2', '-1/4', '1/4', '-1/2'],
        ['1/2', '-1/4', '1/4', '-3/5'],
        [1, 1, 1, 1],
        ['3/4', '1/2', 0, '-3/4'],
        [0, 0, 0, 0],
    ]
    for kind in BallKind:
        poly = ball_constraints(gap_space, kind)
        for sample in samples:
            f = LipFunction.of(gap_space, sample)
            assert poly.contains(f.values) == in_ball(f, kind)


def test_two_point_bl_extreme_has_full_active_rank(two_points):
    space = two_points(2)
    poly = ball_constraints(space, BallKind.BL)
    f = LipFunction.of(space, ['1/2', '-1/2'])
    cert = certify_extreme(f, BallKind.BL)
    assert cert.extreme and cert.active_rank == 2
    assert rank([poly.rows[i] for i in range(poly.n_rows) if poly.slacks(f.values)[i] == 0]) == 2


def test_gap_function_is_extreme(gap_function):
    cert = certify_extreme(gap_function, BallKind.BL)
    assert cert.extreme
    assert cert.witness is None
    assert cert.verdict == 'extreme'


def test_johnson_function_is_not_extreme(johnson_function):
    cert = certify_extreme(johnson_function, BallKind.BL)
    assert not cert.extreme
    g = cert.witness
    assert not g.is_zero()
    assert in_ball(johnson_function + g, BallKind.BL)
    assert in_ball(johnson_function - g, BallKind.BL)


def test_certify_rejects_points_outside_the_ball(gap_space):
    with pytest.raises(OutsideBallError):
        certify_extreme(LipFunction.of(gap_space, [1, 0, 0, 0]), BallKind.BL)


def test_constants_are_trivial_extremes(gap_space):
    for c in (1, -1):
        assert classify_extreme(constant(gap_space, c), BallKind.BL) is ExtremeClass.TRIVIAL


def test_classify(two_points):
    assert classify_extreme(LipFunction.of(two_points(2), [1, -1]), BallKind.FM) is ExtremeClass.TRIVIAL
    assert classify_extreme(LipFunction.of(two_points(2), ['1/2', '-1/2']), BallKind.BL) \
        is ExtremeClass.NON_TRIVIAL
    assert classify_extreme(LipFunction.of(two_points(2), [0, 0]), BallKind.BL) is ExtremeClass.NOT_EXTREME
    assert classify_extreme(LipFunction.of(two_points(2), [2, 0]), BallKind.FM) is ExtremeClass.NOT_EXTREME


@pytest.mark.parametrize('d', ['1', '2', '5', '7/3'])
def test_two_point_bl_extremes(two_points, d):
    found = values(enumerate_extremes(two_points(Fraction(d)), BallKind.BL))
    a = Fraction(d) / (Fraction(d) + 2)
    assert found == {(1, 1), (-1, -1), (a, -a), (-a, a)}
    assert set(two_point_extremes(Fraction(d))) == {(a, -a), (-a, a)}


def test_two_point_fm_extremes(two_points):
    assert values(enumerate_extremes(two_points(1), BallKind.FM)) == {
        (1, 1), (-1, -1), (1, 0), (-1, 0), (0, 1), (0, -1)}
    assert values(enumerate_extremes(two_points(5), BallKind.FM)) == {
        (1, 1), (-1, -1), (1, -1), (-1, 1)}


def test_gap_space_extremes(gap_space, gap_function):
    extremes = enumerate_extremes(gap_space, BallKind.BL)
    found = values(extremes)
    assert gap_function.values in found
    assert all((-f).values in found for f in extremes)
    assert all(norms(f).bl_norm == 1 for f in extremes)


def test_enumeration_cap(gap_space):
    with pytest.raises(DimensionCapError):
        enumerate_extremes(gap_space, BallKind.BL, cap=3)


def test_johnson_membership(johnson_function, gap_space, two_points):
    assert johnson_membership(johnson_function, BallKind.BL).member
    assert johnson_membership(constant(gap_space, 1), BallKind.BL).member
    verdict = johnson_membership(LipFunction.of(two_points(2), ['1/4', '-1/4']), BallKind.BL)
    assert not verdict.member and verdict.clause == 'norm'


def test_johnson_clauses(two_points):
    one_sided = LipFunction.of(two_points(1), ['1/2', 0])
    assert johnson_membership(one_sided, BallKind.BL).clause == 'peaks'
    far = LipFunction.of(line_space(['0', '2', '10']), ['1/2', '-1/2', 0])
    verdict = johnson_membership(far, BallKind.BL)
    assert not verdict.member and verdict.clause == 'partner' and verdict.point == 2
    fm_low = LipFunction.of(two_points(2), ['1/2', '-1/2'])
    assert johnson_membership(fm_low, BallKind.FM).clause == 'sup'
    fm_member = LipFunction.of(line_space(['0', '1', '5']), [1, 0, -1])
    assert johnson_membership(fm_member, BallKind.FM).member
    fm_lonely = LipFunction.of(line_space(['0', '1', '5']), [1, '1/2', -1])
    verdict = johnson_membership(fm_lonely, BallKind.FM)
    assert not verdict.member and verdict.clause == 'partner' and verdict.point == 1


def test_inductive_two_point(two_points):
    assert values(inductive_extremes(two_points(2))) == {
        (Fraction(1, 2), Fraction(-1, 2)), (Fraction(-1, 2), Fraction(1, 2))}
    assert inductive_extremes(line_space(['0'])) == []


def test_inductive_set_misses_gap_function(gap_space, gap_function):
    reached = inductive_extremes(gap_space)
    assert gap_function.values not in values(reached)
    non_trivial = {f.values for f in enumerate_extremes(gap_space, BallKind.BL)
                   if classify_extreme(f, BallKind.BL) is ExtremeClass.NON_TRIVIAL}
    assert values(reached) < non_trivial


def test_inductive_elements_are_balanced(gap_space):
    for f in inductive_extremes(gap_space):
        assert certify_extreme(f, BallKind.BL).extreme
        top = norms(f).sup_norm
        assert min(f.values) == -max(f.values)
        d = gap_space.dist
        assert any(f.values[x] == top and f.values[y] == -top and 2 * top == d[x][y] * (1 - top)
                   for x in range(4) for y in range(4))


def test_e_set_two_points(two_points):
    space = two_points(2)
    found = values(e_set_candidates(space, PointSubset.full(space), BallKind.BL))
    half = Fraction(1, 2)
    assert found == {(half, -half), (-half, half), (1, 1), (-1, -1)}


def test_e_set_singleton_support():
    space = line_space(['0', '1', '3'])
    found = values(e_set_candidates(space, PointSubset.of(space, [0]), BallKind.BL))
    assert found == {(1, 1, 1), (-1, -1, -1)}


def test_e_set_fm_trivial_patterns(two_points):
    space = two_points(5)
    found = values(e_set_candidates(space, PointSubset.full(space), BallKind.FM))
    assert found == {(1, 1), (1, -1), (-1, 1), (-1, -1)}


def test_e_set_elements_are_johnson_members(gap_space):
    support = PointSubset.of(gap_space, [0, 1, 3])
    for kind in BallKind:
        for F in e_set_candidates(gap_space, support, kind):
            assert johnson_membership(F, kind).member
