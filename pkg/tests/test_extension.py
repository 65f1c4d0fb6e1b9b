from fractions import Fraction

import pytest

from lipnorm.errors import SpaceMismatchError, SubsetError
from lipnorm.extension import (
    ExtensionProblem,
    Variant,
    base_point_embedding,
    compose_check,
    extend,
    h_function,
    mcshane_extend,
    mirrored_extend,
    tietze_extend,
)
from lipnorm.lipfun import LipFunction, lip_const, norms, restrict
from lipnorm.metric import PointSubset, line_space


@pytest.fixture
def line013():
    return line_space(['0', '1', '3'])


def test_mcshane_two_point_boundary(line013):
    prob = ExtensionProblem.of(line013, [0, 2], [0, 3])
    assert mcshane_extend(prob).values == (0, 1, 3)


def test_mcshane_keeps_boundary_and_lipschitz_constant(gap_space):
    prob = ExtensionProblem.of(gap_space, [0, 3], ['1/2', '-1/2'])
    F = mcshane_extend(prob)
    assert F.values == (Fraction(1, 2), Fraction(1, 8), Fraction(-1, 8), Fraction(-1, 2))
    assert restrict(F, prob.subset).values == prob.boundary_values.values
    assert lip_const(F) == lip_const(prob.boundary_values) == Fraction(1, 4)


def test_singleton_extends_to_constant(line013):
    prob = ExtensionProblem.of(line013, [0], [1])
    assert mcshane_extend(prob).values == (1, 1, 1)
    assert tietze_extend(prob).values == (1, 1, 1)
    assert mirrored_extend(prob).values == (1, 1, 1)


def test_constant_is_preserved(gap_space):
    prob = ExtensionProblem.of(gap_space, [1, 3], ['-2/3', '-2/3'])
    assert mcshane_extend(prob).values == (Fraction(-2, 3),) * 4
    assert tietze_extend(prob).values == (Fraction(-2, 3),) * 4


def test_tietze_clips_at_negative_sup():
    space = line_space(['0', '1', '5'])
    prob = ExtensionProblem.of(space, [0, 1], [1, 0])
    assert mcshane_extend(prob).values == (1, 0, -4)
    assert tietze_extend(prob).values == (1, 0, -1)


def test_tietze_at_metric_midpoint():
    space = line_space(['0', '1', '2'])
    prob = ExtensionProblem.of(space, [0, 2], ['1/2', '-1/2'])
    assert tietze_extend(prob).values == (Fraction(1, 2), 0, Fraction(-1, 2))


def test_full_subset_is_identity(gap_function, gap_space):
    prob = ExtensionProblem(gap_space, PointSubset.full(gap_space), gap_function)
    assert tietze_extend(prob) == gap_function


def test_tietze_preserves_norms(gap_space):
    prob = ExtensionProblem.of(gap_space, [0, 2], ['3/4', '-1/4'])
    extended = tietze_extend(prob)
    before, after = norms(prob.boundary_values), norms(extended)
    assert (after.sup_norm, after.lip_const) == (before.sup_norm, before.lip_const)


def test_mirrored_is_negated_tietze_of_negation(gap_space):
    prob = ExtensionProblem.of(gap_space, [1, 3], ['1/3', '-1/2'])
    flipped = ExtensionProblem(gap_space, prob.subset, -prob.boundary_values)
    assert mirrored_extend(prob) == -tietze_extend(flipped)


def test_extend_dispatch(line013):
    prob = ExtensionProblem.of(line013, [0, 2], [0, 3])
    assert extend(prob, 'mcshane') == mcshane_extend(prob)
    assert extend(prob, Variant.MIRRORED) == mirrored_extend(prob)
    assert extend(prob) == tietze_extend(prob)
    with pytest.raises(ValueError):
        extend(prob, 'whitney')


def test_problem_checks_boundary_space(line013, gap_space):
    subset = PointSubset.of(line013, [0, 1])
    with pytest.raises(SpaceMismatchError):
        ExtensionProblem(line013, subset, LipFunction.of(line_space(['0', '2']), [0, 0]))
    with pytest.raises(SubsetError):
        ExtensionProblem(gap_space, subset, LipFunction.of(line_space(['0', '1']), [0, 0]))


def test_h_function(line013):
    assert h_function(line013, PointSubset.of(line013, [0])).values == (1, 0, -1)
    assert h_function(line013, PointSubset.full(line013)).values == (1, 1, 1)
    far = line_space(['0', '2', '5'])
    assert h_function(far, PointSubset.of(far, [0])).values == (1, -1, -1)


def test_compose_check(gap_space):
    outer = PointSubset.of(gap_space, [0, 1, 3])
    inner = PointSubset.of(gap_space, [0, 3])
    f = LipFunction.of(line_space(['0', '4']), ['1/2', '-1/2'])
    assert compose_check(gap_space, outer, inner, f)
    assert compose_check(gap_space, inner, inner, f)
    assert compose_check(gap_space, PointSubset.full(gap_space), inner, f)
    with pytest.raises(SubsetError):
        compose_check(gap_space, inner, outer, f)


def test_base_point_embedding_matches_fm_norm():
    space = line_space(['0', '1', '4'])
    f = LipFunction.of(space, ['1/2', '-1/4', '3/4'])
    embedded = base_point_embedding(f)
    assert embedded.values[-1] == 0
    assert embedded.space.labels[-1] == 'e'
    assert lip_const(embedded) == norms(f).fm_norm
