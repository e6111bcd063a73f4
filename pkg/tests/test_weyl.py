from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from painleve6.pvi import ThetaVector, residual_exact, x_from_solution
from painleve6.weyl import (
    D4_GENERATORS,
    R4_NEGATION_WORD,
    SymmetryGenerator,
    apply_to_solution,
    apply_to_theta,
    apply_word_to_theta,
    f4_alcove_points,
    f4_canonical_form,
    f4_equivalent,
    in_closed_alcove,
    parse_word,
    reduce_to_alcove,
)

from .strategies import thetas

F = Fraction
ALL = list(SymmetryGenerator)
d4_words = st.lists(st.sampled_from(D4_GENERATORS), max_size=8)
f4_words = st.lists(st.sampled_from(ALL), max_size=8)
KLEIN_THETA = ThetaVector.of([F(2, 7), F(2, 7), F(2, 7), F(4, 7)])


def test_parse_word():
    assert parse_word("R1, r5,X2") == (SymmetryGenerator.R1, SymmetryGenerator.R5, SymmetryGenerator.X2)
    assert parse_word(parse_word("R5")) == (SymmetryGenerator.R5,)
    with pytest.raises(ValueError):
        parse_word("R6")


def test_r5_on_klein_theta():
    assert apply_to_theta("R5", KLEIN_THETA) == ThetaVector.of([F(-3, 7)] * 3 + [F(-1, 7)])


@given(thetas(), st.sampled_from(ALL))
def test_generators_are_involutions(th, gen):
    th = ThetaVector.of(th)
    assert apply_to_theta(gen, apply_to_theta(gen, th)) == th


@given(thetas())
def test_r4_word_negates_theta4_only(th):
    th = ThetaVector.of(th)
    out = apply_word_to_theta(R4_NEGATION_WORD, th)
    assert out == ThetaVector(th[0], th[1], th[2], -th[3])


def test_klein_reduction():
    rep = reduce_to_alcove(KLEIN_THETA)
    assert rep.theta == ThetaVector.of([F(-1, 7)] * 3 + [F(5, 7)])
    assert rep.word == parse_word("R1,R2,R3,R5")
    assert apply_word_to_theta(rep.word, KLEIN_THETA) == rep.theta


@given(thetas())
def test_reduction_lands_in_alcove_and_is_idempotent(th):
    rep = reduce_to_alcove(th)
    assert in_closed_alcove(rep.theta)
    assert reduce_to_alcove(rep.theta).theta == rep.theta
    assert reduce_to_alcove(rep.theta).word == ()
    assert apply_word_to_theta(rep.word, ThetaVector.of(th)) == rep.theta


@given(thetas(), d4_words)
def test_reduction_is_constant_on_orbits(th, word):
    moved = apply_word_to_theta(word, ThetaVector.of(th))
    assert reduce_to_alcove(moved).theta == reduce_to_alcove(th).theta


@given(thetas(), f4_words)
def test_f4_equivalence_witness(th, word):
    a = ThetaVector.of(th)
    b = apply_word_to_theta(word, a)
    ok, witness = f4_equivalent(a, b)
    assert ok
    assert apply_word_to_theta(witness, a) == b
    assert len(f4_alcove_points(a)) <= 24


def test_f4_inequivalent_pair():
    ok, witness = f4_equivalent(KLEIN_THETA, ThetaVector.of([F(1, 3), 0, 0, F(1, 2)]))
    assert not ok and witness is None


def test_f4_canonical_form_is_orbit_invariant():
    canon, _ = f4_canonical_form(KLEIN_THETA)
    moved = apply_word_to_theta("X2,R3,X1,R5", KLEIN_THETA)
    assert f4_canonical_form(moved)[0] == canon


def test_numeric_theta_is_rejected():
    with pytest.raises(TypeError):
        reduce_to_alcove(ThetaVector(0.1, 0.2, 0.3, 0.4))


@pytest.mark.parametrize("gen", ["R1", "R4", "R5", "X1", "X2", "X3"])
def test_symmetries_map_klein_to_solutions(klein, gen):
    out = apply_to_solution(gen, klein)
    assert out.theta == apply_to_theta(gen, klein.theta)
    assert residual_exact(out).is_zero()


def test_r5_shifts_y_by_delta_over_x(klein):
    out = apply_to_solution("R5", klein)
    x = x_from_solution(klein)
    assert out.y == klein.y + klein.theta.delta / x
    assert out.t == klein.t
