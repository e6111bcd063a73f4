from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from painleve6.exact import DegenerateParameterisation, RationalFunctionQ
from painleve6.pvi import (
    P_EXPONENT_BOUNDS,
    NumericJet,
    RiccatiSolutionError,
    SolutionCurve,
    ThetaVector,
    klein_curve,
    klein_one_minus_t,
    pvi_polynomial,
    residual_exact,
    residual_vanishes,
    x_from_solution,
    yprime_from_x,
)

from .strategies import rationals, thetas

F = Fraction
t_, y_, yp_, ypp_ = sp.symbols("t y yp ypp")
a_, b_, c_, d_ = sp.symbols("a b c d")


def sympy_p():
    """(right side - y'') * t^2 (t-1)^2 y (y-1) (y-t), from the equation written out."""
    rhs = (sp.Rational(1, 2) * (1 / y_ + 1 / (y_ - 1) + 1 / (y_ - t_)) * yp_ ** 2
           - (1 / t_ + 1 / (t_ - 1) + 1 / (y_ - t_)) * yp_
           + y_ * (y_ - 1) * (y_ - t_) / (t_ ** 2 * (t_ - 1) ** 2)
           * (sp.Rational(1, 2) * (d_ - 1) ** 2 - sp.Rational(1, 2) * a_ ** 2 * t_ / y_ ** 2
              + sp.Rational(1, 2) * c_ ** 2 * (t_ - 1) / (y_ - 1) ** 2
              + sp.Rational(1, 2) * (1 - b_ ** 2) * t_ * (t_ - 1) / (y_ - t_) ** 2))
    return sp.expand(sp.cancel((rhs - ypp_) * t_ ** 2 * (t_ - 1) ** 2 * y_ * (y_ - 1) * (y_ - t_)))


P_SYMPY = sympy_p()


def test_polynomial_at_reference_jet():
    jet = NumericJet(F(2), F(3), F(0), F(0))
    assert pvi_polynomial(jet, ThetaVector.of([0, 0, 0, 0])) == 54


def test_exponent_bounds_match_expanded_form():
    poly = sp.Poly(P_SYMPY, t_, y_, yp_, ypp_)
    degs = [max(m[i] for m in poly.monoms()) for i in range(4)]
    assert tuple(degs) == P_EXPONENT_BOUNDS


@given(rationals(nonzero=True), rationals(), rationals(), rationals(), thetas())
def test_polynomial_matches_equation(t, y, yp, ypp, th):
    if t == 1 or y in (0, 1, t):
        return
    val = pvi_polynomial(NumericJet(t, y, yp, ypp), ThetaVector.of(th))
    subs = {t_: t, y_: y, yp_: yp, ypp_: ypp, a_: th[0], b_: th[1], c_: th[2], d_: th[3]}
    ref = P_SYMPY.subs({k: sp.Rational(v.numerator, v.denominator) for k, v in subs.items()})
    assert sp.Rational(val.numerator, val.denominator) == ref


def test_polynomial_over_complex_numbers():
    th = ThetaVector.of([F(1, 3), F(1, 5), F(2, 7), F(3, 4)])
    jet = NumericJet(F(1, 3), F(5, 2), F(-1), F(2))
    exact = pvi_polynomial(jet, th)
    cplx = pvi_polynomial(NumericJet(1 / 3 + 0j, 2.5 + 0j, -1 + 0j, 2 + 0j), th)
    assert abs(cplx - float(exact)) < 1e-12


def test_klein_residual_is_zero(klein):
    assert residual_exact(klein).is_zero()


def test_klein_exact_values(klein):
    x = x_from_solution(klein)
    assert klein.y(F(3)) == F(-299, 330)
    assert x(F(3)) == F(4653550, 7710911)
    assert klein.y(F(5, 4)) == F(11, 9)
    assert x(F(5, 4)) == F(-2439, 1144)
    assert klein.t(F(2)) == F(1, 2)


def test_klein_second_form_of_one_minus_t(klein):
    assert klein_one_minus_t() == 1 - klein.t


def test_klein_derivative_against_sympy(klein):
    s = sp.symbols("s")
    y = -(5 * s ** 2 - 8 * s + 5) * (7 * s ** 2 - 7 * s + 4) / (
        s * (s - 2) * (s + 1) * (2 * s - 1) * (4 * s ** 2 - 7 * s + 7))
    t = (7 * s ** 2 - 7 * s + 4) ** 2 / (s ** 3 * (4 * s ** 2 - 7 * s + 7) ** 2)
    yp = sp.diff(y, s) / sp.diff(t, s)
    for s0 in (F(3), F(5, 4), F(-7, 3)):
        assert klein.yprime(s0) == sp.Rational(str(yp.subs(s, sp.Rational(s0.numerator, s0.denominator))))


def test_wrong_theta_gives_nonzero_residual(klein):
    bad = klein.with_theta([F(2, 7), F(2, 7), F(2, 7), F(5, 7)])
    assert not residual_vanishes(bad)
    assert not residual_exact(bad).is_zero()


def test_riccati_curve_has_no_x():
    s = RationalFunctionQ.variable()
    curve = SolutionCurve(s, s * s, ThetaVector.of([F(-1, 2), 0, 0, F(1, 2)]))
    assert residual_exact(curve).is_zero()
    with pytest.raises(RiccatiSolutionError):
        x_from_solution(curve)


def test_sqrt_family_solves_for_matching_theta():
    s = RationalFunctionQ.variable()
    good = SolutionCurve(s, s * s, ThetaVector.of([F(1, 2), F(1, 3), F(1, 3), F(1, 2)]))
    bad = good.with_theta([F(1, 2), F(1, 3), F(1, 4), F(1, 2)])
    assert residual_exact(good).is_zero()
    assert not residual_exact(bad).is_zero()


def test_constant_t_rejected():
    s = RationalFunctionQ.variable()
    with pytest.raises(DegenerateParameterisation):
        SolutionCurve(s, RationalFunctionQ.constant(2), ThetaVector.of([0, 0, 0, 0]))


def test_curve_json_round_trip(klein):
    again = SolutionCurve.from_json(klein.to_json())
    assert again == klein
    with pytest.raises(ValueError):
        SolutionCurve.from_json({"theta": ["1/2"], "y": {}, "t": {}})


@given(rationals(nonzero=True), rationals(nonzero=True), rationals(), thetas())
def test_yprime_inverts_x(t, y, yp, th):
    if t == 1 or y in (0, 1, t):
        return
    th = ThetaVector.of(th)
    x = x_from_solution(NumericJet(t, y, yp, 0), th)
    assert yprime_from_x(x, y, t, th) == yp


def test_numeric_jet_needs_theta():
    with pytest.raises(TypeError):
        x_from_solution(NumericJet(F(2), F(3), F(1), F(0)))
