"""The sixth Painleve equation as a polynomial, and exact checks of algebraic solutions.

``P(t, y, y', y'', theta)`` is the right-hand side of PVI minus ``y''``,
multiplied through by ``t^2 (t-1)^2 y (y-1) (y-t)``.  It is written out in
expanded form so that it can be evaluated over any commutative ring: exact
rationals, complex floats, or :class:`~painleve6.exact.RationalFunctionQ`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any

from .exact import (
    DegenerateParameterisation,
    PolynomialQ,
    RationalFunctionQ,
    as_fraction,
    format_rational,
    rf_derivative_in_t,
)

HALF = Fraction(1, 2)


class RiccatiSolutionError(ArithmeticError):
    """x vanishes identically: the curve is a Riccati solution."""


@dataclass(frozen=True)
class ThetaVector:
    theta1: Any
    theta2: Any
    theta3: Any
    theta4: Any

    @classmethod
    def of(cls, values) -> ThetaVector:
        vals = tuple(values)
        if len(vals) != 4:
            raise ValueError("theta needs exactly four components")
        conv = []
        for v in vals:
            if isinstance(v, (complex, float)):
                conv.append(v)
            else:
                conv.append(as_fraction(v))
        return cls(*conv)

    def __iter__(self):
        return iter((self.theta1, self.theta2, self.theta3, self.theta4))

    def __getitem__(self, i):
        return tuple(self)[i]

    @property
    def delta(self):
        return (self.theta1 + self.theta2 + self.theta3 + self.theta4) * HALF

    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self)

    def to_json(self) -> list:
        if self.is_exact():
            return [format_rational(v) for v in self]
        return [[complex(v).real, complex(v).imag] for v in self]

    def __str__(self):
        if self.is_exact():
            return "(" + ", ".join(format_rational(v) for v in self) + ")"
        return "(" + ", ".join(str(v) for v in self) + ")"


@dataclass(frozen=True)
class NumericJet:
    """(t, y, y', y'') at one point of a solution."""

    t: Any
    y: Any
    yp: Any
    ypp: Any


def pvi_polynomial(jet: NumericJet, theta: ThetaVector):
    """Evaluate the PVI polynomial P at a jet.

    Works over any ring the inputs live in; exact inputs give exact output.
    """
    t, y, yp, ypp = jet.t, jet.y, jet.yp, jet.ypp
    th1, th2, th3, th4 = theta
    T = t * (t - 1)
    ym1, ymt = y - 1, y - t
    Y = y * ym1 * ymt
    q1 = ym1 * ymt + y * ymt + y * ym1
    T2 = T * T
    derivative_terms = (HALF * T2 * q1 * yp * yp
                        - (T * Y * (2 * t - 1) + T2 * y * ym1) * yp
                        - T2 * Y * ypp)
    a = ym1 * ymt
    b = y * ymt
    c = y * ym1
    potential = ((th4 - 1) * (th4 - 1) * Y * Y
                 - th1 * th1 * t * a * a
                 + th3 * th3 * (t - 1) * b * b
                 + (1 - th2 * th2) * T * c * c)
    return derivative_terms + HALF * potential


@dataclass(frozen=True)
class SolutionCurve:
    """An algebraic solution: y and t as rational functions of a curve parameter s."""

    y: RationalFunctionQ
    t: RationalFunctionQ
    theta: ThetaVector
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.t.derivative().is_zero():
            raise DegenerateParameterisation("t must be nonconstant in s")

    @cached_property
    def yprime(self) -> RationalFunctionQ:
        return rf_derivative_in_t(self.y, self.t)

    @cached_property
    def yprime2(self) -> RationalFunctionQ:
        return rf_derivative_in_t(self.yprime, self.t)

    def jet(self, s0) -> NumericJet:
        return NumericJet(self.t(s0), self.y(s0), self.yprime(s0), self.yprime2(s0))

    def with_theta(self, theta) -> SolutionCurve:
        return SolutionCurve(self.y, self.t, ThetaVector.of(theta), self.name)

    def to_json(self) -> dict:
        out = {"theta": self.theta.to_json(), "y": self.y.to_json(), "t": self.t.to_json()}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data: dict) -> SolutionCurve:
        try:
            theta = ThetaVector.of(as_fraction(v) for v in data["theta"])
            y = RationalFunctionQ.from_json(data["y"])
            t = RationalFunctionQ.from_json(data["t"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed solution curve: {exc}") from exc
        return cls(y, t, theta, data.get("name", ""))


# Largest exponents of t, y, y', y'' in any monomial of P.
P_EXPONENT_BOUNDS = (5, 6, 2, 1)


def _height(f: RationalFunctionQ) -> int:
    return max(f.num.degree, f.den.degree, 0)


def residual_degree_bound(curve: SolutionCurve) -> int:
    """Degree bound for P times the common denominator t_den^5 y_den^6 y'_den^2 y''_den."""
    parts = (curve.t, curve.y, curve.yprime, curve.yprime2)
    return sum(e * _height(f) for e, f in zip(P_EXPONENT_BOUNDS, parts))


def residual_vanishes(curve: SolutionCurve) -> bool:
    """Exact test of P == 0 by evaluation at more rational points than the degree bound.

    P * D is a polynomial in s of degree at most ``residual_degree_bound``,
    where D is the product of powers of the reduced denominators.  At points
    with D != 0, P(s) = 0 forces (P * D)(s) = 0, so enough exact zeros prove
    it vanishes identically.
    """
    parts = (curve.t, curve.y, curve.yprime, curve.yprime2)
    needed = residual_degree_bound(curve) + 1
    found = 0
    s = Fraction(0)
    while found < needed:
        s += 1
        if any(f.den(s) == 0 for f in parts):
            continue
        t, y, yp, ypp = (f.num(s) / f.den(s) for f in parts)
        if pvi_polynomial(NumericJet(t, y, yp, ypp), curve.theta) != 0:
            return False
        found += 1
    return True


def residual_exact(curve: SolutionCurve) -> RationalFunctionQ:
    """P(t, y, y', y'', theta) as an exact rational function of s.

    The zero case is settled by :func:`residual_vanishes`; only a nonzero
    residual is expanded symbolically.
    """
    if residual_vanishes(curve):
        return RationalFunctionQ.constant(0)
    jet = NumericJet(curve.t, curve.y, curve.yprime, curve.yprime2)
    return pvi_polynomial(jet, curve.theta)


def _x_formula(t, y, yp, theta):
    th1, th2, th3, _ = theta
    return HALF * (((t - 1) * yp - th1) / y
                   + (yp - 1 - th2) / (y - t)
                   - (t * yp + th3) / (y - 1))


def x_from_solution(obj, theta: ThetaVector | None = None):
    """The conjugate coordinate x determined by y and y'.

    ``obj`` is either a :class:`SolutionCurve` (exact result, a rational
    function of s) or a :class:`NumericJet` together with ``theta``.
    """
    if isinstance(obj, SolutionCurve):
        theta = obj.theta if theta is None else theta
        y = obj.y
        if y.is_zero() or (y - 1).is_zero() or (y - obj.t).is_zero():
            raise ZeroDivisionError("y coincides identically with a pole position")
        x = _x_formula(obj.t, y, obj.yprime, theta)
        if x.is_zero():
            raise RiccatiSolutionError("x vanishes identically (Riccati solution)")
        return x
    if theta is None:
        raise TypeError("theta is required for a numeric jet")
    return _x_formula(obj.t, obj.y, obj.yp, theta)


def p_from_x(x, y, t, theta: ThetaVector):
    """p = x + theta1/y + theta2/(y - t) + theta3/(y - 1)."""
    th1, th2, th3, _ = theta
    return x + th1 / y + th2 / (y - t) + th3 / (y - 1)


def yprime_from_x(x, y, t, theta: ThetaVector):
    """Invert the defining relation of x for y'.

    The coefficient of y' in 2x collapses to t(t-1)/(y(y-1)(y-t)).
    """
    th1, th2, th3, _ = theta
    rhs = 2 * x + th1 / y + (1 + th2) / (y - t) + th3 / (y - 1)
    return y * (y - 1) * (y - t) / (t * (t - 1)) * rhs


def _poly(*coeffs) -> PolynomialQ:
    return PolynomialQ(coeffs)


def klein_curve() -> SolutionCurve:
    """The seven-branch genus zero solution with theta = (2, 2, 2, 4)/7."""
    s = _poly(0, 1)
    q1 = _poly(5, -8, 5)          # 5s^2 - 8s + 5
    q2 = _poly(4, -7, 7)          # 7s^2 - 7s + 4
    q3 = _poly(7, -7, 4)          # 4s^2 - 7s + 7
    y_num = -(q1 * q2)
    y_den = s * _poly(-2, 1) * _poly(1, 1) * _poly(-1, 2) * q3
    t_num = q2 * q2
    t_den = s ** 3 * q3 * q3
    theta = ThetaVector.of([Fraction(2, 7)] * 3 + [Fraction(4, 7)])
    return SolutionCurve(RationalFunctionQ(y_num, y_den), RationalFunctionQ(t_num, t_den),
                         theta, name="klein")


def klein_one_minus_t() -> RationalFunctionQ:
    """The second closed form, (4s^2 - s + 4)^2 (s - 1)^3 / (s^3 (4s^2 - 7s + 7)^2)."""
    q4 = _poly(4, -1, 4)
    q3 = _poly(7, -7, 4)
    return RationalFunctionQ(q4 * q4 * _poly(-1, 1) ** 3, _poly(0, 1) ** 3 * q3 * q3)
