"""Exact arithmetic over the rationals.

Univariate polynomials and rational functions with :class:`fractions.Fraction`
coefficients, plus the golden field Q(phi) used for the coordinates of the
binary icosahedral quaternions.  Everything here is immutable.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = [
    "Fraction",
    "GoldenRational",
    "PolynomialQ",
    "RationalFunctionQ",
    "PoleError",
    "DegenerateParameterisation",
    "as_fraction",
    "parse_rational",
    "format_rational",
    "rf_arith",
    "rf_derivative_in_t",
    "rf_evaluate",
]


class PoleError(ZeroDivisionError):
    """Evaluation hit a pole (or a division by the zero function)."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rational(value) -> str:
    q = as_fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _strip(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class PolynomialQ:
    """Dense univariate polynomial, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _strip(as_fraction(c) for c in coeffs)

    @classmethod
    def _raw(cls, coeffs) -> PolynomialQ:
        p = object.__new__(cls)
        p.coeffs = _strip(coeffs)
        return p

    @classmethod
    def constant(cls, c) -> PolynomialQ:
        return cls((c,))

    @classmethod
    def x(cls) -> PolynomialQ:
        return cls._raw((Fraction(0), Fraction(1)))

    @classmethod
    def from_roots(cls, roots) -> PolynomialQ:
        p = cls.constant(1)
        for r in roots:
            p = p * cls((-as_fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PolynomialQ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs == _strip((Fraction(other),))
        return NotImplemented

    def __hash__(self):
        return hash(("PolynomialQ", self.coeffs))

    def __repr__(self):
        return f"PolynomialQ([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("s" if k == 1 else f"s^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(format_rational(c) + ("*" + mono if mono else ""))
        return " + ".join(reversed(terms)).replace("+ -", "- ")

    def _coerce(self, other):
        if isinstance(other, PolynomialQ):
            return other
        if isinstance(other, (int, Rational)):
            return PolynomialQ._raw((Fraction(other),))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolynomialQ._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return PolynomialQ._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolynomialQ._raw(())
        if len(b) == 1:
            c = b[0]
            return PolynomialQ._raw(tuple(x * c for x in a))
        if len(a) == 1:
            c = a[0]
            return PolynomialQ._raw(tuple(x * c for x in b))
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return PolynomialQ._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = PolynomialQ._raw((Fraction(1),))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: PolynomialQ) -> tuple[PolynomialQ, PolynomialQ]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = 1 / other.coeffs[-1]
        if len(rem) - 1 < db:
            return PolynomialQ._raw(()), self
        quo = [Fraction(0)] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv_lead
            quo[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] -= c * bc[j]
        return PolynomialQ._raw(quo), PolynomialQ._raw(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: PolynomialQ) -> PolynomialQ:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> PolynomialQ:
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return PolynomialQ._raw(tuple(c / lead for c in self.coeffs))

    def derivative(self) -> PolynomialQ:
        return PolynomialQ._raw(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def __call__(self, s0):
        acc = 0 * s0 if not isinstance(s0, (int, Rational)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * s0 + c
        return acc

    def compose(self, other) -> RationalFunctionQ | PolynomialQ:
        """Substitute ``other`` (polynomial or rational function) for the variable."""
        acc = other * 0
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc


def poly_gcd(a: PolynomialQ, b: PolynomialQ) -> PolynomialQ:
    """Monic gcd by the Euclidean algorithm over Q."""
    while b.coeffs:
        a, b = b, a % b.monic()
    return a.monic()


class RationalFunctionQ:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _to_poly(num)
        den = PolynomialQ._raw((Fraction(1),)) if den is None else _to_poly(den)
        if den.is_zero():
            raise PoleError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, PolynomialQ._raw((Fraction(1),))
            return
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lead = den.leading()
        if lead != 1:
            num = num * (1 / lead)
            den = den * (1 / lead)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: PolynomialQ, den: PolynomialQ) -> RationalFunctionQ:
        f = object.__new__(cls)
        f.num, f.den = num, den
        return f

    @classmethod
    def variable(cls) -> RationalFunctionQ:
        return cls._raw(PolynomialQ.x(), PolynomialQ.constant(1))

    @classmethod
    def constant(cls, c) -> RationalFunctionQ:
        return cls._raw(PolynomialQ.constant(c), PolynomialQ.constant(1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RationalFunctionQ", self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return f"RationalFunctionQ({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    # Henrici-style operations keep intermediate gcds small.
    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return RationalFunctionQ._raw(PolynomialQ._raw(()), PolynomialQ.constant(1))
        if d.degree > 0 and a.degree > 0:
            g1 = poly_gcd(a, d)
            if g1.degree > 0:
                a, d = a.exact_div(g1), d.exact_div(g1)
        if b.degree > 0 and c.degree > 0:
            g2 = poly_gcd(c, b)
            if g2.degree > 0:
                c, b = c.exact_div(g2), b.exact_div(g2)
        num, den = a * c, b * d
        lead = den.leading()
        if lead != 1:
            num, den = num * (1 / lead), den * (1 / lead)
        return RationalFunctionQ._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunctionQ:
        if self.num.is_zero():
            raise PoleError("division by the zero rational function")
        lead = self.num.leading()
        return RationalFunctionQ._raw(self.den * (1 / lead), self.num * (1 / lead))

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __add__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.degree == 0 and d.degree == 0:
            return RationalFunctionQ._raw(a + c, b)
        g = poly_gcd(b, d) if (b.degree > 0 and d.degree > 0) else None
        if g is None or g.degree == 0:
            num = a * d + c * b
            den = b * d
            if num.is_zero():
                return RationalFunctionQ._raw(num, PolynomialQ.constant(1))
            return RationalFunctionQ._raw(num, den)
        b1, d1 = b.exact_div(g), d.exact_div(g)
        num = a * d1 + c * b1
        if num.is_zero():
            return RationalFunctionQ._raw(num, PolynomialQ.constant(1))
        g2 = poly_gcd(num, g)
        if g2.degree > 0:
            num = num.exact_div(g2)
            g = g.exact_div(g2)
        return RationalFunctionQ._raw(num, b1 * d1 * g)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionQ._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunctionQ._raw(self.num ** n, self.den ** n)

    def derivative(self) -> RationalFunctionQ:
        """d/ds."""
        n, d = self.num, self.den
        if d.degree == 0:
            return RationalFunctionQ._raw(n.derivative(), d)
        return RationalFunctionQ(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, s0):
        return rf_evaluate(self, s0)

    def compose(self, inner: RationalFunctionQ) -> RationalFunctionQ:
        return self.num.compose(inner) / self.den.compose(inner)

    def to_json(self) -> dict:
        return {"num": [format_rational(c) for c in self.num.coeffs],
                "den": [format_rational(c) for c in self.den.coeffs]}

    @classmethod
    def from_json(cls, data) -> RationalFunctionQ:
        if isinstance(data, (str, int)):
            return cls.constant(as_fraction(data))
        return cls(PolynomialQ(as_fraction(c) for c in data["num"]),
                   PolynomialQ(as_fraction(c) for c in data["den"]))


def _to_poly(p) -> PolynomialQ:
    if isinstance(p, PolynomialQ):
        return p
    if isinstance(p, (int, Rational, str)):
        return PolynomialQ.constant(as_fraction(p))
    return PolynomialQ(p)


def _coerce_rf(other):
    if isinstance(other, RationalFunctionQ):
        return other
    if isinstance(other, PolynomialQ):
        return RationalFunctionQ._raw(other, PolynomialQ.constant(1))
    if isinstance(other, (int, Rational)):
        return RationalFunctionQ._raw(PolynomialQ.constant(other), PolynomialQ.constant(1))
    return None


def rf_arith(f: RationalFunctionQ, g: RationalFunctionQ, op: str) -> RationalFunctionQ:
    """Apply one of ``+ - * /`` to two rational functions."""
    if op == "+":
        return f + g
    if op in ("-", "−"):
        return f - g
    if op in ("*", "×"):
        return f * g
    if op in ("/", "÷"):
        g = _coerce_rf(g)
        if g.is_zero():
            raise PoleError("division by the zero rational function")
        return f / g
    raise ValueError(f"unknown operation {op!r}")


class DegenerateParameterisation(ArithmeticError):
    """The time function t(s) has identically vanishing derivative."""


def rf_derivative_in_t(f: RationalFunctionQ, t: RationalFunctionQ) -> RationalFunctionQ:
    """df/dt computed as (df/ds)/(dt/ds)."""
    dt = t.derivative()
    if dt.is_zero():
        raise DegenerateParameterisation("t is constant along the curve")
    return f.derivative() / dt


def rf_evaluate(f: RationalFunctionQ, s0):
    """Exact at rational ``s0``, floating point at complex/float ``s0``."""
    if isinstance(s0, (int, Rational)):
        s0 = Fraction(s0)
        d = f.den(s0)
        if d == 0:
            raise PoleError(f"pole at s = {s0}")
        return f.num(s0) / d
    s0 = complex(s0)
    d = f.den(s0)
    if d == 0:
        raise PoleError(f"pole at s = {s0}")
    return f.num(s0) / d


class GoldenRational:
    """a + b*phi with phi^2 = phi + 1, a and b rational."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = as_fraction(a)
        self.b = as_fraction(b)

    @classmethod
    def phi(cls) -> GoldenRational:
        return cls(0, 1)

    def _coerce(self, other):
        if isinstance(other, GoldenRational):
            return other
        if isinstance(other, (int, Rational)):
            return GoldenRational(other, 0)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GoldenRational(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return GoldenRational(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GoldenRational(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        return GoldenRational(a * c + b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def conjugate(self) -> GoldenRational:
        """Galois conjugate, phi -> 1 - phi."""
        return GoldenRational(self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def inverse(self) -> GoldenRational:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(phi)")
        c = self.conjugate()
        return GoldenRational(c.a / n, c.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash(("GoldenRational", self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * (1 + 5 ** 0.5) / 2

    def __repr__(self):
        return f"GoldenRational({format_rational(self.a)}, {format_rational(self.b)})"

    def to_json(self) -> list[str]:
        return [format_rational(self.a), format_rational(self.b)]
