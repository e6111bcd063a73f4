"""Okamoto symmetries: the affine Weyl group actions on parameters and solutions.

R1..R4 are the sign changes of theta1, theta2, theta3 and theta4 - 1, R5 the
reflection in the hyperplane sum(theta) = 0.  Together they generate
W_a(D4-).  X1, X2, X3 are the extra permutation symmetries that extend this
to W_a(F4).  Words act left to right: ``["R1", "R5"]`` applies R1 first.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .pvi import SolutionCurve, ThetaVector, x_from_solution


class SymmetryGenerator(str, enum.Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    R5 = "R5"
    X1 = "X1"
    X2 = "X2"
    X3 = "X3"


WeylWord = tuple  # of SymmetryGenerator

D4_GENERATORS = (SymmetryGenerator.R1, SymmetryGenerator.R2, SymmetryGenerator.R3,
                 SymmetryGenerator.R4, SymmetryGenerator.R5)
PERMUTATION_GENERATORS = (SymmetryGenerator.X1, SymmetryGenerator.X2, SymmetryGenerator.X3)


def parse_word(word) -> tuple[SymmetryGenerator, ...]:
    """Accept a list of tags or a comma separated string such as ``"R1,R5,X2"``."""
    if isinstance(word, str):
        word = [w for w in word.replace(" ", "").split(",") if w]
    try:
        return tuple(w if isinstance(w, SymmetryGenerator) else SymmetryGenerator(str(w).upper())
                     for w in word)
    except ValueError as exc:
        raise ValueError(f"unknown generator in word {word!r}") from exc


def word_to_json(word: Iterable[SymmetryGenerator]) -> list[str]:
    return [SymmetryGenerator(g).value for g in word]


def apply_to_theta(gen, theta: ThetaVector) -> ThetaVector:
    gen = SymmetryGenerator(gen)
    t1, t2, t3, t4 = theta
    if gen is SymmetryGenerator.R1:
        return ThetaVector(-t1, t2, t3, t4)
    if gen is SymmetryGenerator.R2:
        return ThetaVector(t1, -t2, t3, t4)
    if gen is SymmetryGenerator.R3:
        return ThetaVector(t1, t2, -t3, t4)
    if gen is SymmetryGenerator.R4:
        return ThetaVector(t1, t2, t3, 2 - t4)
    if gen is SymmetryGenerator.R5:
        d = theta.delta
        return ThetaVector(t1 - d, t2 - d, t3 - d, t4 - d)
    if gen is SymmetryGenerator.X1:
        return ThetaVector(t3, t2, t1, t4)
    if gen is SymmetryGenerator.X2:
        return ThetaVector(t4 - 1, t2, t3, t1 + 1)
    if gen is SymmetryGenerator.X3:
        return ThetaVector(t2, t1, t3, t4)
    raise AssertionError(gen)


def apply_word_to_theta(word, theta: ThetaVector) -> ThetaVector:
    for g in parse_word(word):
        theta = apply_to_theta(g, theta)
    return theta


def apply_to_solution(gen, curve: SolutionCurve) -> SolutionCurve:
    """Transform (y, t, theta) of an exact algebraic solution.

    R5 needs x, so it raises :class:`~painleve6.pvi.RiccatiSolutionError`
    on Riccati curves.
    """
    gen = SymmetryGenerator(gen)
    theta = apply_to_theta(gen, curve.theta)
    y, t = curve.y, curve.t
    if gen in (SymmetryGenerator.R1, SymmetryGenerator.R2,
               SymmetryGenerator.R3, SymmetryGenerator.R4):
        new_y, new_t = y, t
    elif gen is SymmetryGenerator.R5:
        x = x_from_solution(curve)
        new_y, new_t = y + curve.theta.delta / x, t
    elif gen is SymmetryGenerator.X1:
        new_y, new_t = 1 - y, 1 - t
    elif gen is SymmetryGenerator.X3:
        new_y, new_t = (t - y) / (t - 1), t / (t - 1)
    else:
        if y.is_zero() or t.is_zero():
            raise ZeroDivisionError("X2 needs y and t not identically zero")
        new_y, new_t = 1 / y, 1 / t
    return SolutionCurve(new_y, new_t, theta, curve.name)


def apply_word_to_solution(word, curve: SolutionCurve) -> SolutionCurve:
    for g in parse_word(word):
        curve = apply_to_solution(g, curve)
    return curve


@dataclass(frozen=True)
class AlcoveRepresentative:
    theta: ThetaVector
    word: tuple


def in_closed_alcove(theta: ThetaVector) -> bool:
    t1, t2, t3, t4 = theta
    return t1 <= 0 and t2 <= 0 and t3 <= 0 and t4 <= 1 and (t1 + t2 + t3 + t4) >= 0


def _violated_wall(theta: ThetaVector):
    t1, t2, t3, t4 = theta
    if t1 > 0:
        return SymmetryGenerator.R1
    if t2 > 0:
        return SymmetryGenerator.R2
    if t3 > 0:
        return SymmetryGenerator.R3
    if t4 > 1:
        return SymmetryGenerator.R4
    if t1 + t2 + t3 + t4 < 0:
        return SymmetryGenerator.R5
    return None


def _real_rational(theta) -> ThetaVector:
    if not isinstance(theta, ThetaVector):
        theta = ThetaVector.of(theta)
    if not theta.is_exact():
        raise TypeError("alcove reduction needs exact rational theta")
    return theta


def reduce_to_alcove(theta) -> AlcoveRepresentative:
    """Move theta into the closed fundamental alcove of W_a(D4-).

    Each step reflects in a wall separating the point from the alcove, which
    strictly lowers the number of separating affine hyperplanes, so this
    terminates.
    """
    theta = _real_rational(theta)
    word = []
    while (gen := _violated_wall(theta)) is not None:
        theta = apply_to_theta(gen, theta)
        word.append(gen)
    return AlcoveRepresentative(theta, tuple(word))


def _key(theta: ThetaVector) -> tuple[Fraction, ...]:
    return tuple(theta)


def f4_alcove_points(theta) -> dict[tuple, tuple]:
    """All points of the W_a(F4)-orbit of theta lying in the closed D4- alcove.

    W_a(D4-) is normal in W_a(F4) with quotient S4, so the orbit meets the
    closed alcove in at most 24 points.  Returns {point: word reaching it}.
    """
    theta = _real_rational(theta)
    start = reduce_to_alcove(theta)
    seen = {_key(start.theta): start.word}
    queue = deque([(start.theta, start.word)])
    while queue:
        point, word = queue.popleft()
        for gen in PERMUTATION_GENERATORS:
            moved = apply_to_theta(gen, point)
            red = reduce_to_alcove(moved)
            k = _key(red.theta)
            if k not in seen:
                w = word + (gen,) + red.word
                seen[k] = w
                queue.append((red.theta, w))
    return seen


def f4_canonical_form(theta) -> tuple[ThetaVector, tuple]:
    """Lexicographically least alcove point of the W_a(F4)-orbit, with a word to it."""
    points = f4_alcove_points(theta)
    best = min(points)
    return ThetaVector(*best), points[best]


def inverse_word(word: Sequence) -> tuple:
    """Every generator acts as an involution on theta, so reversal inverts."""
    return tuple(reversed(parse_word(word)))


def f4_equivalent(theta_a, theta_b) -> tuple[bool, tuple | None]:
    """Decide W_a(F4)-equivalence; the witness word maps theta_a to theta_b."""
    ca, wa = f4_canonical_form(theta_a)
    cb, wb = f4_canonical_form(theta_b)
    if ca != cb:
        return False, None
    return True, tuple(wa) + inverse_word(wb)


# r4 := R5 (R1 R2 R3) R5 (R1 R2 R3) R5 negates theta4 alone.
R4_NEGATION_WORD = parse_word("R5,R1,R2,R3,R5,R1,R2,R3,R5")
