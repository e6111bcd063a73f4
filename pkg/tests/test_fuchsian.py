from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from painleve6 import _linalg as la
from painleve6.exact import RationalFunctionQ
from painleve6.fuchsian import (
    DegenerateSystemError,
    FuchsianSystem3,
    SpectralData3,
    build_2x2,
    build_full,
    build_simple,
    extract_y,
    extract_y_2x2,
    klein_family,
    klein_spectral,
    permute_mu,
    recover_x,
    recover_x_companion,
    system_from_json,
    theta_from_spectral,
    twist,
)
from painleve6.pvi import ThetaVector, x_from_solution

from .strategies import rationals

F = Fraction


@st.composite
def spectral_points(draw):
    lam = [draw(rationals(20, 9)) for _ in range(3)]
    m1, m2 = draw(rationals(20, 9)), draw(rationals(20, 9))
    mu = (m1, m2, sum(lam) - m1 - m2)
    x = draw(rationals(20, 9, nonzero=True))
    y = draw(rationals(20, 9, nonzero=True))
    t = draw(rationals(20, 9, nonzero=True))
    # generic data: no vanishing residue, no degenerate eigenvalue of the sum
    assume(t != 1 and y not in (1, t) and len(set(mu)) == 3)
    assume(all(v != 0 for v in lam + list(mu)))
    return x, y, t, SpectralData3(tuple(lam), mu)


def _safe(builder, *args):
    try:
        return builder(*args)
    except DegenerateSystemError:
        assume(False)


def test_spectral_map_klein():
    assert theta_from_spectral(klein_spectral()) == ThetaVector.of([F(2, 7)] * 3 + [F(4, 7)])


def test_spectral_data_needs_balanced_traces():
    with pytest.raises(ValueError):
        SpectralData3.of([1, 0, 0], [0, 0, 0])


def test_klein_family_at_two():
    sysk = klein_family(F(2))
    assert sysk.t == F(1, 2)
    assert sysk.residues[0][0, 1] == F(1, 7)
    assert sysk.residues[0][0, 2] == F(2, 7)
    chk = sysk.check()
    assert chk["rank_one"] and chk["traces"] and chk["sum_eigenvalues"]


@pytest.mark.parametrize("s0", [F(3), F(5, 4), F(-2, 3), F(9, 7)])
def test_klein_family_recovers_klein_curve(klein, s0):
    sysk = klein_family(s0)
    x = x_from_solution(klein)
    y = extract_y(sysk, 2, 3)
    assert y == klein.y(s0)
    assert recover_x(sysk, y) == x(s0)


@pytest.mark.parametrize("s0", [F(3), F(5, 4)])
def test_builders_reproduce_klein_family(klein, s0):
    x = x_from_solution(klein)(s0)
    y, t = klein.y(s0), klein.t(s0)
    ref = klein_family(s0).invariants()
    for builder in (build_simple, build_full):
        built = builder(x, y, t, klein_spectral())
        assert built.invariants() == ref
        assert extract_y(built, 2, 3) == y


def test_klein_family_symbolic():
    fam = klein_family(RationalFunctionQ.variable())
    assert fam.evaluate(F(3)).invariants() == klein_family(F(3)).invariants()
    assert fam.t(F(2)) == F(1, 2)


def test_klein_family_excluded_points():
    with pytest.raises(DegenerateSystemError):
        klein_family(F(0))
    with pytest.raises(DegenerateSystemError):
        klein_family(F(1))


@given(spectral_points())
def test_builders_share_pair_traces(pt):
    x, y, t, spec = pt
    a = _safe(build_simple, x, y, t, spec).invariants()
    b = _safe(build_full, x, y, t, spec).invariants()
    for key in ("tr12", "tr13", "tr23", "tr123"):
        assert a[key] == b[key]


@given(spectral_points())
def test_full_builder_invariants(pt):
    x, y, t, spec = pt
    b = _safe(build_full, x, y, t, spec)
    chk = b.check()
    assert all(chk.values())
    assert extract_y(b, 2, 3) == y
    assert recover_x(b, y) == x


@given(spectral_points())
def test_simple_builder_residue_sum_has_spectrum_mu(pt):
    x, y, t, spec = pt
    b = _safe(build_simple, x, y, t, spec)
    chk = b.check()
    assert chk["rank_one"] and chk["traces"] and chk["sum_eigenvalues"]
    assert extract_y(b, 2, 3) == y


@given(spectral_points())
def test_companion_entry_gives_okamoto_shift(pt):
    x, y, t, spec = pt
    b = _safe(build_full, x, y, t, spec)
    theta = theta_from_spectral(spec)
    y21 = extract_y(b, 2, 1)
    assume(x != 0)
    assert y21 == y + theta.delta / x
    assert recover_x_companion(b, y21) == x


@given(spectral_points(), st.permutations([1, 2, 3]))
def test_permute_mu_is_a_conjugation(pt, perm):
    x, y, t, spec = pt
    b = _safe(build_full, x, y, t, spec)
    p = permute_mu(b, perm)
    assert p.invariants() == b.invariants()
    assert p.spectral.mu == tuple(spec.mu[i - 1] for i in perm)
    assert all(p.check().values())


def test_twist_shifts_spectrum():
    b = build_full(F(1, 3), F(2), F(1, 2), klein_spectral())
    tw = twist(b, (F(1), F(0), F(-1, 2)))
    assert la.trace(tw.residues[0]) == la.trace(b.residues[0]) + 3
    assert sum(tw.spectral.lam) == sum(tw.spectral.mu)


@given(rationals(10, 7, nonzero=True), rationals(10, 7, nonzero=True), rationals(10, 7, nonzero=True),
       st.tuples(*[rationals(20, 7)] * 4))
def test_two_by_two_system(x, y, t, th):
    assume(t != 1 and y not in (1, t) and th[3] != 0)
    theta = ThetaVector.of(th)
    a = _safe(build_2x2, x, y, t, theta)
    for ai, thi in zip(a.residues, th[:3]):
        assert la.trace(ai) == 0
        assert ai[0, 0] * ai[1, 1] - ai[0, 1] * ai[1, 0] == -thi * thi / 4
    a4 = a.a4()
    assert a4[0, 1] == 0 and a4[1, 0] == 0
    assert a4[0, 0] == th[3] / 2 and a4[1, 1] == -th[3] / 2
    assert extract_y_2x2(a) == y


def test_swap_theta4_negates_theta4():
    theta = ThetaVector.of([F(1, 3), F(1, 5), F(2, 7), F(3, 4)])
    a = build_2x2(F(1, 2), F(3), F(-1, 2), theta).swap_theta4()
    assert a.theta[3] == -theta[3]
    assert a.a4()[0, 0] == -theta[3] / 2


def test_degenerate_inputs():
    with pytest.raises(DegenerateSystemError):
        build_full(F(1), F(2), F(1), klein_spectral())
    with pytest.raises(DegenerateSystemError):
        build_full(F(1), F(0), F(1, 2), klein_spectral())
    with pytest.raises(ValueError):
        extract_y(klein_family(F(3)), 2, 2)


def test_extract_needs_degree_one_entry():
    # at s = 2 the Klein y has a pole: the (2,3) entry loses its degree
    with pytest.raises(DegenerateSystemError):
        extract_y(klein_family(F(2)), 2, 3)


def test_numeric_builder_matches_exact():
    x, y, t = F(1, 3), F(2), F(-1, 2)
    exact = build_full(x, y, t, klein_spectral())
    spec = SpectralData3(tuple(complex(v) for v in klein_spectral().lam),
                         tuple(complex(v) for v in klein_spectral().mu))
    num = build_full(complex(x), complex(y), complex(t), spec)
    for a, b in zip(exact.residues, num.residues):
        assert np.allclose(la.to_complex(a), b, atol=1e-12)
    assert abs(extract_y(num, 2, 3) - 2) < 1e-12


def test_system_json_round_trip():
    b = klein_family(F(3))
    again = system_from_json(b.to_json())
    assert isinstance(again, FuchsianSystem3)
    assert again.invariants() == b.invariants()
    a = build_2x2(F(1, 2), F(3), F(-1, 2), ThetaVector.of([F(1, 3), F(1, 5), F(2, 7), F(3, 4)]))
    assert system_from_json(a.to_json()).invariants() == a.invariants()
    num = klein_family(F(3)).numeric()
    back = system_from_json(num.to_json())
    assert np.allclose(back.residues[0], num.residues[0])
    with pytest.raises(ValueError):
        system_from_json({"rank": 4})
