import pytest

from painleve6 import bundled
from painleve6.braid import FiniteGroup
from painleve6.fuchsian import klein_family
from painleve6.pvi import SolutionCurve, klein_curve
from painleve6.exact import RationalFunctionQ


@pytest.mark.parametrize("name", sorted(bundled.payloads()))
def test_fixture_matches_library(name):
    assert bundled.path_of(name).read_text() == bundled.dumps(bundled.payloads()[name])


def test_curve_fixture_loads():
    assert SolutionCurve.from_json(bundled.load("klein_curve.json")) == klein_curve()


def test_family_fixture_evaluates():
    data = bundled.load("klein_family.json")
    t = RationalFunctionQ.from_json(data["t"])
    from fractions import Fraction
    assert t(Fraction(2)) == klein_family(Fraction(2)).t


def test_group_fixtures_verify():
    for kind, order in zip(bundled.GROUP_KINDS, (24, 48, 120)):
        assert FiniteGroup.from_json(bundled.load(f"group_{kind}.json")).order == order
