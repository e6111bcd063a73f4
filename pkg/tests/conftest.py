from fractions import Fraction

import pytest
from hypothesis import settings

from painleve6.braid import FiniteGroup, build_binary_polyhedral
from painleve6.fuchsian import klein_family
from painleve6.monodromy import group_closure, monodromy_rep
from painleve6.pvi import klein_curve

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def klein():
    return klein_curve()


@pytest.fixture(scope="session")
def klein_rep():
    return monodromy_rep(klein_family(Fraction(2)))


@pytest.fixture(scope="session")
def klein_group(klein_rep):
    gt = group_closure(klein_rep.matrices[:3])
    return FiniteGroup.from_group_table(gt, "klein"), gt


@pytest.fixture(scope="session")
def binary_groups():
    return {k: build_binary_polyhedral(k) for k in ("tetrahedral", "octahedral", "icosahedral")}
