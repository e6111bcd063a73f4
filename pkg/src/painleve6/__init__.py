"""Algebraic solutions of Painleve VI: exact verification, Okamoto symmetries,
isomonodromic Fuchsian families, numerical monodromy and braid orbits."""

from .braid import (
    BraidOrbit,
    FiniteGroup,
    build_binary_polyhedral,
    count_generating_triples,
    enumerate_orbits,
    genus,
    hall_count,
    omega_action,
    orbit_of,
)
from .exact import GoldenRational, PolynomialQ, RationalFunctionQ
from .fuchsian import (
    FuchsianSystem2,
    FuchsianSystem3,
    SpectralData3,
    build_2x2,
    build_full,
    build_simple,
    extract_y,
    klein_family,
    permute_mu,
    recover_x,
    theta_from_spectral,
)
from .monodromy import (
    GroupTable,
    MonodromyRep,
    MonodromySettings,
    group_closure,
    is_pseudo_reflection,
    monodromy_rep,
    transport,
)
from .pvi import (
    NumericJet,
    SolutionCurve,
    ThetaVector,
    klein_curve,
    pvi_polynomial,
    residual_exact,
    x_from_solution,
)
from .schlesinger import (
    FlowState,
    flow,
    quadratures,
    schlesinger_rhs,
    verify_isomonodromy,
)
from .weyl import (
    SymmetryGenerator,
    apply_to_solution,
    apply_to_theta,
    f4_equivalent,
    reduce_to_alcove,
)

__version__ = "0.1.0"
