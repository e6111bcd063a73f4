"""Rank three (and rank two) Fuchsian systems whose isomonodromic deformations are PVI.

A system is ``d/dz - (B1/z + B2/(z-t) + B3/(z-1))``.  In the rank three case
each Bi has rank one, Tr(Bi) = lambda_i and B1 + B2 + B3 has eigenvalues
mu_1, mu_2, mu_3.  Builders work over any field: pass Fractions to get exact
systems (object arrays), complex numbers to get numeric ones, or
:class:`~painleve6.exact.RationalFunctionQ` values to get families in a
curve parameter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import _linalg as la
from .exact import PolynomialQ, RationalFunctionQ, as_fraction, format_rational
from .pvi import ThetaVector

__all__ = [
    "DegenerateSystemError",
    "SpectralData3",
    "FuchsianSystem3",
    "FuchsianSystem2",
    "theta_from_spectral",
    "build_simple",
    "build_full",
    "build_2x2",
    "extract_y",
    "extract_y_2x2",
    "permute_mu",
    "klein_family",
    "klein_spectral",
    "recover_x",
    "recover_x_companion",
    "twist",
]


class DegenerateSystemError(ArithmeticError):
    """A construction or extraction hit a degenerate locus.

    ``quantity`` names what vanished (a determinant, a leading coefficient...).
    """

    def __init__(self, message: str, quantity: str = ""):
        super().__init__(message)
        self.quantity = quantity


def _scalar(v):
    if isinstance(v, (complex, float, np.complexfloating, np.floating)):
        return complex(v)
    if isinstance(v, RationalFunctionQ):
        return v
    return as_fraction(v)


def _is_zero(v) -> bool:
    if isinstance(v, complex):
        return v == 0
    return v == 0


@dataclass(frozen=True)
class SpectralData3:
    lam: tuple
    mu: tuple

    @classmethod
    def of(cls, lam, mu) -> SpectralData3:
        lam = tuple(_scalar(v) for v in lam)
        mu = tuple(_scalar(v) for v in mu)
        if len(lam) != 3 or len(mu) != 3:
            raise ValueError("need three lambdas and three mus")
        total = sum(lam) - sum(mu)
        if isinstance(total, complex):
            if abs(total) > 1e-12 * max(1.0, *(abs(complex(v)) for v in lam + mu)):
                raise ValueError("sum(lambda) must equal sum(mu)")
        elif total != 0:
            raise ValueError("sum(lambda) must equal sum(mu)")
        return cls(lam, mu)

    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.lam + self.mu)

    def to_json(self) -> dict:
        return {"lambda": [scalar_to_json(v) for v in self.lam],
                "mu": [scalar_to_json(v) for v in self.mu]}


def theta_from_spectral(spectral: SpectralData3, perm: Sequence[int] = (1, 2, 3)) -> ThetaVector:
    """PVI parameters of y_jk for the permutation (i, j, k) of (1, 2, 3)."""
    i, j, k = perm
    if sorted((i, j, k)) != [1, 2, 3]:
        raise ValueError(f"{perm!r} is not a permutation of (1, 2, 3)")
    lam, mu = spectral.lam, spectral.mu
    return ThetaVector(lam[0] - mu[i - 1], lam[1] - mu[i - 1], lam[2] - mu[i - 1],
                       mu[k - 1] - mu[j - 1])


@dataclass(frozen=True, eq=False)
class FuchsianSystem3:
    residues: tuple  # three 3x3 arrays
    t: Any
    spectral: SpectralData3
    _frame: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def exact(self) -> bool:
        return la.is_exact(self.residues[0])

    @property
    def poles(self) -> tuple:
        return (0, self.t, 1)

    def residue_sum(self) -> np.ndarray:
        return self.residues[0] + self.residues[1] + self.residues[2]

    def diagonal_frame(self) -> tuple:
        """Residues conjugated so that their sum is diag(mu) (unique up to the torus)."""
        if "frame" not in self._frame:
            s = self.residue_sum()
            off = s.copy()
            for i in range(3):
                off[i, i] = 0
            tol = 1e-13 * max(1.0, float(np.max(np.abs(la.to_complex(s))))) if not self.exact else 0.0
            if la.is_zero_matrix(off, tol):
                self._frame["frame"] = self.residues
            else:
                try:
                    p = la.eigenbasis(s, self.spectral.mu)
                    pinv = la.inverse(p)
                except la.SingularMatrixError as exc:
                    raise DegenerateSystemError("residue sum is not diagonalisable with the given mu",
                                                "eigenbasis") from exc
                self._frame["frame"] = tuple(pinv @ b @ p for b in self.residues)
        return self._frame["frame"]

    def numeric(self) -> FuchsianSystem3:
        return FuchsianSystem3(tuple(la.to_complex(b) for b in self.residues), complex(self.t),
                               SpectralData3(tuple(complex(v) for v in self.spectral.lam),
                                             tuple(complex(v) for v in self.spectral.mu)))

    def evaluate(self, s0) -> FuchsianSystem3:
        """Specialise a family with rational-function entries at s = s0."""
        res = []
        for b in self.residues:
            m = np.empty(b.shape, dtype=object) if _exact_point(s0) else np.empty(b.shape, dtype=complex)
            for idx, v in np.ndenumerate(b):
                m[idx] = v(s0) if isinstance(v, RationalFunctionQ) else v
            res.append(m)
        t = self.t(s0) if isinstance(self.t, RationalFunctionQ) else self.t
        return FuchsianSystem3(tuple(res), t, self.spectral)

    def invariants(self) -> dict:
        """Conjugation invariants Tr(Bi), Tr(BiBj), Tr(B1B2B3)."""
        b = self.residues
        out = {f"tr{i + 1}": la.trace(b[i]) for i in range(3)}
        for i in range(3):
            for j in range(i + 1, 3):
                out[f"tr{i + 1}{j + 1}"] = la.trace(b[i] @ b[j])
        out["tr123"] = la.trace(b[0] @ b[1] @ b[2])
        return out

    def check(self, tol: float = 1e-10) -> dict:
        """Rank one, traces lambda, residue sum with eigenvalues mu."""
        exact = self.exact
        t = 0.0 if exact else tol
        ranks = all(la.rank_at_most_one(b, t) and not la.is_zero_matrix(b, t) for b in self.residues)
        traces = all(_close(la.trace(b), lam, t) for b, lam in zip(self.residues, self.spectral.lam))
        s = self.residue_sum()
        eig = all(_close(la.det3(s - la.identity(3, exact) * mu), 0, t * 10) for mu in self.spectral.mu)
        off = s.copy()
        for i in range(3):
            off[i, i] = 0
        diag = la.is_zero_matrix(off, t)
        return {"rank_one": ranks, "traces": traces, "sum_eigenvalues": eig, "sum_diagonal": diag}

    def to_json(self) -> dict:
        return {"rank": 3, "t": scalar_to_json(self.t),
                "lambda": [scalar_to_json(v) for v in self.spectral.lam],
                "mu": [scalar_to_json(v) for v in self.spectral.mu],
                "matrices": [_json_matrix(b) for b in self.residues]}

    @classmethod
    def from_json(cls, data: dict) -> FuchsianSystem3:
        if data.get("rank") != 3:
            raise ValueError("not a rank 3 system")
        mats = tuple(_matrix_from_json(m) for m in data["matrices"])
        exact = all(la.is_exact(m) for m in mats)
        if not exact:
            mats = tuple(la.to_complex(m) for m in mats)
        return cls(mats, scalar_from_json(data["t"]),
                   SpectralData3.of([scalar_from_json(v) for v in data["lambda"]],
                                    [scalar_from_json(v) for v in data["mu"]]))


@dataclass(frozen=True, eq=False)
class FuchsianSystem2:
    """Traceless 2x2 residues A1, A2, A3 with eigenvalues +-theta_i/2."""

    residues: tuple
    t: Any
    theta: ThetaVector

    @property
    def exact(self) -> bool:
        return la.is_exact(self.residues[0])

    @property
    def poles(self) -> tuple:
        return (0, self.t, 1)

    def a4(self) -> np.ndarray:
        return -(self.residues[0] + self.residues[1] + self.residues[2])

    def conjugate(self, g: np.ndarray, theta: ThetaVector | None = None) -> FuchsianSystem2:
        ginv = la.inverse(g)
        return FuchsianSystem2(tuple(g @ a @ ginv for a in self.residues), self.t,
                               self.theta if theta is None else theta)

    def swap_theta4(self) -> FuchsianSystem2:
        """Conjugate by antidiag(1, 1); A4 becomes diag(-theta4, theta4)/2."""
        g = la.matrix([[0, 1], [1, 0]], self.exact)
        if self.exact:
            g = la.matrix([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]], True)
        th = self.theta
        return self.conjugate(g, ThetaVector(th[0], th[1], th[2], -th[3]))

    def invariants(self) -> dict:
        a = self.residues
        out = {}
        for i in range(3):
            for j in range(i, 3):
                out[f"tr{i + 1}{j + 1}"] = la.trace(a[i] @ a[j])
        out["tr123"] = la.trace(a[0] @ a[1] @ a[2])
        return out

    def to_json(self) -> dict:
        return {"rank": 2, "t": scalar_to_json(self.t), "theta": self.theta.to_json(),
                "matrices": [_json_matrix(a) for a in self.residues]}

    @classmethod
    def from_json(cls, data: dict) -> FuchsianSystem2:
        if data.get("rank") != 2:
            raise ValueError("not a rank 2 system")
        mats = tuple(_matrix_from_json(m) for m in data["matrices"])
        if not all(la.is_exact(m) for m in mats):
            mats = tuple(la.to_complex(m) for m in mats)
        theta = ThetaVector.of(scalar_from_json(v) for v in data["theta"])
        return cls(mats, scalar_from_json(data["t"]), theta)


def system_from_json(data: dict):
    rank = data.get("rank")
    if rank == 3:
        return FuchsianSystem3.from_json(data)
    if rank == 2:
        return FuchsianSystem2.from_json(data)
    raise ValueError(f"unsupported rank {rank!r}")


def _close(a, b, tol) -> bool:
    if tol == 0:
        return a == b
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(b)))


def _exact_inputs(*vals) -> bool:
    return all(not isinstance(v, (complex, float, np.complexfloating, np.floating)) for v in vals)


def _exact_point(s0) -> bool:
    return not isinstance(s0, (complex, float, np.complexfloating, np.floating))


def _check_t(t):
    if _is_zero(t) or _is_zero(t - 1):
        raise DegenerateSystemError("t must avoid 0 and 1", "t(t-1)")


def build_simple(x, y, t, spectral: SpectralData3) -> FuchsianSystem3:
    """The explicit row-supported residues B1, B2, B3 (only row i of Bi is nonzero)."""
    _check_t(t)
    l1, l2, l3 = spectral.lam
    m1, m2, m3 = spectral.mu
    b12 = l1 - m3 * y + (m1 - x * y) * (y - 1)
    b13 = l1 * t - m3 * y + (m1 - x * y) * (y - t)
    b21 = l2 + (m3 * (y - t) - m1 * (y - 1) + x * (y - t) * (y - 1)) / (t - 1)
    b32 = (m2 - l2 - b12) / t
    b23 = (m2 - l3) * t - b13
    b31 = (m2 - l1 - b21) / t
    return _row_system(l1, l2, l3, b12, b13, b21, b23, b31, b32, t, spectral,
                       _exact_inputs(x, y, t, *spectral.lam, *spectral.mu))


def _row_system(l1, l2, l3, b12, b13, b21, b23, b31, b32, t, spectral, exact) -> FuchsianSystem3:
    z = Fraction(0) if exact else 0j
    rows = (
        [[l1, b12, b13], [z, z, z], [z, z, z]],
        [[z, z, z], [b21, l2, b23], [z, z, z]],
        [[z, z, z], [z, z, z], [b31, b32, l3]],
    )
    return FuchsianSystem3(tuple(la.matrix(r, exact) for r in rows), t, spectral)


def build_full(x, y, t, spectral: SpectralData3) -> FuchsianSystem3:
    """Residues B_i = f_i (x) (beta_i + mu_1 fhat_i) with sum(B_i) = diag(mu).

    z_i, u_i solve the six defining equations; after substituting
    v_i = u_i z_i the system is linear: v is fixed by y and t, z lies on a
    line cut out by the x and sum(z) equations, and the sum(w) equation is
    linear along that line because its quadratic coefficient vanishes
    identically.
    """
    _check_t(t)
    exact = _exact_inputs(x, y, t, *spectral.lam, *spectral.mu)
    lam, mu = spectral.lam, spectral.mu
    th = [l - mu[0] for l in lam]
    a = (0, t, 1)
    for name, val in (("y", y), ("y-1", y - 1), ("y-t", y - t)):
        if _is_zero(val):
            raise DegenerateSystemError(f"{name} vanishes", name)
    v = (y / t, (y - t) / (t * (t - 1)), (1 - y) / (t - 1))
    m = mu[0] - mu[2]
    # particular solution with z_2 = 0 of z1 + z3 = m, z1/y + z3/(y-1) = x
    det = 1 / (y - 1) - 1 / y
    z1 = (m / (y - 1) - x) / det
    z0 = (z1, 0 * z1, m - z1)
    n = ((1 - t) * y, t - y, t * (y - 1))
    num = sum(((z0[i] * z0[i] + th[i] * z0[i]) / v[i] for i in range(3)), 0 * z1)
    den = sum(((2 * z0[i] + th[i]) * n[i] / v[i] for i in range(3)), 0 * z1)
    if _is_zero(den):
        raise DegenerateSystemError("the w-equation degenerates along the z-line", "w-slope")
    sc = -num / den
    z = [z0[i] + sc * n[i] for i in range(3)]
    for i in range(3):
        if _is_zero(z[i]):
            raise DegenerateSystemError(f"z_{i + 1} vanishes", f"z{i + 1}")
    u = [v[i] / z[i] for i in range(3)]
    w = [(z[i] + th[i]) / u[i] for i in range(3)]
    coeff = la.matrix([[z[0], z[1], z[2]], [w[0], w[1], w[2]],
                       [t * z[0], 0 * z[1], (t - 1) * z[2]]], exact)
    one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    rhs = np.array([zero, zero, one], dtype=object if exact else complex)
    try:
        c = la.solve(coeff, rhs)
        fmat = la.matrix([[c[0], c[1], c[2]], [u[0], u[1], u[2]], [one, one, one]], exact)
        fhat = la.inverse(fmat)
    except la.SingularMatrixError as exc:
        raise DegenerateSystemError(str(exc), "determinant") from exc
    residues = []
    for i in range(3):
        beta = [zero, w[i], -z[i]]
        row = [beta[k] + mu[0] * fhat[i, k] for k in range(3)]
        residues.append(la.matrix([[fmat[r, i] * row[k] for k in range(3)] for r in range(3)], exact))
    return FuchsianSystem3(tuple(residues), t, spectral)


def build_2x2(x, y, t, theta: ThetaVector) -> FuchsianSystem2:
    """Normalised 2x2 system: the bottom-right block of ``build_full`` with mu_1 = 0,
    twisted back to trace zero."""
    th1, th2, th3, th4 = theta
    half = Fraction(1, 2)
    exact = _exact_inputs(x, y, t, *theta)
    mu = (0 * th1, (th1 + th2 + th3 - th4) * half, (th1 + th2 + th3 + th4) * half)
    sys3 = build_full(x, y, t, SpectralData3((th1, th2, th3), mu))
    res = []
    for b, thi in zip(sys3.residues, (th1, th2, th3)):
        block = la.matrix([[b[1, 1] - thi * half, b[1, 2]], [b[2, 1], b[2, 2] - thi * half]], exact)
        res.append(block)
    return FuchsianSystem2(tuple(res), t, theta)


def twist(system, c: Sequence):
    """Add c_i / (z - a_i) times the identity: residue i becomes B_i + c_i I."""
    n = system.residues[0].shape[0]
    exact = la.is_exact(system.residues[0])
    res = tuple(b + la.identity(n, exact) * ci for b, ci in zip(system.residues, c))
    if isinstance(system, FuchsianSystem3):
        lam = tuple(l + n * ci for l, ci in zip(system.spectral.lam, c))
        mu = tuple(m + sum(c) for m in system.spectral.mu)
        return FuchsianSystem3(res, system.t, SpectralData3(lam, mu))
    return FuchsianSystem2(res, system.t, system.theta)


def _zero_position(e, t, name: str, tol: float):
    """Root of e1 (z-1)(z-t) + e2 z (z-1) + e3 z (z-t) when e1 + e2 + e3 = 0."""
    e1, e2, e3 = e
    lead = e1 * (1 + t) + e2 + e3 * t
    if isinstance(lead, (complex, float, np.complexfloating)):
        scale = max(abs(complex(e1)), abs(complex(e2)), abs(complex(e3)), 1e-300)
        if abs(lead) <= tol * scale * max(1.0, abs(t)):
            raise DegenerateSystemError(f"entry {name} is not of degree one", "leading coefficient")
    elif lead == 0:
        raise DegenerateSystemError(f"entry {name} is not of degree one", "leading coefficient")
    return e1 * t / lead


def extract_y(system: FuchsianSystem3, j: int, k: int, tol: float = 1e-12):
    """Position of the zero of the (j, k) entry of z(z-1)(z-t) B(z), 1-based, j != k."""
    if j == k or not (1 <= j <= 3 and 1 <= k <= 3):
        raise ValueError("need distinct indices in 1..3")
    frame = system.diagonal_frame()
    e = [b[j - 1, k - 1] for b in frame]
    return _zero_position(e, system.t, f"({j},{k})", tol)


def extract_y_2x2(system: FuchsianSystem2, tol: float = 1e-10):
    """Zero of the top-right entry; requires A4 diagonal."""
    a4 = system.a4()
    off = [a4[0, 1], a4[1, 0]]
    if system.exact:
        if any(v != 0 for v in off):
            raise DegenerateSystemError("A4 is not diagonal; normalise first", "A4 off-diagonal")
    else:
        scale = max(1.0, float(np.max(np.abs(a4))))
        if max(abs(v) for v in off) > tol * scale * 1e3:
            raise DegenerateSystemError("A4 is not diagonal; normalise first", "A4 off-diagonal")
    e = [a[0, 1] for a in system.residues]
    return _zero_position(e, system.t, "(1,2)", tol)


def permute_mu(system: FuchsianSystem3, perm: Sequence[int]) -> FuchsianSystem3:
    """Conjugate by the permutation matrix with new index a <- old index perm[a] (1-based)."""
    perm = tuple(perm)
    if sorted(perm) != [1, 2, 3]:
        raise ValueError(f"{perm!r} is not a permutation of (1, 2, 3)")
    exact = system.exact
    pm = la.zeros(3, exact)
    for a, src in enumerate(perm):
        pm[a, src - 1] = Fraction(1) if exact else 1.0
    pt = pm.T.copy()
    res = tuple(pm @ b @ pt for b in system.residues)
    mu = tuple(system.spectral.mu[p - 1] for p in perm)
    return FuchsianSystem3(res, system.t, SpectralData3(system.spectral.lam, mu))


def _bhat_diag(frame, t, z, idx: int):
    return frame[0][idx, idx] / z + frame[1][idx, idx] / (z - t) + frame[2][idx, idx] / (z - 1)


def recover_x(system: FuchsianSystem3, y):
    """x = (mu1 - mu3)/mu3 * Bhat_33(y) in the frame where sum(B) = diag(mu)."""
    m1, _, m3 = system.spectral.mu
    if _is_zero(m3):
        raise DegenerateSystemError("mu_3 = 0", "mu3")
    frame = system.diagonal_frame()
    return (m1 - m3) / m3 * _bhat_diag(frame, system.t, y, 2)


def recover_x_companion(system: FuchsianSystem3, y_shifted):
    """x = (mu3 - mu1)/mu1 * Bhat_11 evaluated at y + delta/x."""
    m1, _, m3 = system.spectral.mu
    if _is_zero(m1):
        raise DegenerateSystemError("mu_1 = 0", "mu1")
    frame = system.diagonal_frame()
    return (m3 - m1) / m1 * _bhat_diag(frame, system.t, y_shifted, 0)


# --- the Klein family -----------------------------------------------------

def klein_spectral() -> SpectralData3:
    h = Fraction(1, 2)
    return SpectralData3((h, h, h), (Fraction(3, 14), Fraction(5, 14), Fraction(13, 14)))


def _p(*c) -> PolynomialQ:
    return PolynomialQ(c)


def klein_coefficients() -> dict[str, RationalFunctionQ]:
    """The off-diagonal entries b_ij(s) of the Klein reflection group family."""
    q3 = _p(7, -7, 4)       # 4s^2 - 7s + 7
    q2 = _p(4, -7, 7)       # 7s^2 - 7s + 4
    q4 = _p(4, -1, 4)       # 4s^2 - s + 4
    s = _p(0, 1)
    sm1 = _p(-1, 1)
    return {
        "b12": RationalFunctionQ(_p(-22, 24, -21, 14), _p(21) * s * q3),
        "b13": RationalFunctionQ(_p(-14, 21, -24, 22), _p(21) * q2),
        "b21": RationalFunctionQ(_p(5, 24, -21, 14), _p(21) * sm1 * q4),
        "b23": RationalFunctionQ(_p(-5, 39, -42, 22), _p(21) * q2),
        "b31": RationalFunctionQ(_p(14, -21, 24, 5), _p(21) * sm1 * q4),
        "b32": RationalFunctionQ(_p(22, -42, 39, -5), _p(21) * s * q3),
    }


def klein_t() -> RationalFunctionQ:
    q2 = _p(4, -7, 7)
    q3 = _p(7, -7, 4)
    return RationalFunctionQ(q2 * q2, _p(0, 1) ** 3 * q3 * q3)


KLEIN_EXCLUDED_FACTORS = (_p(0, 1), _p(7, -7, 4), _p(-1, 1), _p(4, -1, 4), _p(4, -7, 7))


def klein_family(s) -> FuchsianSystem3:
    """The isomonodromic family with Klein reflection group monodromy at parameter s.

    ``s`` may be a rational, a complex number, or ``RationalFunctionQ.variable()``
    for the symbolic family.
    """
    if not isinstance(s, RationalFunctionQ):
        s = _scalar(s)
        for f in KLEIN_EXCLUDED_FACTORS:
            if f(s) == 0:
                raise DegenerateSystemError(f"t(s) is 0, 1 or infinity at s = {s}", str(f))
    symbolic = isinstance(s, RationalFunctionQ)
    vals = {k: (v.compose(s) if symbolic else v(s)) for k, v in klein_coefficients().items()}
    t = klein_t().compose(s) if symbolic else klein_t()(s)
    sp = klein_spectral()
    exact = not isinstance(t, complex)
    h = Fraction(1, 2)
    lam = (h, h, h) if exact else (0.5 + 0j,) * 3
    spectral = sp if exact else SpectralData3(lam, tuple(complex(m) for m in sp.mu))
    return _row_system(lam[0], lam[1], lam[2], vals["b12"], vals["b13"], vals["b21"], vals["b23"],
                       vals["b31"], vals["b32"], t, spectral, exact)


# --- serialisation helpers ------------------------------------------------

def scalar_to_json(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, RationalFunctionQ):
        return v.to_json()
    c = complex(v)
    return [c.real, c.imag]


def _json_matrix(m) -> list:
    return [[scalar_to_json(v) for v in row] for row in m]


def scalar_from_json(v):
    if isinstance(v, (str, int)):
        return as_fraction(v)
    if isinstance(v, float):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(u, (int, float)) for u in v):
        return complex(v[0], v[1])
    if isinstance(v, dict):
        return RationalFunctionQ.from_json(v)
    raise ValueError(f"cannot parse scalar {v!r}")


def _matrix_from_json(rows) -> np.ndarray:
    vals = [[scalar_from_json(v) for v in row] for row in rows]
    exact = all(not isinstance(v, complex) for row in vals for v in row)
    return la.matrix(vals, exact)
