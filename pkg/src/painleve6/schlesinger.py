"""Schlesinger flows, the k/l quadratures and numerical isomonodromy checks.

Residues are stored with poles at (0, t, 1).  The flow equations are

    A1' = [A2, A1]/t,   A3' = [A2, A3]/(t-1),   A2' = -A1' - A3',

for 2x2 and 3x3 systems alike, so the residue sum is a first integral.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import cumulative_simpson, solve_ivp

from . import _linalg as la
from .fuchsian import (
    DegenerateSystemError,
    FuchsianSystem2,
    FuchsianSystem3,
    SpectralData3,
    build_full,
    theta_from_spectral,
)
from .monodromy import MonodromySettings, PathPiece, arc, monodromy_rep, segment
from .pvi import NumericJet, SolutionCurve, ThetaVector, p_from_x, pvi_polynomial, x_from_solution


class FlowError(RuntimeError):
    """Integration of the Schlesinger equations failed."""


@dataclass(frozen=True)
class FlowSettings:
    rtol: float = 1e-12
    atol: float = 1e-12
    clearance: float = 1e-2
    max_steps: int = 200_000


@dataclass(frozen=True)
class FlowState:
    system: FuchsianSystem2 | FuchsianSystem3

    @property
    def t(self) -> complex:
        return complex(self.system.t)

    @property
    def residues(self) -> tuple:
        return tuple(la.to_complex(b) for b in self.system.residues)

    def with_residues(self, residues, t) -> FlowState:
        s = self.system
        if isinstance(s, FuchsianSystem3):
            spec = SpectralData3(tuple(complex(v) for v in s.spectral.lam),
                                 tuple(complex(v) for v in s.spectral.mu))
            return FlowState(FuchsianSystem3(tuple(residues), complex(t), spec))
        return FlowState(FuchsianSystem2(tuple(residues), complex(t), s.theta))

    def theta(self) -> ThetaVector:
        if isinstance(self.system, FuchsianSystem3):
            return theta_from_spectral(self.system.spectral, (1, 2, 3))
        return self.system.theta


@dataclass(frozen=True)
class QuadratureState:
    log_k: complex
    log_l: complex


def _comm(a, b):
    return a @ b - b @ a


def schlesinger_rhs(residues: Sequence[np.ndarray], t) -> tuple:
    """Derivatives of (A1, A2, A3) with respect to t."""
    t = complex(t)
    if t == 0 or t == 1:
        raise DegenerateSystemError("Schlesinger equations are singular at t = 0, 1", "t")
    a1, a2, a3 = residues
    d1 = _comm(a2, a1) / t
    d3 = _comm(a2, a3) / (t - 1)
    return d1, -d1 - d3, d3


def schlesinger_rhs2(residues: Sequence[np.ndarray], derivs: Sequence[np.ndarray], t) -> tuple:
    """Second t-derivatives, differentiating the commutator formulas once more."""
    t = complex(t)
    a1, a2, a3 = residues
    d1, d2, d3 = derivs
    e1 = (_comm(d2, a1) + _comm(a2, d1)) / t - _comm(a2, a1) / t ** 2
    e3 = (_comm(d2, a3) + _comm(a2, d3)) / (t - 1) - _comm(a2, a3) / (t - 1) ** 2
    return e1, -e1 - e3, e3


def schlesinger_residual(residues, derivs, t) -> float:
    """Max entry of (given derivatives) - (Schlesinger right side)."""
    rhs = schlesinger_rhs(residues, t)
    return max(float(np.max(np.abs(np.asarray(d) - r))) for d, r in zip(derivs, rhs))


def t_path(t0: complex, t1: complex, clearance: float = 1e-2, side: int = 1) -> tuple:
    """Straight segment from t0 to t1, with semicircular detours around 0 and 1 if needed."""
    t0, t1 = complex(t0), complex(t1)
    for p in (0j, 1 + 0j):
        if abs(t0 - p) < clearance or abs(t1 - p) < clearance:
            raise FlowError(f"endpoint within the clearance radius of {p.real:g}")
    d = t1 - t0
    if d == 0:
        return ()
    u = d / abs(d)
    pieces = []
    cur = t0
    hits = []
    for p in (0j, 1 + 0j):
        along = ((p - t0) * u.conjugate()).real
        off = ((p - t0) * u.conjugate()).imag
        if 0 < along < abs(d) and abs(off) < clearance:
            hits.append((along, p, off))
    for along, p, off in sorted(hits, key=lambda h: h[0]):
        q = t0 + along * u
        r = clearance + abs(off)
        go = side if off == 0 else (-1 if off > 0 else 1)
        ang = cmath.phase(-u)
        pieces.append(segment(cur, q - r * u))
        pieces.append(arc(q, r, ang, -go * math.pi))
        cur = q + r * u
    pieces.append(segment(cur, t1))
    return tuple(pieces)


def _pack(residues) -> np.ndarray:
    return np.concatenate([np.asarray(b, dtype=complex).reshape(-1) for b in residues])


def _unpack(v: np.ndarray, n: int) -> tuple:
    k = n * n
    return tuple(v[i * k:(i + 1) * k].reshape(n, n) for i in range(3))


def _integrate_pieces(state: FlowState, pieces: Sequence[PathPiece], settings: FlowSettings,
                      samples_per_piece: int = 0):
    n = state.residues[0].shape[0]
    y = _pack(state.residues)
    out = []
    for piece in pieces:
        def rhs(s, v, piece=piece):
            t = piece.point(s)
            return _pack(schlesinger_rhs(_unpack(v, n), t)) * piece.velocity(s)

        grid = np.linspace(0.0, 1.0, samples_per_piece + 1)[1:] if samples_per_piece else None
        sol = solve_ivp(rhs, (0.0, 1.0), y, method="DOP853", rtol=settings.rtol,
                        atol=settings.atol, t_eval=grid)
        if not sol.success:
            raise FlowError(sol.message)
        if sol.nfev > 12 * settings.max_steps:
            raise FlowError("step budget exhausted")
        if samples_per_piece:
            for j, s in enumerate(sol.t):
                out.append(state.with_residues(_unpack(sol.y[:, j], n), piece.point(s)))
        y = sol.y[:, -1]  # the sample grid ends at 1
    return y, out


def flow(state: FlowState, t_target, settings: FlowSettings = FlowSettings(), side: int = 1) -> FlowState:
    """Integrate the Schlesinger equations from state.t to t_target."""
    pieces = t_path(state.t, t_target, settings.clearance, side)
    if not pieces:
        return state
    n = state.residues[0].shape[0]
    y, _ = _integrate_pieces(state, pieces, settings)
    return state.with_residues(_unpack(y, n), complex(t_target))


def flow_samples(state: FlowState, t_target, count: int, settings: FlowSettings = FlowSettings(),
                 side: int = 1) -> list[FlowState]:
    """States at ``count`` evenly spaced parameter values along each piece of the path."""
    pieces = t_path(state.t, t_target, settings.clearance, side)
    _, out = _integrate_pieces(state, pieces, settings, samples_per_piece=count)
    return out


# --- solutions of PVI read off a flow ---------------------------------------

def _frame_matrix(state: FlowState) -> np.ndarray:
    """P with P^-1 (sum of residues) P diagonal, mu in order (identity if already diagonal)."""
    s = state.system
    res = state.residues
    total = res[0] + res[1] + res[2]
    off = total - np.diag(np.diag(total))
    if np.max(np.abs(off)) <= 1e-10 * max(1.0, float(np.max(np.abs(res)))):
        return np.eye(total.shape[0], dtype=complex)
    if isinstance(s, FuchsianSystem2):
        raise DegenerateSystemError("A4 is not diagonal; normalise first", "A4 off-diagonal")
    return la.eigenbasis(total, [complex(m) for m in s.spectral.mu])


def _entry_index(state: FlowState, j: int | None, k: int | None) -> tuple[int, int]:
    if isinstance(state.system, FuchsianSystem2):
        return 0, 1
    j, k = (2, 3) if j is None else (j, k)
    if j == k or not (1 <= j <= 3 and 1 <= k <= 3):
        raise ValueError("need distinct indices in 1..3")
    return j - 1, k - 1


def jet_from_state(state: FlowState, j: int | None = None, k: int | None = None) -> NumericJet:
    """(t, y, y', y'') from the Schlesinger right side, no finite differences."""
    t = state.t
    res = state.residues
    d1 = schlesinger_rhs(res, t)
    d2 = schlesinger_rhs2(res, d1, t)
    p = _frame_matrix(state)
    pinv = np.linalg.inv(p)
    r, c = _entry_index(state, j, k)
    pick = lambda mats: [complex((pinv @ m @ p)[r, c]) for m in mats]
    e, ep, epp = pick(res), pick(d1), pick(d2)
    num = e[0] * t
    num1 = ep[0] * t + e[0]
    num2 = epp[0] * t + 2 * ep[0]
    den = e[0] * (1 + t) + e[1] + e[2] * t
    den1 = ep[0] * (1 + t) + e[0] + ep[1] + ep[2] * t + e[2]
    den2 = epp[0] * (1 + t) + 2 * ep[0] + epp[1] + epp[2] * t + 2 * ep[2]
    scale = max(abs(v) for v in e) or 1.0
    if abs(den) <= 1e-12 * scale:
        raise DegenerateSystemError("y is at a pole (entry not of degree one)", "leading coefficient")
    y = num / den
    y1 = (num1 - y * den1) / den
    y2 = (num2 - 2 * y1 * den1 - y * den2) / den
    return NumericJet(t, y, y1, y2)


def flow_residual(state: FlowState, j: int | None = None, k: int | None = None) -> complex:
    """PVI polynomial at the jet read off the state."""
    return complex(pvi_polynomial(jet_from_state(state, j, k), state.theta()))


def finite_difference_jets(ts: Sequence[complex], ys: Sequence[complex]) -> list[NumericJet]:
    """Jets at interior points of an evenly spaced sample by central differences."""
    out = []
    for i in range(1, len(ts) - 1):
        h = ts[i + 1] - ts[i]
        out.append(NumericJet(ts[i], ys[i], (ys[i + 1] - ys[i - 1]) / (2 * h),
                              (ys[i + 1] - 2 * ys[i] + ys[i - 1]) / h ** 2))
    return out


# --- k and l ------------------------------------------------------------------

def dlogk_dt(t, y, theta: ThetaVector):
    return (theta[3] - 1) * (y - t) / (t * (t - 1))


def dlogl_dt(t, y, x, theta: ThetaVector):
    p = p_from_x(x, y, t, theta)
    if p == 0:
        raise ZeroDivisionError("p vanishes")
    d = theta.delta
    return (d - 1) / (t * (t - 1)) * (y - t - (d - theta[3]) / p)


def quadratures(t_path: Sequence[complex], y_path: Sequence[complex], x_path: Sequence[complex],
                theta: ThetaVector) -> list[QuadratureState]:
    """Cumulative log k, log l along sampled paths (Simpson), both zero at the first sample."""
    t = np.asarray(t_path, dtype=complex)
    y = np.asarray(y_path, dtype=complex)
    x = np.asarray(x_path, dtype=complex)
    th = ThetaVector(*(complex(v) for v in theta))
    p = np.array([p_from_x(xi, yi, ti, th) for xi, yi, ti in zip(x, y, t)])
    if np.any(np.abs(p) < 1e-12):
        raise ZeroDivisionError("p vanishes on the path")
    # integrate in the sample index so complex paths are handled too
    dt = np.gradient(t)
    fk = np.array([dlogk_dt(ti, yi, th) for ti, yi in zip(t, y)]) * dt
    fl = np.array([(th.delta - 1) / (ti * (ti - 1)) * (yi - ti - (th.delta - th[3]) / pi)
                   for ti, yi, pi in zip(t, y, p)]) * dt
    lk = cumulative_simpson(fk, dx=1.0, initial=0)
    ll = cumulative_simpson(fl, dx=1.0, initial=0)
    return [QuadratureState(complex(a), complex(b)) for a, b in zip(lk, ll)]


def quadrature_hazards(curve: SolutionCurve) -> np.ndarray:
    """Points of the s-plane where the k/l integrands blow up: poles of t, y, x and zeros of p."""
    x = x_from_solution(curve)
    p = p_from_x(x, curve.y, curve.t, curve.theta)
    polys = [curve.t.den, curve.t.num, (curve.t - 1).num, curve.y.den, x.den, p.num,
             curve.y.num, (curve.y - 1).num, (curve.y - curve.t).num]
    roots = [np.roots([float(c) for c in reversed(q.coeffs)]) for q in polys if q.degree > 0]
    return np.concatenate(roots) if roots else np.empty(0, dtype=complex)


def curve_quadratures(curve: SolutionCurve, s0, s1, rtol: float = 1e-12, atol: float = 1e-12,
                      hazards: np.ndarray | None = None, clearance: float = 1e-6) -> QuadratureState:
    """log k, log l from s0 to s1 along the straight s-segment, for an exact curve."""
    x = x_from_solution(curve)
    th = ThetaVector(*(complex(v) for v in curve.theta))
    dt = curve.t.derivative()
    s0, s1 = complex(s0), complex(s1)
    hazards = quadrature_hazards(curve) if hazards is None else hazards
    seg = segment(s0, s1)
    if any(seg.distance_to(complex(h)) < clearance for h in hazards):
        raise ZeroDivisionError("the s-path meets a pole of the integrand or a zero of p")

    def rhs(u, _v):
        s = s0 + (s1 - s0) * u
        t, y = curve.t(s), curve.y(s)
        scale = dt(s) * (s1 - s0)
        return np.array([dlogk_dt(t, y, th) * scale, dlogl_dt(t, y, x(s), th) * scale])

    sol = solve_ivp(rhs, (0.0, 1.0), np.zeros(2, dtype=complex), method="DOP853", rtol=rtol, atol=atol)
    if not sol.success:
        raise FlowError(sol.message)
    return QuadratureState(complex(sol.y[0, -1]), complex(sol.y[1, -1]))


def horizontal_family(curve: SolutionCurve, spectral: SpectralData3, s_base) -> Callable:
    """s -> diag(l, k, 1) B diag(l, k, 1)^-1 with B from ``build_full`` along the curve.

    k and l are normalised to 1 at s_base.  The result satisfies the
    Schlesinger equations in t = t(s), not merely up to conjugation.
    """
    x = x_from_solution(curve)
    hazards = quadrature_hazards(curve)
    num_spec = SpectralData3(tuple(complex(v) for v in spectral.lam),
                             tuple(complex(v) for v in spectral.mu))

    def at(s) -> FuchsianSystem3:
        q = curve_quadratures(curve, s_base, s, hazards=hazards)
        s = complex(s)
        b = build_full(complex(x(s)), complex(curve.y(s)), complex(curve.t(s)), num_spec)
        h = np.diag([cmath.exp(q.log_l), cmath.exp(q.log_k), 1.0])
        hi = np.diag([cmath.exp(-q.log_l), cmath.exp(-q.log_k), 1.0])
        return FuchsianSystem3(tuple(h @ m @ hi for m in b.residues), b.t, num_spec)

    return at


def family_schlesinger_residual(family: Callable, s0, h: float = 1e-3) -> float:
    """Schlesinger residual of a family s -> system, with five-point differences in s."""
    s0 = complex(s0)
    pts = {k: family(s0 + k * h) for k in (-2, -1, 1, 2)}
    mid = family(s0)

    def d(get):
        return (-get(pts[2]) + 8 * get(pts[1]) - 8 * get(pts[-1]) + get(pts[-2])) / (12 * h)

    dtds = d(lambda f: complex(f.t))
    derivs = [d(lambda f, i=i: la.to_complex(f.residues[i])) / dtds for i in range(3)]
    return schlesinger_residual([la.to_complex(b) for b in mid.residues], derivs, mid.t)


# --- isomonodromy -----------------------------------------------------------------

@dataclass(frozen=True)
class IsomonodromyReport:
    invariants: tuple  # one dict per sample
    max_deviation: float
    defects: tuple

    def passed(self, tol: float) -> bool:
        return self.max_deviation < tol

    def to_json(self) -> dict:
        return {"max_deviation": self.max_deviation, "defects": list(self.defects),
                "samples": [{k: [v.real, v.imag] for k, v in inv.items()} for inv in self.invariants]}


def verify_isomonodromy(family: Sequence, settings: MonodromySettings = MonodromySettings()
                        ) -> IsomonodromyReport:
    """Compare Tr Mi, Tr MiMj, Tr M1M2M3 across sample systems (or FlowStates)."""
    systems = [f.system if isinstance(f, FlowState) else f for f in family]
    if len(systems) < 2:
        raise ValueError("need at least two samples")
    reps = [monodromy_rep(s, settings) for s in systems]
    invs = [r.invariants() for r in reps]
    dev = max(abs(inv[key] - invs[0][key]) for inv in invs[1:] for key in invs[0])
    return IsomonodromyReport(tuple(invs), float(dev), tuple(r.defect for r in reps))
