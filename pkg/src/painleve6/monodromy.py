"""Numerical monodromy of Fuchsian systems by parallel transport.

Loops are based at a point above the pole positions; the loop around a_i
runs straight to a standoff point, once counterclockwise around a circle of
radius min(pole gaps)/4, and straight back.  With the poles met in the order
0, t, 1 (left to right as seen from the base) the big counterclockwise loop
is gamma_3 gamma_2 gamma_1, so M4 = (M3 M2 M1)^-1.  Transports compose right
to left along concatenated paths.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.spatial import cKDTree

from . import _linalg as la

EXCEEDS_BOUND = "exceeds bound"


class TransportError(RuntimeError):
    """Integration along a path failed (step underflow, clearance violation...)."""


class AmbiguousCanonicalizationError(RuntimeError):
    """Two group elements are closer than the matching radius; tighten the integration."""


@dataclass(frozen=True)
class MonodromySettings:
    rtol: float = 1e-13
    atol: float = 1e-13
    max_steps: int = 200_000
    clearance: float | None = None
    tol: float = 1e-8
    max_order: int = 10_000


@dataclass(frozen=True)
class PathPiece:
    kind: str  # "segment" or "arc"
    start: complex
    end: complex = 0j
    center: complex = 0j
    radius: float = 0.0
    angle0: float = 0.0
    sweep: float = 0.0

    def point(self, s: float) -> complex:
        if self.kind == "segment":
            return self.start + (self.end - self.start) * s
        return self.center + self.radius * cmath.exp(1j * (self.angle0 + self.sweep * s))

    def velocity(self, s: float) -> complex:
        if self.kind == "segment":
            return self.end - self.start
        return 1j * self.sweep * self.radius * cmath.exp(1j * (self.angle0 + self.sweep * s))

    def distance_to(self, p: complex) -> float:
        if self.kind == "segment":
            d = self.end - self.start
            if d == 0:
                return abs(p - self.start)
            s = ((p - self.start) * d.conjugate()).real / abs(d) ** 2
            s = min(1.0, max(0.0, s))
            return abs(p - self.point(s))
        # good enough for full circles, which is all we build
        return abs(abs(p - self.center) - self.radius)


def segment(a: complex, b: complex) -> PathPiece:
    return PathPiece("segment", complex(a), complex(b))


def arc(center: complex, radius: float, angle0: float, sweep: float) -> PathPiece:
    center = complex(center)
    start = center + radius * cmath.exp(1j * angle0)
    return PathPiece("arc", start, center=center, radius=radius, angle0=angle0, sweep=sweep)


@dataclass(frozen=True)
class LoopPath:
    base: complex
    pieces: tuple
    encircled: int | None = None

    def min_distance(self, points: Sequence[complex]) -> float:
        return min(p.distance_to(complex(q)) for p in self.pieces for q in points)


def _pole_radius(poles: Sequence[complex]) -> float:
    gaps = [abs(complex(a) - complex(b)) for i, a in enumerate(poles) for b in poles[i + 1:]]
    return min(gaps) / 4


def default_base(poles: Sequence[complex]) -> complex:
    poles = [complex(p) for p in poles]
    c = sum(p.real for p in poles) / len(poles)
    reach = max(abs(p - c) for p in poles)
    return complex(c, max(p.imag for p in poles) + reach + 1.0)


def loop_around(poles: Sequence[complex], i: int, base: complex | None = None,
                radius: float | None = None) -> LoopPath:
    """Simple positive loop around poles[i] (0-based)."""
    poles = [complex(p) for p in poles]
    base = default_base(poles) if base is None else complex(base)
    r = _pole_radius(poles) if radius is None else radius
    a = poles[i]
    direction = (base - a) / abs(base - a)
    stand = a + r * direction
    ang = cmath.phase(direction)
    return LoopPath(base, (segment(base, stand), arc(a, r, ang, 2 * math.pi), segment(stand, base)), i)


def big_loop(poles: Sequence[complex], base: complex | None = None) -> LoopPath:
    """Counterclockwise circle through the base point enclosing every finite pole."""
    poles = [complex(p) for p in poles]
    base = default_base(poles) if base is None else complex(base)
    c = complex(sum(p.real for p in poles) / len(poles), 0.0)
    R = abs(base - c)
    if max(abs(p - c) for p in poles) >= R:
        raise TransportError("base point too close to the poles for the enclosing loop")
    return LoopPath(base, (arc(c, R, cmath.phase(base - c), 2 * math.pi),), None)


def _connection(residues: Sequence[np.ndarray], poles: Sequence[complex]):
    res = np.array([la.to_complex(b) for b in residues])
    poles = np.array([complex(p) for p in poles])

    def a_of(z: complex) -> np.ndarray:
        w = 1.0 / (z - poles)
        return np.tensordot(w, res, axes=1)

    return a_of


def transport(residues: Sequence[np.ndarray], poles: Sequence[complex], path: LoopPath,
              settings: MonodromySettings = MonodromySettings()) -> np.ndarray:
    """Fundamental-solution transport matrix Y(end) Y(start)^-1 of dY/dz = A(z) Y."""
    n = la.to_complex(residues[0]).shape[0]
    clearance = settings.clearance
    if clearance is None:
        clearance = _pole_radius(poles) / 2 if len(poles) > 1 else 1e-3
    if path.min_distance(poles) < clearance * (1 - 1e-9):
        raise TransportError("path passes within the clearance radius of a pole")
    a_of = _connection(residues, poles)
    y = np.eye(n, dtype=complex)
    for piece in path.pieces:
        def rhs(s, v, piece=piece):
            m = v.reshape(n, n)
            return (a_of(piece.point(s)) @ m * piece.velocity(s)).reshape(-1)

        sol = solve_ivp(rhs, (0.0, 1.0), y.reshape(-1), method="DOP853",
                        rtol=settings.rtol, atol=settings.atol)
        if not sol.success:
            raise TransportError(sol.message)
        if sol.t.size > settings.max_steps:
            raise TransportError("step budget exhausted")
        y = sol.y[:, -1].reshape(n, n)
    return y


@dataclass(frozen=True)
class MonodromyRep:
    matrices: tuple  # M1, M2, M3, M4
    defect: float
    base: complex = 0j

    def invariants(self) -> dict:
        return conjugacy_invariants(self.matrices)

    def to_json(self) -> dict:
        return {"base": [self.base.real, self.base.imag], "defect": self.defect,
                "matrices": [[[[complex(v).real, complex(v).imag] for v in row] for row in m]
                             for m in self.matrices],
                "invariants": {k: [v.real, v.imag] for k, v in self.invariants().items()}}


def conjugacy_invariants(mats: Sequence[np.ndarray]) -> dict:
    m = [np.asarray(x, dtype=complex) for x in mats]
    out = {f"tr{i + 1}": complex(np.trace(m[i])) for i in range(len(m))}
    for i in range(3):
        for j in range(i + 1, 3):
            out[f"tr{i + 1}{j + 1}"] = complex(np.trace(m[i] @ m[j]))
    out["tr123"] = complex(np.trace(m[0] @ m[1] @ m[2]))
    return out


def _poles_ordered(poles: Sequence[complex], base: complex) -> bool:
    args = [cmath.phase(complex(p) - base) for p in poles]
    return args[0] < args[1] < args[2]


def monodromy_rep(system, settings: MonodromySettings = MonodromySettings(),
                  base: complex | None = None) -> MonodromyRep:
    """M1, M2, M3 around 0, t, 1 and M4 = (M3 M2 M1)^-1; defect from the enclosing loop."""
    t = complex(system.t)
    if t == 0 or t == 1:
        raise ValueError("t must avoid 0 and 1")
    poles = (0j, t, 1 + 0j)
    base = default_base(poles) if base is None else complex(base)
    if any(abs(base - p) < 1e-9 for p in poles):
        raise ValueError("base point sits on a pole")
    if not _poles_ordered(poles, base):
        raise TransportError("poles are not met in the order 0, t, 1 from this base point")
    residues = [la.to_complex(b) for b in system.residues]
    ms = [transport(residues, poles, loop_around(poles, i, base), settings) for i in range(3)]
    prod = ms[2] @ ms[1] @ ms[0]
    m4 = np.linalg.inv(prod)
    big = transport(residues, poles, big_loop(poles, base), settings)
    defect = float(np.max(np.abs(m4 @ big - np.eye(prod.shape[0]))))
    return MonodromyRep((ms[0], ms[1], ms[2], m4), defect, base)


def is_pseudo_reflection(m: np.ndarray, tol: float = 1e-8) -> bool:
    """True iff M - I has numerical rank at most one."""
    m = np.asarray(m, dtype=complex)
    sv = np.linalg.svd(m - np.eye(m.shape[0]), compute_uv=False)
    scale = max(1.0, float(np.linalg.norm(m, 2)))
    return int(np.sum(sv > tol * scale)) <= 1


@dataclass
class GroupTable:
    elements: np.ndarray          # (N, n, n)
    table: np.ndarray | None      # (N, N) product indices, table[i, j] = e_i e_j
    order: int | str
    generators: tuple = ()        # indices of the generators
    identity: int = 0
    inverse: np.ndarray | None = field(default=None, repr=False)

    @property
    def finite(self) -> bool:
        return self.order != EXCEEDS_BOUND


def _flat(mats: np.ndarray) -> np.ndarray:
    m = mats.reshape(mats.shape[0], -1)
    return np.concatenate([m.real, m.imag], axis=1)


def _lookup(tree: cKDTree, pts: np.ndarray, radius: float) -> np.ndarray:
    """Index of the stored element within radius of each point, -1 if none."""
    k = 2 if tree.n > 1 else 1
    dist, idx = tree.query(pts, k=k, p=np.inf, distance_upper_bound=radius)
    if k == 2:
        if np.any(np.isfinite(dist[:, 1])):
            raise AmbiguousCanonicalizationError(
                "two group elements lie within the matching radius; tighten the integration")
        dist, idx = dist[:, 0], idx[:, 0]
    out = np.where(np.isfinite(dist), idx, -1)
    return out.astype(int)


def group_closure(generators: Sequence[np.ndarray], tol: float = 1e-8,
                  max_order: int = 10_000) -> GroupTable:
    """Breadth-first closure of the group generated by numerical matrices.

    Elements closer than 10*tol (relative to the generator scale) are
    identified.  Returns a table of order ``EXCEEDS_BOUND`` if more than
    ``max_order`` distinct elements turn up.
    """
    gens = np.array([np.asarray(g, dtype=complex) for g in generators])
    n = gens.shape[1]
    scale = max(1.0, float(np.max(np.abs(gens))))
    radius = 10 * tol * scale
    elements = [np.eye(n, dtype=complex)]
    tree = cKDTree(_flat(np.array(elements)))
    frontier = np.array(elements)
    while len(frontier):
        cand = np.einsum("gij,fjk->gfik", gens, frontier).reshape(-1, n, n)
        found = _lookup(tree, _flat(cand), radius)
        new = cand[found < 0]
        if len(new):
            # deduplicate the new candidates among themselves
            ctree = cKDTree(_flat(new))
            keep = []
            taken = np.zeros(len(new), dtype=bool)
            for i in range(len(new)):
                if taken[i]:
                    continue
                nb = ctree.query_ball_point(_flat(new[i:i + 1])[0], radius, p=np.inf)
                taken[nb] = True
                keep.append(i)
            new = new[keep]
        if len(elements) + len(new) > max_order:
            return GroupTable(np.array(elements + list(new)), None, EXCEEDS_BOUND)
        elements.extend(new)
        if len(new):
            tree = cKDTree(_flat(np.array(elements)))
        frontier = new
    elems = np.array(elements)
    N = len(elems)
    table = np.empty((N, N), dtype=int)
    for i in range(N):
        prods = np.einsum("ij,fjk->fik", elems[i], elems)
        idx = _lookup(tree, _flat(prods), radius)
        if np.any(idx < 0):
            raise AmbiguousCanonicalizationError("closure is not closed under multiplication")
        table[i] = idx
    gen_idx = tuple(int(i) for i in _lookup(tree, _flat(gens), radius))
    inverse = np.argmax(table == 0, axis=1)
    return GroupTable(elems, table, N, gen_idx, 0, inverse)
