"""Braid group action on monodromy triples in finite groups, and genus of the orbits.

Groups are multiplication tables on indices 0..N-1 with 0 the identity.
A monodromy quadruple (M1, M2, M3, M4) with M4 M3 M2 M1 = 1 is stored as the
triple (M1, M2, M3).  The pure braid generators are w1 = omega_1^2 (t loops
around 0) and w2 = omega_2^2 (t loops around 1).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .exact import GoldenRational, format_rational


class GroupTooLargeError(ValueError):
    pass


class InconsistentPermutationError(ValueError):
    pass


# --- quaternions over any commutative ring ------------------------------------

def qmul(p: tuple, q: tuple) -> tuple:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)


class SqrtTwoUnit:
    """q / sqrt(2)^e with q a rational quaternion and e in {0, 1}.

    Enough to multiply binary octahedral elements exactly without a
    Q(sqrt 2) field.
    """

    __slots__ = ("q", "e")

    def __init__(self, q: Iterable, e: int = 0):
        q = tuple(Fraction(v) for v in q)
        while e >= 2:
            q = tuple(v / 2 for v in q)
            e -= 2
        self.q, self.e = q, e

    def __mul__(self, other: SqrtTwoUnit) -> SqrtTwoUnit:
        return SqrtTwoUnit(qmul(self.q, other.q), self.e + other.e)

    def __eq__(self, other):
        return isinstance(other, SqrtTwoUnit) and (self.q, self.e) == (other.q, other.e)

    def __hash__(self):
        return hash((self.q, self.e))

    def to_json(self) -> dict:
        return {"q": [format_rational(v) for v in self.q], "sqrt2_power": -self.e}

    def to_complex_matrix(self) -> np.ndarray:
        return _quat_matrix(tuple(float(v) / 2 ** (self.e / 2) for v in self.q))


def _quat_matrix(q) -> np.ndarray:
    a, b, c, d = q
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


class Quaternion:
    """Quaternion with coordinates in a field (Fraction or GoldenRational)."""

    __slots__ = ("c",)

    def __init__(self, coords: Iterable):
        self.c = tuple(coords)

    def __mul__(self, other: Quaternion) -> Quaternion:
        return Quaternion(qmul(self.c, other.c))

    def __eq__(self, other):
        return isinstance(other, Quaternion) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def to_json(self) -> list:
        return [v.to_json() if isinstance(v, GoldenRational) else format_rational(v) for v in self.c]

    def to_complex_matrix(self) -> np.ndarray:
        return _quat_matrix(tuple(float(v) for v in self.c))


# --- finite groups ----------------------------------------------------------------

@dataclass(eq=False)
class FiniteGroup:
    table: np.ndarray
    labels: list | None = None
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int64)
        n = self.table.shape[0]
        if self.table.shape != (n, n):
            raise ValueError("multiplication table must be square")
        if not (np.array_equal(self.table[0], np.arange(n)) and np.array_equal(self.table[:, 0], np.arange(n))):
            raise ValueError("element 0 must be the identity")

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmax(self.table == 0, axis=1)
        if not np.all(self.table[np.arange(self.order), inv] == 0):
            raise ValueError("some element has no inverse")
        return inv

    def mul(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = int(self.table[out, x])
        return out

    @cached_property
    def conjugation(self) -> np.ndarray:
        """conjugation[g, x] = g x g^-1."""
        return self.table[self.table, self.inverse[:, None]]

    @cached_property
    def conjugacy_classes(self) -> list[tuple]:
        seen = np.full(self.order, -1)
        classes = []
        for x in range(self.order):
            if seen[x] < 0:
                cls = tuple(sorted(set(self.conjugation[:, x].tolist())))
                seen[list(cls)] = len(classes)
                classes.append(cls)
        self._cache["class_index"] = seen
        return classes

    @property
    def class_index(self) -> np.ndarray:
        self.conjugacy_classes
        return self._cache["class_index"]

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = int(self.table[y, x])
            k += 1
        return k

    def center(self) -> list[int]:
        return [x for x in range(self.order) if np.all(self.conjugation[:, x] == x)]

    def verify(self) -> bool:
        """Group axioms on the table (associativity checked in chunks)."""
        n = self.order
        t = self.table
        if t.min() < 0 or t.max() >= n:
            return False
        for row in t:
            if len(np.unique(row)) != n:
                return False
        self.inverse
        for a in range(n):
            if not np.array_equal(t[t[a]], t[a][t]):  # (a b) c == a (b c) for all b, c
                return False
        return sum(len(c) for c in self.conjugacy_classes) == n

    def closure(self, gens: Sequence[int]) -> np.ndarray:
        """Boolean mask of the subgroup generated by ``gens``."""
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        gens = np.array(sorted(set(int(g) for g in gens)), dtype=np.int64)
        if gens.size == 0:
            return mask
        frontier = np.array([0])
        while frontier.size:
            prods = self.table[np.ix_(frontier, gens)].ravel()
            new = np.unique(prods[~mask[prods]])
            mask[new] = True
            frontier = new
        return mask

    def generates(self, gens: Sequence[int]) -> bool:
        return bool(self.closure(gens).all())

    def to_json(self) -> dict:
        out = {"order": self.order, "table": self.table.tolist()}
        if self.name:
            out["name"] = self.name
        if self.labels is not None:
            out["labels"] = [lab.to_json() for lab in self.labels]
        return out

    @classmethod
    def from_json(cls, data: dict) -> FiniteGroup:
        try:
            table = np.array(data["table"], dtype=np.int64)
            if "order" in data and int(data["order"]) != table.shape[0]:
                raise ValueError("order does not match the table")
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed group file: {exc}") from exc
        g = cls(table, None, data.get("name", ""))
        if not g.verify():
            raise ValueError("table fails the group axioms")
        return g

    @classmethod
    def from_group_table(cls, gt, name: str = "") -> FiniteGroup:
        """From a numerically closed monodromy group (identity at index 0)."""
        if gt.table is None:
            raise ValueError("group closure did not finish")
        return cls(gt.table, None, name)

    @classmethod
    def cyclic(cls, n: int) -> FiniteGroup:
        idx = np.arange(n)
        return cls((idx[:, None] + idx[None, :]) % n, None, f"C{n}")


def _group_from_elements(elements: list, name: str) -> FiniteGroup:
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    if len(index) != n:
        raise ValueError("duplicate elements")
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            try:
                table[i, j] = index[a * b]
            except KeyError:
                raise ValueError("element list is not closed under multiplication") from None
    return FiniteGroup(table, list(elements), name)


def _signed(coords) -> list[tuple]:
    """All sign changes of the nonzero coordinates."""
    nz = [i for i, v in enumerate(coords) if v != 0]
    out = []
    for signs in itertools.product((1, -1), repeat=len(nz)):
        c = list(coords)
        for i, s in zip(nz, signs):
            c[i] = c[i] * s
        out.append(tuple(c))
    return out


def _hurwitz_units() -> list[tuple]:
    one, half = Fraction(1), Fraction(1, 2)
    units = []
    for i in range(4):
        units.extend(_signed(tuple(one if k == i else Fraction(0) for k in range(4))))
    units.extend(_signed((half,) * 4))
    return units


def _even_permutations(n: int = 4) -> list[tuple]:
    def parity(p):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        return inv % 2

    return [p for p in itertools.permutations(range(n)) if parity(p) == 0]


def build_binary_polyhedral(kind: str) -> FiniteGroup:
    """Binary tetrahedral (24), octahedral (48) or icosahedral (120) group with exact labels."""
    kind = kind.lower()
    units = _hurwitz_units()
    identity = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    units.remove(identity)
    units.insert(0, identity)
    if kind in ("tetrahedral", "2t"):
        return _group_from_elements([Quaternion(u) for u in units], "2T")
    if kind in ("octahedral", "2o"):
        elems = [SqrtTwoUnit(u, 0) for u in units]
        one = Fraction(1)
        for i, j in itertools.combinations(range(4), 2):
            base = tuple(one if k in (i, j) else Fraction(0) for k in range(4))
            elems.extend(SqrtTwoUnit(c, 1) for c in _signed(base))
        return _group_from_elements(elems, "2O")
    if kind in ("icosahedral", "2i"):
        g = GoldenRational
        half = Fraction(1, 2)
        elems = [Quaternion(tuple(g(v) for v in u)) for u in units]
        # (0, 1, phi^-1, phi)/2 under even permutations and all sign changes
        base = (g(0), g(half), g(-half, half), g(0, half))
        for perm in _even_permutations():
            coords = tuple(base[perm[k]] for k in range(4))
            elems.extend(Quaternion(c) for c in _signed(coords))
        return _group_from_elements(elems, "2I")
    raise ValueError(f"unknown binary polyhedral group {kind!r}")


# --- the braid action -------------------------------------------------------------

def omega_action(i: int, quad: Sequence, group: FiniteGroup | None = None) -> tuple:
    """omega_i(M_i, M_{i+1}) = (M_{i+1}, M_{i+1} M_i M_{i+1}^-1), other entries fixed.

    Entries are group indices if ``group`` is given, otherwise matrices.
    """
    if i not in (1, 2, 3):
        raise ValueError("omega index must be 1, 2 or 3")
    q = list(quad)
    if len(q) != 4:
        raise ValueError("omega acts on quadruples (M1, M2, M3, M4)")
    a, b = q[i - 1], q[i]
    if group is None:
        conj = b @ a @ np.linalg.inv(b)
    else:
        conj = group.mul(b, a, int(group.inverse[b]))
    q[i - 1], q[i] = b, conj
    return tuple(q)


def quadruple(group: FiniteGroup, triple: Sequence[int]) -> tuple:
    a, b, c = triple
    return (a, b, c, int(group.inverse[group.mul(c, b, a)]))


def pure_braid(group: FiniteGroup, k: int, triple: Sequence[int]) -> tuple:
    """w_k = omega_k^2 on a triple, k in {1, 2}."""
    q = quadruple(group, triple)
    q = omega_action(k, omega_action(k, q, group), group)
    return q[:3]


def canonical_triple(group: FiniteGroup, triple: Sequence[int]) -> tuple:
    """Least simultaneous conjugate in the order of index sequences."""
    n = group.order
    conj = group.conjugation
    a, b, c = triple
    keys = (conj[:, a] * n + conj[:, b]) * n + conj[:, c]
    k = int(keys.min())
    return (k // (n * n), (k // n) % n, k % n)


def triple_signature(group: FiniteGroup, triple: Sequence[int]) -> tuple:
    ci = group.class_index
    return tuple(int(ci[x]) for x in quadruple(group, triple))


@dataclass(frozen=True)
class BraidOrbit:
    triples: tuple           # canonical representatives
    sigma0: tuple            # permutation induced by w1
    sigma1: tuple            # permutation induced by w2
    signature: tuple         # class indices of M1..M4

    @property
    def branches(self) -> int:
        return len(self.triples)

    @property
    def sigma_inf(self) -> tuple:
        return _perm_inverse(_perm_compose(self.sigma1, self.sigma0))

    @property
    def genus(self) -> int:
        return genus(self.sigma0, self.sigma1)

    def cycle_types(self) -> dict:
        return {name: sorted((len(c) for c in _cycles(p)), reverse=True)
                for name, p in (("sigma0", self.sigma0), ("sigma1", self.sigma1), ("sigma_inf", self.sigma_inf))}

    def to_json(self) -> dict:
        return {"signature": list(self.signature), "branches": self.branches, "genus": self.genus,
                "cycle_types": self.cycle_types()}


def _perm_compose(p: Sequence[int], q: Sequence[int]) -> tuple:
    """(p o q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def _perm_inverse(p: Sequence[int]) -> tuple:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def _cycles(p: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if not seen[s]:
            cyc = []
            x = s
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = p[x]
            out.append(cyc)
    return out


def genus(sigma0: Sequence[int], sigma1: Sequence[int]) -> int:
    """Riemann-Hurwitz genus of the cover branched over 0, 1, infinity."""
    n = len(sigma0)
    if sorted(sigma0) != list(range(n)) or sorted(sigma1) != list(range(n)):
        raise InconsistentPermutationError("sigma0 and sigma1 must be permutations of the same set")
    sinf = _perm_inverse(_perm_compose(sigma1, sigma0))
    ram = sum(len(c) - 1 for p in (sigma0, sigma1, sinf) for c in _cycles(p))
    euler = 2 * n - ram
    if euler % 2:
        raise InconsistentPermutationError("Riemann-Hurwitz sum is odd")
    g = (2 - euler) // 2
    if g < 0:
        raise InconsistentPermutationError("negative genus; the action is not transitive")
    return g


def orbit_of(group: FiniteGroup, triple: Sequence[int]) -> BraidOrbit:
    start = canonical_triple(group, triple)
    index = {start: 0}
    order = [start]
    s0, s1 = [], []
    i = 0
    while i < len(order):
        cur = order[i]
        for k, out in ((1, s0), (2, s1)):
            img = canonical_triple(group, pure_braid(group, k, cur))
            if img not in index:
                index[img] = len(order)
                order.append(img)
            out.append(index[img])
        i += 1
    return BraidOrbit(tuple(order), tuple(s0), tuple(s1), triple_signature(group, start))


def generating_classes(group: FiniteGroup, signature: Sequence[int] | None = None,
                       max_order: int = 400) -> list[tuple]:
    """Canonical representatives of conjugacy classes of generating triples, sorted.

    With a ``signature`` (class indices of M1..M4) only matching triples are built.
    """
    n = group.order
    if n > max_order:
        raise GroupTooLargeError(f"order {n} exceeds the enumeration bound {max_order}")
    conj = group.conjugation
    classes = group.conjugacy_classes
    if signature is None:
        firsts = [c[0] for c in classes]
        seconds = thirds = np.arange(n)
    else:
        signature = tuple(int(v) for v in signature)
        firsts = [classes[signature[0]][0]]
        seconds = np.array(classes[signature[1]])
        thirds = np.array(classes[signature[2]])
    bb, cc = np.meshgrid(seconds, thirds, indexing="ij")
    bb, cc = bb.ravel(), cc.ravel()
    keys = set()
    for a in firsts:
        k = (conj[:, a][:, None] * n + conj[:, bb]) * n + conj[:, cc]
        keys.update(np.unique(k.min(axis=0)).tolist())
    gen = _GenerationOracle(group)
    out = []
    for k in sorted(keys):
        t = (k // (n * n), (k // n) % n, k % n)
        if signature is not None and triple_signature(group, t) != signature:
            continue
        if gen.generates(t):
            out.append(t)
    return out


class _GenerationOracle:
    """Memoised test whether a triple generates the whole group."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.pairs: dict = {}
        self.joins: dict = {}

    def subgroup(self, gens: tuple) -> np.ndarray:
        a, b = gens
        key = (min(a, b), max(a, b))
        if key not in self.pairs:
            self.pairs[key] = self.group.closure(key)
        return self.pairs[key]

    def generates(self, triple: Sequence[int]) -> bool:
        a, b, c = triple
        h = self.subgroup((a, b))
        if h.all():
            return True
        if h[c]:
            return False
        key = (h.tobytes(), c)
        if key not in self.joins:
            gens = list(np.nonzero(h)[0]) + [c]
            self.joins[key] = bool(self.group.closure(gens).all())
        return self.joins[key]


def enumerate_orbits(group: FiniteGroup, signature: Sequence[int] | None = None,
                     classes: list[tuple] | None = None) -> list[BraidOrbit]:
    """All pure braid orbits on conjugacy classes of generating triples.

    ``signature`` optionally fixes the conjugacy classes of (M1, M2, M3, M4);
    orbits are returned in order of their least canonical representative.
    """
    if classes is None:
        classes = generating_classes(group, signature)
    elif signature is not None:
        signature = tuple(signature)
        classes = [c for c in classes if triple_signature(group, c) == signature]
    remaining = set(classes)
    orbits = []
    for c in classes:
        if c in remaining:
            orb = orbit_of(group, c)
            remaining.difference_update(orb.triples)
            orbits.append(orb)
    return orbits


# --- counting generating triples ----------------------------------------------------

def count_generating_triples(group: FiniteGroup, ordered: bool = False, max_order: int = 400) -> int:
    """Generating triples of the group, up to simultaneous conjugation by default.

    ``ordered=True`` counts ordered triples (g1, g2, g3) by enumeration with
    memoised subgroup closures instead.
    """
    n = group.order
    if n > max_order:
        raise GroupTooLargeError(f"order {n} exceeds the enumeration bound {max_order}")
    if not ordered:
        return len(generating_classes(group, max_order=max_order))
    total = 0
    oracle = _GenerationOracle(group)
    for a in range(n):
        for b in range(n):
            h = oracle.subgroup((a, b))
            if h.all():
                total += n
                continue
            for c in np.nonzero(~h)[0]:
                total += oracle.generates((a, b, int(c)))
    return total


def subgroups(group: FiniteGroup) -> list[np.ndarray]:
    """Every subgroup as a boolean mask, found by adjoining cyclic generators."""
    n = group.order
    cyclic = {}
    for x in range(n):
        m = group.closure([x])
        cyclic.setdefault(m.tobytes(), x)
    gens = list(cyclic.values())
    found = {group.closure([]).tobytes(): (group.closure([]), [])}
    queue = [next(iter(found))]
    while queue:
        key = queue.pop()
        mask, hg = found[key]
        for g in gens:
            if mask[g]:
                continue
            m = group.closure(hg + [g])
            k = m.tobytes()
            if k not in found:
                found[k] = (m, hg + [g])
                queue.append(k)
    return [m for m, _ in found.values()]


def hall_count(group: FiniteGroup, k: int = 3) -> int:
    """Ordered generating k-tuples by Mobius inversion over the subgroup lattice."""
    subs = sorted(subgroups(group), key=lambda m: -int(m.sum()))
    masks = np.array(subs)
    sizes = masks.sum(axis=1)
    mu = np.zeros(len(subs), dtype=np.int64)
    for i, h in enumerate(subs):
        if i == 0:
            mu[i] = 1
            continue
        above = np.all(masks[:i] | ~h, axis=1) & (sizes[:i] > sizes[i])
        mu[i] = -int(mu[:i][above].sum())
    return int(sum(int(m) * int(s) ** k for m, s in zip(mu, sizes)))
