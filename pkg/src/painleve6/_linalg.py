"""Small dense linear algebra that works over exact fields and over complex floats.

Exact matrices are numpy arrays of dtype object holding Fractions (or any
field elements supporting ``== 0``); everything else goes through numpy.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np


class SingularMatrixError(ArithmeticError):
    pass


def is_exact(a) -> bool:
    return isinstance(a, np.ndarray) and a.dtype == object


def is_exact_scalar(v) -> bool:
    return not isinstance(v, (complex, float, np.complexfloating, np.floating))


def matrix(rows, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                out[i, j] = v
        return out
    return np.array(rows, dtype=complex)


def zeros(n: int, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty((n, n), dtype=object)
        out[...] = Fraction(0)
        return out
    return np.zeros((n, n), dtype=complex)


def identity(n: int, exact: bool) -> np.ndarray:
    out = zeros(n, exact)
    for i in range(n):
        out[i, i] = Fraction(1) if exact else 1.0
    return out


def _gauss(a: np.ndarray, b: np.ndarray):
    """Row-reduce [a | b] exactly; returns the reduced copies and pivot columns."""
    a = a.copy()
    b = b.copy()
    n, m = a.shape
    pivots = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, n) if not a[r, col] == 0), None)
        if piv is None:
            continue
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
            b[[row, piv]] = b[[piv, row]]
        inv = 1 / a[row, col]
        a[row] = a[row] * inv
        b[row] = b[row] * inv
        for r in range(n):
            if r != row and not a[r, col] == 0:
                f = a[r, col]
                a[r] = a[r] - f * a[row]
                b[r] = b[r] - f * b[row]
        pivots.append(col)
        row += 1
        if row == n:
            break
    return a, b, pivots


def solve(a: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    if is_exact(a) or is_exact(rhs):
        a = np.asarray(a, dtype=object)
        rhs = np.asarray(rhs, dtype=object).reshape(a.shape[0], -1)
        red, sol, pivots = _gauss(a, rhs)
        if len(pivots) < a.shape[1]:
            raise SingularMatrixError("singular linear system")
        return sol.reshape(-1) if sol.shape[1] == 1 else sol
    try:
        return np.linalg.solve(np.asarray(a, dtype=complex), np.asarray(rhs, dtype=complex))
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(str(exc)) from exc


def inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if is_exact(a):
        return solve(a, identity(n, True))
    return np.linalg.inv(a)


def det3(a):
    return (a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
            - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
            + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]))


def null_vector(a: np.ndarray) -> np.ndarray:
    """A nonzero kernel vector of a matrix with one-dimensional kernel."""
    n, m = a.shape
    if is_exact(a):
        red, _, pivots = _gauss(a, np.empty((n, 0), dtype=object))
        free = [c for c in range(m) if c not in pivots]
        if not free:
            raise SingularMatrixError("matrix has trivial kernel")
        f = free[0]
        v = np.empty(m, dtype=object)
        v[...] = Fraction(0)
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r, f]
        return v
    _, _, vh = np.linalg.svd(a)
    return vh[-1].conj()


def eigenbasis(s: np.ndarray, eigenvalues) -> np.ndarray:
    """Columns are eigenvectors of ``s`` for the given (distinct) eigenvalues, in order."""
    n = s.shape[0]
    exact = is_exact(s)
    cols = []
    for mu in eigenvalues:
        shifted = s - identity(n, exact) * mu
        cols.append(null_vector(shifted))
    if exact:
        p = np.empty((n, n), dtype=object)
        for j, c in enumerate(cols):
            p[:, j] = c
        return p
    return np.array(cols, dtype=complex).T


def trace(a):
    acc = a[0, 0]
    for i in range(1, a.shape[0]):
        acc = acc + a[i, i]
    return acc


def is_zero_matrix(a, tol: float = 0.0) -> bool:
    if is_exact(a):
        return all(v == 0 for v in a.flat)
    return float(np.max(np.abs(a))) <= tol


def rank_at_most_one(a, tol: float = 0.0) -> bool:
    if is_exact(a):
        n, m = a.shape
        for i in range(n):
            for k in range(i + 1, n):
                for j in range(m):
                    for l in range(j + 1, m):
                        if not a[i, j] * a[k, l] - a[i, l] * a[k, j] == 0:
                            return False
        return True
    sv = np.linalg.svd(np.asarray(a, dtype=complex), compute_uv=False)
    return len(sv) < 2 or sv[1] <= tol * max(1.0, sv[0])


def to_complex(a) -> np.ndarray:
    if is_exact(a):
        return np.array([[complex(_to_complex_scalar(v)) for v in row] for row in a], dtype=complex)
    return np.asarray(a, dtype=complex)


def _to_complex_scalar(v):
    if isinstance(v, Fraction):
        return float(v)
    return complex(v)
