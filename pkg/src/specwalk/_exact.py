"""Fraction-free integer elimination shared by the resistance and tree counters."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .graph import WeightedGraph


def _object_matrix(m) -> np.ndarray:
    rows = [[int(v) for v in row] for row in m]
    out = np.empty((len(rows), len(rows)), dtype=object)
    if rows:
        out[:, :] = rows
    return out


def bareiss_determinant(m) -> int:
    """Exact determinant of an integer matrix by Bareiss elimination with row pivoting."""
    a = _object_matrix(m)
    n = a.shape[0]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k, k] == 0:
            nz = np.flatnonzero(a[k + 1:, k] != 0)
            if nz.size == 0:
                return 0
            j = k + 1 + int(nz[0])
            a[[k, j]] = a[[j, k]]
            sign = -sign
        sub = a[k + 1:, k + 1:]
        a[k + 1:, k + 1:] = (a[k, k] * sub - np.outer(a[k + 1:, k], a[k, k + 1:])) // prev
        prev = a[k, k]
    return sign * int(a[n - 1, n - 1]) if n else 1


def bareiss_adjugate(m) -> tuple[int, np.ndarray]:
    """Determinant and adjugate of an integer matrix with nonzero leading minors.

    Fraction-free Gauss-Jordan on ``[M | I]``: after step ``k`` every entry is
    an integer minor, so the divisions are exact, and at the end the right
    block is ``adj(M)``.
    """
    a = _object_matrix(m)
    n = a.shape[0]
    if n == 0:
        return 1, np.empty((0, 0), dtype=object)
    aug = np.empty((n, 2 * n), dtype=object)
    aug[:, :n] = a
    aug[:, n:] = 0
    for i in range(n):
        aug[i, n + i] = 1
    prev = 1
    for k in range(n):
        piv = aug[k, k]
        if piv == 0:
            raise ZeroDivisionError("zero leading minor")
        col = aug[:, k].copy()
        col[k] = 0
        new = (piv * aug - np.outer(col, aug[k])) // prev
        new[k] = aug[k]
        aug = new
        prev = piv
    return int(aug[n - 1, n - 1]), aug[:, n:]


def integer_laplacian(g: WeightedGraph) -> tuple[np.ndarray, int]:
    """``(den * L, den)`` with ``den`` the least common denominator of the weights."""
    fr = [Fraction(w) for _, _, w in g.edges]
    den = 1
    for f in fr:
        den = den * f.denominator // math.gcd(den, f.denominator)
    lap = np.empty((g.n, g.n), dtype=object)
    lap[:, :] = 0
    for (u, v, _), f in zip(g.edges, fr):
        w = int(f * den)
        lap[u, v] -= w
        lap[v, u] -= w
        lap[u, u] += w
        lap[v, v] += w
    return lap, den
