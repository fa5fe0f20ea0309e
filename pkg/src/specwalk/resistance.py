"""Effective resistances and the commute-time quantities derived from them.

Up to ``EXACT_LIMIT`` vertices the grounded Laplacian is inverted exactly by
fraction-free (Bareiss) Gauss-Jordan elimination over the integers; larger
graphs use a floating solve whose residual is checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._exact import bareiss_adjugate, integer_laplacian
from .graph import WeightedGraph

EXACT_LIMIT = 64
FLOAT_RESIDUAL = 1e-10


def resistance_matrix_exact(g: WeightedGraph) -> list[list[Fraction]]:
    """All-pairs effective resistances as exact fractions."""
    g.require_connected()
    lap, den = integer_laplacian(g)
    det, adj = bareiss_adjugate(lap[1:, 1:])
    n = g.n
    x = np.zeros((n, n), dtype=object)
    x[:, :] = 0
    x[1:, 1:] = adj
    d = np.diag(x)
    num = d[:, None] + d[None, :] - 2 * x
    return [[Fraction(int(num[i, j]) * den, det) for j in range(n)] for i in range(n)]


def _float_resistances(g: WeightedGraph) -> np.ndarray:
    n = g.n
    lap = g.laplacian_matrix()
    shifted = lap + 1.0 / n
    centre = np.eye(n) - 1.0 / n
    pinv = np.linalg.solve(shifted, centre)
    scale = max(1.0, float(np.abs(lap).max()))
    resid = float(np.abs(lap @ pinv - centre).max())
    if resid > FLOAT_RESIDUAL * scale:
        raise ArithmeticError(f"Laplacian solve residual {resid:.3g} too large")
    d = np.diag(pinv)
    return d[:, None] + d[None, :] - 2 * pinv


@lru_cache(maxsize=128)
def _matrix(g: WeightedGraph) -> np.ndarray:
    if g.n <= EXACT_LIMIT:
        out = np.array([[float(v) for v in row] for row in resistance_matrix_exact(g)])
    else:
        g.require_connected()
        out = _float_resistances(g)
        np.fill_diagonal(out, 0.0)
        out = (out + out.T) / 2
    out.flags.writeable = False
    return out


def resistance_matrix(g: WeightedGraph) -> np.ndarray:
    """All-pairs effective resistances (read-only, cached per graph)."""
    return _matrix(g)


def effective_resistance(g: WeightedGraph, s: int, t: int) -> float:
    if s == t:
        raise ValueError("effective resistance needs distinct endpoints")
    for v in (s, t):
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    return float(_matrix(g)[s, t])


def resistance_diameter(g: WeightedGraph) -> tuple[np.ndarray, float]:
    """Per-vertex maximum resistance and its overall maximum."""
    per = _matrix(g).max(axis=1)
    return per, float(per.max())


def commute_times(g: WeightedGraph) -> tuple[np.ndarray, float]:
    """``vol(V) * r_diam(x)`` per vertex and ``vol(V) * r_diam``."""
    per, top = resistance_diameter(g)
    return g.vol_total * per, g.vol_total * top


@dataclass(frozen=True)
class ResistanceProfile:
    resistances: np.ndarray
    r_diam_vertex: np.ndarray
    r_diam: float
    commute_vertex: np.ndarray
    commute_max: float

    def to_json(self) -> dict:
        return {
            "resistances": self.resistances.tolist(),
            "r_diam_vertex": self.r_diam_vertex.tolist(),
            "r_diam": self.r_diam,
            "commute_vertex": self.commute_vertex.tolist(),
            "commute_max": self.commute_max,
        }


def resistance_profile(g: WeightedGraph) -> ResistanceProfile:
    per, top = resistance_diameter(g)
    return ResistanceProfile(
        np.array(_matrix(g)), per, top, g.vol_total * per, g.vol_total * top
    )
