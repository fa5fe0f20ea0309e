"""Normalized Laplacian spectra, spectral measures, the spectral embedding and
the greedy ball selection built on top of it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _backend
from .errors import ConvergenceError, EmbeddingError
from .graph import WeightedGraph

# Eigenvalues within this distance above a threshold count as below it.
THRESHOLD_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Eigenpairs of a symmetric matrix, eigenvalues ascending.

    ``eigenvectors[:, j]`` is the unit eigenvector ``g_j`` for ``eigenvalues[j]``;
    rows are indexed by vertex.  ``residual`` is the measured worst of
    ``||M g_j - lambda_j g_j||`` and ``|<g_i, g_j> - [i == j]|``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual_tol: float
    residual: float
    sweeps: int

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def below(self, delta: float, tol: float = THRESHOLD_TOL) -> np.ndarray:
        """Boolean mask of eigenvalues ``<= delta + tol``."""
        return self.eigenvalues <= delta + tol

    def to_json(self, vectors: bool = False) -> dict:
        out = {
            "eigenvalues": self.eigenvalues.tolist(),
            "residual_tol": self.residual_tol,
            "residual": self.residual,
            "sweeps": self.sweeps,
        }
        if vectors:
            out["eigenvectors"] = self.eigenvectors.tolist()
        return out


def normalized_laplacian(g: WeightedGraph) -> np.ndarray:
    """``I - D^{-1/2} A D^{-1/2}`` as a dense array."""
    g.require_connected()
    s = 1.0 / np.sqrt(g.degrees)
    lap = -g.adjacency_matrix() * s[:, None] * s[None, :]
    np.fill_diagonal(lap, 1.0)
    return lap


def eigendecompose(matrix, *, max_sweeps: int = 100, kernels=None) -> Spectrum:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Eigenvector signs are fixed so the entry of largest magnitude is positive;
    for a normalized Laplacian this makes ``g_1`` the positive ``sqrt(pi)``
    direction.
    """
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if np.abs(a - a.T).max(initial=0.0) > 1e-12 * scale:
        raise ValueError("matrix must be symmetric")
    n = a.shape[0]
    k = kernels or _backend.kernels
    vals, vecs, sweeps = k.jacobi_eigh(a, 1e-13, max_sweeps)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    order = np.argsort(vals, kind="stable")
    vals = np.asarray(vals)[order]
    vecs = np.asarray(vecs)[:, order]
    if n:
        pivot = np.abs(vecs).argmax(axis=0)
        vecs = vecs * np.sign(vecs[pivot, np.arange(n)])
    resid = float(np.abs(a @ vecs - vecs * vals).max(initial=0.0))
    ortho = float(np.abs(vecs.T @ vecs - np.eye(n)).max(initial=0.0))
    tol = 1e-9 * max(n, 1)
    residual = max(resid, ortho)
    if residual > tol:
        raise ConvergenceError(f"eigenpair residual {residual:.3g} exceeds {tol:.3g}")
    return Spectrum(vals, vecs, tol, residual, int(sweeps))


def graph_spectrum(g: WeightedGraph, **kwargs) -> Spectrum:
    """Spectrum of the normalized Laplacian of ``g``."""
    return eigendecompose(normalized_laplacian(g), **kwargs)


def _check_delta(delta: float) -> None:
    if not 0.0 <= delta <= 2.0:
        raise ValueError(f"delta must lie in [0, 2], got {delta}")


def vertex_measures(s: Spectrum, delta: float, tol: float = THRESHOLD_TOL) -> tuple[np.ndarray, np.ndarray]:
    """``(mu_x(delta), mu*_x(delta))`` for every vertex.

    The kernel atom is removed by skipping the first eigenvector by index.
    """
    _check_delta(delta)
    mask = s.below(delta, tol)
    sq = s.eigenvectors ** 2
    mu = sq[:, mask].sum(axis=1)
    mask[0] = False
    return mu, sq[:, mask].sum(axis=1)


def vertex_measure(
    s: Spectrum, g: WeightedGraph, x: int, delta: float, tol: float = THRESHOLD_TOL
) -> tuple[float, float]:
    if not 0 <= x < g.n:
        raise ValueError(f"vertex {x} out of range")
    mu, star = vertex_measures(s, delta, tol)
    return float(mu[x]), float(star[x])


def graph_measure(s: Spectrum, delta: float, tol: float = THRESHOLD_TOL) -> tuple[float, float]:
    """``(mu(delta), mu*(delta))``: fraction of eigenvalues up to ``delta``."""
    mu = int(s.below(delta, tol).sum()) / s.n
    return mu, mu - 1.0 / s.n


def projection(s: Spectrum, delta: float) -> np.ndarray:
    """Orthogonal projector onto the eigenvectors with eigenvalue ``<= delta``."""
    g = s.eigenvectors[:, s.below(delta)]
    return g @ g.T


@dataclass(frozen=True)
class SpectralEmbedding:
    """``F(x)`` in eigenvector coordinates: ``coords[x, i] = g_j(x)/sqrt(w(x))``
    for the selected indices ``j = indices[i]``."""

    delta: float
    indices: np.ndarray
    coords: np.ndarray
    weights: np.ndarray

    @property
    def dims(self) -> int:
        return len(self.indices)

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.coords, axis=1)

    def mu_star(self) -> np.ndarray:
        """``w(x)||F(x)||^2`` per vertex."""
        return self.weights * np.einsum("ij,ij->i", self.coords, self.coords)

    def distances_from(self, x: int) -> np.ndarray:
        return np.linalg.norm(self.coords - self.coords[x], axis=1)

    def ball(self, x: int, radius: float) -> np.ndarray:
        """Vertex ids within embedding distance ``radius`` of ``F(x)``."""
        return np.flatnonzero(self.distances_from(x) <= radius)


def spectral_embedding(
    s: Spectrum, g: WeightedGraph, delta: float, *, allow_trivial: bool = False,
    tol: float = THRESHOLD_TOL,
) -> SpectralEmbedding:
    """Spectral embedding at threshold ``delta``.

    Raises :class:`EmbeddingError` when no nonzero eigenvalue is ``<= delta``
    unless ``allow_trivial`` is set, in which case every ``F(x)`` is empty.
    """
    if not 0.0 < delta <= 2.0:
        raise ValueError(f"delta must lie in (0, 2], got {delta}")
    mask = s.below(delta, tol)
    mask[0] = False
    idx = np.flatnonzero(mask)
    if idx.size == 0 and not allow_trivial:
        raise EmbeddingError(f"no nonzero eigenvalue <= {delta}")
    w = np.asarray(g.degrees, dtype=np.float64)
    coords = s.eigenvectors[:, idx] / np.sqrt(w)[:, None]
    return SpectralEmbedding(float(delta), idx, coords, w)


def rayleigh_quotient(g: WeightedGraph, f) -> float:
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (g.n,):
        raise ValueError("f must have one entry per vertex")
    den = float(np.sum(g.degrees * f * f))
    if den == 0.0:
        raise ValueError("Rayleigh quotient of the zero function")
    num = sum(w * (f[u] - f[v]) ** 2 for u, v, w in g.edges)
    return float(num) / den


def embedding_energy(
    g: WeightedGraph,
    emb: SpectralEmbedding,
    edges: Iterable[Sequence] | None = None,
    vertices: Iterable[int] | None = None,
) -> float:
    """Weighted sum of ``||F(x) - F(y)||^2`` over an edge set.

    With ``vertices`` the edge set is every edge with both ends in it; with
    neither argument it is the full edge set.
    """
    if edges is not None and vertices is not None:
        raise ValueError("pass edges or vertices, not both")
    if vertices is not None:
        inside = np.zeros(g.n, dtype=bool)
        inside[list(vertices)] = True
        chosen = [(u, v, w) for u, v, w in g.edges if inside[u] and inside[v]]
    elif edges is not None:
        weight = {(u, v): w for u, v, w in g.edges}
        chosen = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            key = (min(u, v), max(u, v))
            if key not in weight:
                raise ValueError(f"{u}-{v} is not an edge")
            chosen.append((key[0], key[1], weight[key]))
    else:
        chosen = list(g.edges)
    if not chosen:
        return 0.0
    u, v, w = (np.array(c) for c in zip(*chosen))
    diff = emb.coords[u.astype(np.int64)] - emb.coords[v.astype(np.int64)]
    return float(np.sum(w * np.einsum("ij,ij->i", diff, diff)))


@dataclass(frozen=True)
class BallSelection:
    delta: float
    alpha: float
    k: int
    centers: tuple[int, ...]
    radii: tuple[float, ...]
    balls: tuple[frozenset, ...]
    half_balls: tuple[frozenset, ...]
    center_measures: tuple[float, ...]


def ball_selection(g: WeightedGraph, emb: SpectralEmbedding, alpha: float = 0.25) -> BallSelection:
    """Greedily pick ``floor(mu*(delta) n / 2) + 1`` centers of largest ``mu*_x``.

    Each round takes the heaviest remaining vertex (lowest id on ties) and
    removes its ball of radius ``alpha ||F(x)||`` from the candidate set.
    """
    if not 0.0 < alpha < 0.5:
        raise ValueError("alpha must lie in (0, 1/2)")
    k = emb.dims // 2 + 1
    mu = emb.mu_star()
    norms = emb.norms()
    remaining = np.ones(g.n, dtype=bool)
    centers, radii, balls, halves = [], [], [], []
    for _ in range(k):
        if not remaining.any():
            raise EmbeddingError(f"candidate set exhausted after {len(centers)} of {k} centers")
        cand = np.flatnonzero(remaining)
        best = mu[cand].max()
        # near-equal measures (rounding noise on symmetric graphs) count as ties
        x = int(cand[mu[cand] >= best - 1e-12][0])
        r = alpha * float(norms[x])
        dist = emb.distances_from(x)
        ball = dist <= r
        centers.append(x)
        radii.append(r)
        balls.append(frozenset(np.flatnonzero(ball).tolist()))
        halves.append(frozenset(np.flatnonzero(dist <= r / 2).tolist()))
        remaining &= ~ball
    return BallSelection(
        emb.delta, alpha, k, tuple(centers), tuple(radii), tuple(balls), tuple(halves),
        tuple(float(mu[c]) for c in centers),
    )
