"""Spanning-tree counts: brute-force enumeration, the Matrix-Tree determinant,
the spectral formula and its truncated power series, and a local Monte Carlo
estimator of ``log(tau)/n`` that sees the graph only through an oracle.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Protocol, runtime_checkable

import numpy as np

from . import _backend
from ._exact import bareiss_determinant, integer_laplacian
from .errors import ConvergenceError, GraphError, OracleError
from .graph import WeightedGraph
from .spectral import Spectrum, graph_spectrum

BRUTE_FORCE_LIMIT = 10
EXACT_INT_LIMIT = 256
CHUNK_SAMPLES = 1 << 16
# Spawn-key prefix for the estimator's own streams, kept apart from oracle
# streams so an oracle seeded with the same integer never shares randomness.
ESTIMATOR_STREAM = 0x45535449


def brute_force_tree_count(g: WeightedGraph, *, kernels=None) -> int:
    """Count acyclic ``(n-1)``-edge subsets by backtracking over the edge list."""
    if not g.unit_weight:
        raise GraphError("brute-force counting needs an unweighted graph")
    if g.n > BRUTE_FORCE_LIMIT:
        raise GraphError(f"brute-force counting is limited to n <= {BRUTE_FORCE_LIMIT}")
    k = kernels or _backend.kernels
    eu = [u for u, _, _ in g.edges]
    ev = [v for _, v, _ in g.edges]
    return int(k.count_spanning_trees(g.n, eu, ev))


def spanning_tree_count_exact(g: WeightedGraph) -> int | Fraction:
    """Any cofactor of the combinatorial Laplacian, computed exactly.

    Integer for unweighted graphs; for weighted graphs an exact fraction
    (weights are read as the binary rationals they are stored as).
    """
    g.require_connected()
    if g.unit_weight and g.n > EXACT_INT_LIMIT:
        raise GraphError(f"exact counting is limited to n <= {EXACT_INT_LIMIT}")
    lap, den = integer_laplacian(g)
    det = bareiss_determinant(lap[1:, 1:])
    if den == 1:
        return det
    return Fraction(det, den ** (g.n - 1))


def log_count(value: int | Fraction) -> float:
    """Natural log of a positive exact count without overflowing a float."""
    if isinstance(value, Fraction):
        return math.log(value.numerator) - math.log(value.denominator)
    return math.log(value)


def _nonzero_eigenvalues(s: Spectrum) -> np.ndarray:
    lam = s.eigenvalues[1:]
    if lam.size and (lam.min() <= 0.0 or lam.max() > 2.0 + 1e-9):
        raise ConvergenceError("nonzero eigenvalues must lie in (0, 2]")
    return lam


def log_tau_spectral(g: WeightedGraph, s: Spectrum | None = None) -> float:
    """``-ln sum 2w(x) + sum ln 2w(x) + sum_{j>=2} ln(lambda_j / 2)``.

    The zero eigenvalue is dropped by index.
    """
    g.require_connected()
    s = s if s is not None else graph_spectrum(g)
    two_w = 2.0 * np.asarray(g.degrees)
    lam = _nonzero_eigenvalues(s)
    return float(-math.log(two_w.sum()) + np.log(two_w).sum() + np.log(lam / 2.0).sum())


def series_terms(s: Spectrum, t_max: int) -> np.ndarray:
    """``sum_x p_t(x,x) - 1 = sum_{j>=2} (1 - lambda_j/2)^t`` for ``t = 1..t_max``."""
    decay = 1.0 - _nonzero_eigenvalues(s) / 2.0
    t = np.arange(1, t_max + 1)
    return (decay[None, :] ** t[:, None]).sum(axis=1)


def series_tail(s: Spectrum, r: int) -> float:
    """``sum_{t >= 2r} (1/t)(sum_x p_t(x,x) - 1)``: the exact truncation error."""
    decay = 1.0 - _nonzero_eigenvalues(s) / 2.0
    t = np.arange(1, 2 * r)
    head = (decay[None, :] ** t[:, None] / t[:, None]).sum(axis=0)
    full = -np.log1p(-decay)
    return float(np.sum(full - head))


@dataclass(frozen=True)
class SeriesValue:
    value: float
    error_bound: float
    r: int


def log_tau_series_truncated(g: WeightedGraph, r: int, s: Spectrum | None = None) -> SeriesValue:
    """Power-series value of ``ln tau`` cut after ``t < 2r`` terms.

    ``error_bound`` is ``45 n / r^(1/3)``.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    if not g.unit_weight:
        raise GraphError("the truncated series is defined for unweighted graphs")
    g.require_connected()
    s = s if s is not None else graph_spectrum(g)
    terms = series_terms(s, 2 * r - 1)
    t = np.arange(1, 2 * r)
    value = -math.log(4 * g.m) + float(np.log(2.0 * np.asarray(g.degrees)).sum()) - float(np.sum(terms / t))
    return SeriesValue(value, 45.0 * g.n / r ** (1.0 / 3.0), r)


# --- oracle ----------------------------------------------------------------


@runtime_checkable
class GraphOracle(Protocol):
    """Query access to an unweighted graph.

    The batch methods count one query per element.  ``spawn(key)`` returns an
    oracle on an independent random stream that shares the query counter.
    """

    n: int
    m: int

    @property
    def query_count(self) -> int: ...

    def random_vertex(self) -> int: ...

    def random_neighbor(self, x: int) -> int: ...

    def degree(self, x: int) -> float: ...

    def random_vertices(self, count: int) -> np.ndarray: ...

    def random_neighbors(self, xs: np.ndarray) -> np.ndarray: ...

    def degrees(self, xs: np.ndarray) -> np.ndarray: ...

    def spawn(self, key: int) -> "GraphOracle": ...


class _Counter:
    def __init__(self):
        self._value = 0
        self._lock = threading.Lock()

    def add(self, k: int) -> None:
        with self._lock:
            self._value += k

    @property
    def value(self) -> int:
        return self._value


class InMemoryOracle:
    """Oracle backed by a :class:`WeightedGraph`, deterministic given its seed."""

    def __init__(self, g: WeightedGraph, seed: int, *, _stream=None, _counter=None):
        if not g.unit_weight:
            raise GraphError("the oracle serves unweighted graphs only")
        g.require_connected()
        self.graph = g
        self.n = g.n
        self.m = g.m
        self.seed = seed
        self._seq = _stream if _stream is not None else np.random.SeedSequence(seed)
        self._rng = np.random.Generator(np.random.Philox(self._seq))
        self._counter = _counter if _counter is not None else _Counter()
        self._indptr, self._indices, _ = g.csr
        self._deg = np.diff(self._indptr)

    @property
    def query_count(self) -> int:
        return self._counter.value

    def spawn(self, key: int) -> "InMemoryOracle":
        child = np.random.SeedSequence(self._seq.entropy, spawn_key=(*self._seq.spawn_key, int(key)))
        return InMemoryOracle(self.graph, self.seed, _stream=child, _counter=self._counter)

    def random_vertices(self, count: int) -> np.ndarray:
        self._counter.add(int(count))
        return self._rng.integers(0, self.n, size=int(count))

    def random_neighbors(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        self._counter.add(int(xs.size))
        pick = np.floor(self._rng.random(xs.size) * self._deg[xs]).astype(np.int64)
        return self._indices[self._indptr[xs] + pick]

    def degrees(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        self._counter.add(int(xs.size))
        d = self._deg[xs].astype(np.float64)
        if np.any(2.0 * d > float(self.n) ** 2):
            raise OracleError("degree exceeds n^2/2")
        return d

    def random_vertex(self) -> int:
        return int(self.random_vertices(1)[0])

    def random_neighbor(self, x: int) -> int:
        return int(self.random_neighbors([x])[0])

    def degree(self, x: int) -> float:
        return float(self.degrees([x])[0])


def in_memory_oracle(g: WeightedGraph, seed: int) -> InMemoryOracle:
    return InMemoryOracle(g, seed)


# --- local estimator -------------------------------------------------------


def harmonic(k: int) -> float:
    return float(np.sum(1.0 / np.arange(1, k + 1))) if k > 0 else 0.0


@dataclass(frozen=True)
class TreeEstimate:
    value: float
    r: int
    s: float
    N: int
    degree_samples: int
    epsilon: float
    delta_fail: float
    queries_used: int
    seed: int
    n: int
    m: int
    returns: int
    mean_log_degree: float

    def to_json(self) -> dict:
        return asdict(self)


def estimator_parameters(n: int, epsilon: float, delta_fail: float) -> tuple[int, float, int, int]:
    """``(r, s, N, degree_samples)`` from the accuracy and failure probability."""
    r = math.ceil(90.0 / epsilon ** 3)
    s = harmonic(2 * r - 1)
    big_n = math.ceil(64.0 * math.log(1.0 / delta_fail) * s * s / epsilon ** 2)
    ds = math.ceil(256.0 * math.log(1.0 / delta_fail) * math.log(n) ** 2 / epsilon ** 2)
    return r, s, big_n, ds


def _return_hits(oracle: GraphOracle, rng: np.random.Generator, count: int, cdf: np.ndarray) -> int:
    starts = oracle.random_vertices(count)
    u = rng.random(count) * cdf[-1]
    lengths = np.searchsorted(cdf, u, side="right") + 1
    lengths = np.minimum(lengths, len(cdf))
    pos = starts.copy()
    for step in range(int(lengths.max())):
        live = np.flatnonzero(lengths > step)
        move = live[rng.random(live.size) >= 0.5]
        if move.size:
            pos[move] = oracle.random_neighbors(pos[move])
    return int(np.count_nonzero(pos == starts))


def estimate_log_tau_local(
    oracle: GraphOracle,
    n: int,
    m: int,
    epsilon: float,
    delta_fail: float,
    seed: int,
    *,
    r: int | None = None,
    N: int | None = None,
    degree_samples: int | None = None,
    jobs: int = 1,
) -> TreeEstimate:
    """Estimate ``ln(tau)/n`` using nothing but oracle queries.

    Each of ``N`` samples starts a lazy walk at a random vertex, runs it for
    ``t`` steps with ``P(t) = 1/(s t)`` on ``1 <= t < 2r``, and records whether
    it came back.  The result is

        -ln(4m)/n + mean ln 2w(y) - s * (returns / N) + s/n.

    Samples are drawn in fixed-size chunks with spawned sub-seeds, so the
    result is the same for every ``jobs``.
    """
    if not 0.0 < epsilon < 1.0 + 1e-12:
        raise ValueError("epsilon must lie in (0, 1]")
    if not 0.0 < delta_fail < 1.0:
        raise ValueError("delta_fail must lie in (0, 1)")
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    r0, _, _, ds0 = estimator_parameters(n, epsilon, delta_fail)
    r = r0 if r is None else int(r)
    if r < 1:
        raise ValueError("r must be positive")
    s = harmonic(2 * r - 1)
    if N is None:
        big_n = math.ceil(64.0 * math.log(1.0 / delta_fail) * s * s / epsilon ** 2)
    else:
        big_n = int(N)
    ds = ds0 if degree_samples is None else int(degree_samples)
    if big_n < 1 or ds < 1:
        raise ValueError("sample counts must be positive")

    t = np.arange(1, 2 * r)
    cdf = np.cumsum(1.0 / (s * t))
    sizes = [CHUNK_SAMPLES] * (big_n // CHUNK_SAMPLES)
    if big_n % CHUNK_SAMPLES:
        sizes.append(big_n % CHUNK_SAMPLES)
    children = np.random.SeedSequence(seed, spawn_key=(ESTIMATOR_STREAM,)).spawn(len(sizes))

    def chunk(i: int) -> int:
        rng = np.random.Generator(np.random.Philox(children[i]))
        return _return_hits(oracle.spawn(i), rng, sizes[i], cdf)

    start_count = oracle.query_count
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            hits = sum(pool.map(chunk, range(len(sizes))))
    else:
        hits = sum(chunk(i) for i in range(len(sizes)))

    deg_oracle = oracle.spawn(len(sizes))
    ys = deg_oracle.random_vertices(ds)
    w_tilde = float(np.mean(np.log(2.0 * deg_oracle.degrees(ys))))
    value = -math.log(4.0 * m) / n + w_tilde - s * hits / big_n + s / n
    return TreeEstimate(
        value=value, r=r, s=s, N=big_n, degree_samples=ds, epsilon=epsilon,
        delta_fail=delta_fail, queries_used=oracle.query_count - start_count, seed=seed,
        n=n, m=m, returns=hits, mean_log_degree=w_tilde,
    )
