"""Lazy random walks ``P = (I + D^{-1}A)/2`` and the continuous-time heat kernel.

Return and transition probabilities come from the spectrum.  Mixing times are
found from exact matrix powers of ``P``; both distances involved are
nonincreasing in ``t``, so the first passing time is located by doubling and
bisection rather than stepping one ``t`` at a time.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _backend
from .errors import ConvergenceError
from .graph import WeightedGraph, stationary
from .spectral import Spectrum, graph_spectrum, vertex_measures

# Slack for comparisons that can be exact ties in real arithmetic.
ROUNDING_GUARD = 1e-12
CHUNK_WALKS = 1 << 16


class WalkKernel:
    """The lazy walk on a connected graph together with its spectrum."""

    def __init__(self, g: WeightedGraph, spectrum: Spectrum | None = None):
        g.require_connected()
        self.graph = g
        self.spectrum = spectrum if spectrum is not None else graph_spectrum(g)
        self.pi = stationary(g)
        self.decay = 1.0 - self.spectrum.eigenvalues / 2.0
        self._sq = self.spectrum.eigenvectors ** 2
        self._powers: list[np.ndarray] = []

    @property
    def n(self) -> int:
        return self.graph.n

    def matrix(self) -> np.ndarray:
        a = self.graph.adjacency_matrix()
        return 0.5 * (np.eye(self.n) + a / self.graph.degrees[:, None])

    def power(self, t: int) -> np.ndarray:
        """``P^t`` by products of cached repeated squares."""
        if t < 0:
            raise ValueError("t must be nonnegative")
        if not self._powers:
            self._powers.append(self.matrix())
        out = np.eye(self.n)
        bit = 0
        while t:
            while len(self._powers) <= bit:
                last = self._powers[-1]
                self._powers.append(last @ last)
            if t & 1:
                out = out @ self._powers[bit]
            t >>= 1
            bit += 1
        return out

    def return_excess(self, t: float, heat: bool = False) -> np.ndarray:
        """``p_t(x,x) - pi(x)`` (or ``q_t``) for every x, skipping the kernel by index."""
        if heat:
            f = np.exp(-self.spectrum.eigenvalues[1:] * t)
        else:
            f = self.decay[1:] ** t
        return self._sq[:, 1:] @ f


def return_probability(k: WalkKernel, x: int, t: int) -> float:
    if t < 0:
        raise ValueError("t must be nonnegative")
    return float(k.pi[x] + k.return_excess(t)[x])


def return_probabilities(k: WalkKernel, t: int) -> np.ndarray:
    return k.pi + k.return_excess(t)


def transition_probability(k: WalkKernel, x: int, y: int, t: int) -> float:
    if t < 0:
        raise ValueError("t must be nonnegative")
    g = k.spectrum.eigenvectors
    w = k.graph.degrees
    val = np.sum(k.decay ** t * g[x] * g[y])
    return float(math.sqrt(w[y] / w[x]) * val)


def heat_return_probability(k: WalkKernel, x: int, t: float) -> float:
    if t < 0:
        raise ValueError("t must be nonnegative")
    return float(k.pi[x] + k.return_excess(t, heat=True)[x])


def average_return_excess(k: WalkKernel, t: int) -> float:
    """``(sum_x p_t(x,x) - 1)/n`` from the trace of ``P^t``."""
    return (float(np.trace(k.power(t))) - 1.0) / k.n


def spectral_return_integral(s: Spectrum, t: int) -> float:
    """``(t/2) * integral_0^2 (1 - l/2)^(t-1) mu*(l) dl`` evaluated atom by atom.

    ``mu*`` is a step function jumping by ``1/n`` at each nonzero eigenvalue,
    and each jump contributes ``(1 - l_j/2)^t - 0^t`` to the integral.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    lam = s.eigenvalues[1:]
    return float(np.sum((1.0 - lam / 2.0) ** t)) / s.n


# --- Monte Carlo -------------------------------------------------------------


@lru_cache(maxsize=64)
def _walk_keys(g: WeightedGraph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    indptr, indices, weights = g.csr
    keys = np.empty(len(indices))
    for x in range(g.n):
        lo, hi = indptr[x], indptr[x + 1]
        cum = np.cumsum(weights[lo:hi]) / g.degrees[x]
        keys[lo:hi] = x + cum
        keys[hi - 1] = x + 1.0
    return indptr, keys, indices


def simulate_lazy_walks(g: WeightedGraph, starts, lengths, uniforms, *, kernels=None) -> np.ndarray:
    """Endpoints of lazy walks driven by one uniform per step.

    ``uniforms`` holds the steps of every walk back to back, in walk order.
    """
    g.require_connected()
    lengths = np.asarray(lengths, dtype=np.int64)
    offsets = np.zeros(len(lengths), dtype=np.int64)
    if len(lengths) > 1:
        offsets[1:] = np.cumsum(lengths[:-1])
    uniforms = np.asarray(uniforms, dtype=np.float64)
    if len(uniforms) < int(lengths.sum()):
        raise ValueError("not enough uniforms for the requested steps")
    indptr, keys, indices = _walk_keys(g)
    k = kernels or _backend.kernels
    return k.lazy_walk_ends(indptr, keys, indices, np.asarray(starts, dtype=np.int64),
                            lengths, uniforms, offsets)


def hoeffding_half_width(samples: int, confidence: float = 0.95) -> float:
    """Two-sided Hoeffding half-width for the mean of [0,1] variables."""
    return math.sqrt(math.log(2.0 / (1.0 - confidence)) / (2.0 * samples))


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    half_width: float
    samples: int
    seed: int

    def to_json(self) -> dict:
        return {"estimate": self.estimate, "half_width": self.half_width,
                "samples": self.samples, "seed": self.seed}


def monte_carlo_return(
    g: WeightedGraph, x: int, t: int, samples: int, seed: int, *, jobs: int = 1, kernels=None
) -> MonteCarloResult:
    """Fraction of ``samples`` lazy walks from ``x`` that sit at ``x`` after ``t`` steps.

    Walks are split into fixed-size chunks, each with its own spawned
    sub-seed, so the estimate does not depend on ``jobs``.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if t < 0:
        raise ValueError("t must be nonnegative")
    g.require_connected()
    if t == 0:
        return MonteCarloResult(1.0, 0.0, samples, seed)
    per_chunk = max(1, min(CHUNK_WALKS, (1 << 22) // t))
    sizes = [per_chunk] * (samples // per_chunk)
    if samples % per_chunk:
        sizes.append(samples % per_chunk)
    children = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(i: int) -> int:
        rng = np.random.Generator(np.random.Philox(children[i]))
        u = rng.random(sizes[i] * t)
        ends = simulate_lazy_walks(g, np.full(sizes[i], x), np.full(sizes[i], t), u, kernels=kernels)
        return int(np.count_nonzero(ends == x))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            hits = sum(pool.map(run, range(len(sizes))))
    else:
        hits = sum(run(i) for i in range(len(sizes)))
    return MonteCarloResult(hits / samples, hoeffding_half_width(samples), samples, seed)


# --- mixing times ------------------------------------------------------------


def _check_eps(eps: float) -> None:
    if not eps > 0:
        raise ValueError("epsilon must be positive")


def _first_passing(ok, limit: int) -> int:
    """Smallest ``t`` in ``[0, limit]`` with ``ok(t)`` for a monotone predicate."""
    if ok(0):
        return 0
    hi = 1
    while not ok(hi):
        if hi >= limit:
            raise ConvergenceError(f"no passing time up to {limit}")
        hi = min(2 * hi, limit)
    lo = hi // 2
    # ok(lo) is false and ok(hi) true
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def scan_limit(g: WeightedGraph) -> int:
    return 16 * g.n ** 3


def linf_distance(k: WalkKernel, t: int) -> tuple[float, tuple[int, int]]:
    """``max_{x,y} |p_t(x,y)/pi(y) - 1|`` and a pair attaining it."""
    dev = np.abs(k.power(t) / k.pi[None, :] - 1.0)
    idx = np.unravel_index(int(dev.argmax()), dev.shape)
    return float(dev[idx]), (int(idx[0]), int(idx[1]))


def l2_excess(k: WalkKernel, t: int) -> float:
    """``max_x p_{2t}(x,x)/pi(x) - 1`` from the matrix power."""
    return float(np.max(np.diag(k.power(2 * t)) / k.pi) - 1.0)


def linf_mixing_time(k: WalkKernel, epsilon: float) -> int:
    _check_eps(epsilon)
    return _first_passing(lambda t: linf_distance(k, t)[0] <= epsilon + ROUNDING_GUARD,
                          scan_limit(k.graph))


def l2_mixing_time(k: WalkKernel, epsilon: float) -> int:
    _check_eps(epsilon)
    return _first_passing(lambda t: l2_excess(k, t) <= epsilon ** 2 + ROUNDING_GUARD,
                          scan_limit(k.graph))


@dataclass(frozen=True)
class MixingReport:
    epsilon: float
    tau_2: int
    tau_2_sqrt: int
    tau_inf: int
    witness: tuple[int, int] | None

    def to_json(self) -> dict:
        return {"epsilon": self.epsilon, "tau_2": self.tau_2, "tau_2_sqrt_eps": self.tau_2_sqrt,
                "tau_inf": self.tau_inf, "witness": list(self.witness) if self.witness else None}


def mixing_report(k: WalkKernel, epsilon: float) -> MixingReport:
    """``tau_2(eps)``, ``tau_2(sqrt eps)``, ``tau_inf(eps)`` and the worst pair one step earlier."""
    t_inf = linf_mixing_time(k, epsilon)
    witness = linf_distance(k, t_inf - 1)[1] if t_inf > 0 else None
    return MixingReport(epsilon, l2_mixing_time(k, epsilon), l2_mixing_time(k, math.sqrt(epsilon)),
                        t_inf, witness)


def continuous_l2_mixing_time(k: WalkKernel, epsilon: float, rel_tol: float = 1e-12) -> float:
    """Least ``t`` with ``max_x q_{2t}(x,x)/pi(x) <= 1 + eps^2``, by bisection.

    Returns the upper end of the final bracket, so the value never
    undershoots the true time by more than rounding.
    """
    _check_eps(epsilon)
    target = epsilon ** 2

    def excess(t: float) -> float:
        return float(np.max(k.return_excess(2.0 * t, heat=True) / k.pi))

    if excess(0.0) <= target:
        return 0.0
    hi = 1.0
    while excess(hi) > target:
        hi *= 2.0
        if hi > 1e18:
            raise ConvergenceError("continuous mixing time diverges")
    lo = 0.0
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if excess(mid) <= target:
            hi = mid
        else:
            lo = mid
    return hi


def measure_return_bounds(k: WalkKernel, x: int, delta: float) -> tuple[float, float | None, float]:
    """``(mu*_x(delta), 2e(p_floor(2/delta)(x,x) - pi(x)), e(q_{1/delta}(x,x) - pi(x)))``.

    The discrete right side is ``None`` when ``delta > 1``.
    """
    if not 0.0 < delta <= 2.0:
        raise ValueError("delta must lie in (0, 2]")
    lhs = float(vertex_measures(k.spectrum, delta)[1][x])
    disc = None
    if delta <= 1.0:
        disc = 2.0 * math.e * float(k.return_excess(math.floor(2.0 / delta))[x])
    cont = math.e * float(k.return_excess(1.0 / delta, heat=True)[x])
    return lhs, disc, cont
