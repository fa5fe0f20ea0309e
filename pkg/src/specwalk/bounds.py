"""Check eigenvalue, spectral-measure, return-probability and mixing-time
inequalities against exact spectra, and evaluate the explicit growth constants.

Every check produces :class:`BoundRow` records holding both sides of the
inequality.  Per-vertex checks keep only the worst vertex for each parameter
value, recorded in the row parameters as ``x``.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import EmbeddingError
from .graph import WeightedGraph, all_distances
from .resistance import commute_times, resistance_diameter
from .spectral import (Spectrum, ball_selection, embedding_energy, graph_measure, graph_spectrum,
                       spectral_embedding, vertex_measures)
from .walk import (ROUNDING_GUARD, WalkKernel, continuous_l2_mixing_time, linf_mixing_time)

SCHEMA = "specwalk.bounds/1"
RETURN_TIMES = tuple(2 ** i for i in range(11))
ALPHAS = (0.25, 0.5, 0.75)
GRID_POINTS = 64
EIGEN_CLEARANCE = 1e-6

# Finite-n slack for the asymptotic sharpness checks, chosen after computing
# the exact spectra of the corpus members.
BARBELL_SLACK = 60.0
CLIQUE_CYCLE_SLACK = 40.0
CYCLE_MIXING_SLACK = 40.0


# --- gamma and growth constants ------------------------------------------------


def gamma_function(z: float) -> float:
    if not z > 0:
        raise ValueError("gamma_function needs z > 0")
    return math.gamma(z)


@dataclass(frozen=True)
class GrowthConstants:
    """Constants of the growth-condition bounds; ``None`` where inputs were not given.

    ``C_vertex`` and ``C_vertex_return`` need ``(a >= 1, c)``;
    ``C_transitive`` and ``C_transitive_return`` need ``(a, C, d)``;
    ``c3`` and ``c4`` need ``(0 < a <= 1, c2, d)``.
    """

    a: float
    C_vertex: float | None = None
    C_vertex_return: float | None = None
    C_transitive: float | None = None
    C_transitive_return: float | None = None
    c3: float | None = None
    c4: float | None = None
    gamma_values: dict = field(default_factory=dict)


def growth_constants(
    a: float,
    *,
    c: float | None = None,
    C: float | None = None,
    d: float | None = None,
    c2: float | None = None,
) -> GrowthConstants:
    if not a > 0:
        raise ValueError("a must be positive")
    for name, v in (("c", c), ("C", C), ("d", d), ("c2", c2)):
        if v is not None and not v > 0:
            raise ValueError(f"{name} must be positive")
    gammas: dict = {}
    out: dict = {}
    if c is not None:
        if a < 1:
            raise ValueError("polynomial growth needs a >= 1")
        e = a / (a + 1)
        out["C_vertex"] = 1.5 ** e * (a + 1) ** 2 / (c ** (1 / (a + 1)) * a * a)
        gammas[e] = gamma_function(e)
        out["C_vertex_return"] = 3 ** e * (a + 1) / (c ** (1 / (a + 1)) * a) * gammas[e]
    if C is not None and d is not None:
        out["C_transitive"] = (a + 2) ** (a + 2) * (2 * d) ** (a / 2) / (4 * C * a ** a)
        gammas[a / 2] = gamma_function(a / 2)
        out["C_transitive_return"] = ((a + 2) ** (a + 2) * (4 * d) ** (a / 2)
                                      / (8 * C * a ** (a - 1)) * gammas[a / 2])
    if c2 is not None and d is not None:
        if a > 1:
            raise ValueError("super-polynomial growth needs 0 < a <= 1")
        out["c3"] = c2 * (8 * d) ** (-a / 2)
        out["c4"] = (c2 ** (2 / a) / (8 * a * d)) ** (a / (a + 2))
    return GrowthConstants(a=a, gamma_values=gammas, **out)


# --- report structures ---------------------------------------------------------


@dataclass
class BoundRow:
    check: str
    statement: str
    params: dict
    lhs: float | None
    rhs: float | None
    margin: float | None
    passed: bool | None  # None: not applicable to this graph

    def to_json(self) -> dict:
        return asdict(self)


def _holds(lhs: float, rhs: float, strict: bool) -> bool:
    guard = ROUNDING_GUARD * max(1.0, abs(rhs))
    return lhs < rhs + guard if strict else lhs <= rhs + guard


def _row(check, statement, lhs, rhs, strict=False, **params) -> BoundRow:
    lhs, rhs = float(lhs), float(rhs)
    return BoundRow(check, statement, params, lhs, rhs, rhs - lhs, _holds(lhs, rhs, strict))


def _ge_row(check, statement, lhs, rhs, strict=False, **params) -> BoundRow:
    """Row for ``lhs >= rhs`` (or ``>``), stored with margin ``lhs - rhs``."""
    lhs, rhs = float(lhs), float(rhs)
    ok = _holds(rhs, lhs, strict)
    return BoundRow(check, statement, params, lhs, rhs, lhs - rhs, ok)


def _na(check, statement, reason) -> BoundRow:
    return BoundRow(check, statement, {"reason": reason}, None, None, None, None)


def _worst_vertex(check, statement, lhs, rhs, strict=False, mask=None, **params) -> BoundRow | None:
    lhs, rhs = np.asarray(lhs, float), np.asarray(rhs, float)
    idx = np.arange(len(lhs)) if mask is None else np.flatnonzero(mask)
    if idx.size == 0:
        return None
    margin = rhs[idx] - lhs[idx]
    x = int(idx[int(np.argmin(margin))])
    return _row(check, statement, lhs[x], rhs[x], strict, x=x, **params)


@dataclass
class BoundReport:
    graph: dict
    rows: list[BoundRow]
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed is not False for r in self.rows)

    def failures(self) -> list[BoundRow]:
        return [r for r in self.rows if r.passed is False]

    def checks(self) -> set[str]:
        return {r.check for r in self.rows}

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "graph": self.graph,
            "passed": self.passed,
            "rows": [r.to_json() for r in self.rows],
            "seconds": self.seconds,
            "notes": self.notes,
        }

    def to_table(self) -> str:
        head = f"{'check':<28} {'params':<34} {'lhs':>12} {'rhs':>12} {'margin':>12}  result"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            p = ",".join(f"{k}={_fmt(v)}" for k, v in r.params.items())
            res = "n/a" if r.passed is None else ("pass" if r.passed else "FAIL")
            lines.append(f"{r.check:<28} {p[:34]:<34} {_fmt(r.lhs):>12} {_fmt(r.rhs):>12} "
                         f"{_fmt(r.margin):>12}  {res}")
        fails = len(self.failures())
        lines.append(f"{len(self.rows)} rows, {fails} failing")
        return "\n".join(lines)


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


# --- grids -----------------------------------------------------------------


def delta_grid(s: Spectrum, points: int = GRID_POINTS, lo: float = 1e-6, hi: float = 1.99) -> np.ndarray:
    """Log-spaced thresholds in ``(0, 2)``, each moved at least ``1e-6`` off every eigenvalue."""
    lam = s.eigenvalues
    out = []
    for d in np.geomspace(lo, hi, points):
        for _ in range(len(lam) + 1):
            near = np.abs(lam - d) < EIGEN_CLEARANCE
            if not near.any():
                break
            d = float(lam[near].max()) + 2 * EIGEN_CLEARANCE
        out.append(min(d, 2.0 - EIGEN_CLEARANCE))
    return np.array(out)


def _clear_below(s: Spectrum, d: float) -> float:
    """Largest value ``<= d`` at least ``1e-6`` below every nearby eigenvalue."""
    lam = s.eigenvalues
    for _ in range(len(lam) + 1):
        near = np.abs(lam - d) < EIGEN_CLEARANCE
        if not near.any():
            break
        d = float(lam[near].min()) - 2 * EIGEN_CLEARANCE
    return d


# --- individual checks -----------------------------------------------------------


class _Context:
    """Quantities shared by several checks, computed once per graph."""

    def __init__(self, g: WeightedGraph, s: Spectrum, points: int):
        self.g = g
        self.s = s
        self.n = g.n
        self.unweighted = g.unit_weight
        self.heavy = all(w >= 1.0 for _, _, w in g.edges)
        self.regular = g.is_regular
        self.grid = delta_grid(s, points)
        self.pi = g.degrees / g.vol_total
        self._kernel = None
        self._dist = None

    @property
    def kernel(self) -> WalkKernel:
        if self._kernel is None:
            self._kernel = WalkKernel(self.g, self.s)
        return self._kernel

    @property
    def dist(self) -> np.ndarray:
        if self._dist is None:
            self._dist = all_distances(self.g)
        return self._dist


def check_eigenvalue_lower_bounds(g: WeightedGraph, s: Spectrum, ctx: _Context | None = None) -> list[BoundRow]:
    ctx = ctx or _Context(g, s, GRID_POINTS)
    n, lam = g.n, s.eigenvalues
    rows: list[BoundRow] = []
    _, t_star = commute_times(g)
    rows.append(_ge_row("lambda2_commute", "lambda_2 >= 2 / t_commute_max", lam[1], 2.0 / t_star))
    if not ctx.unweighted:
        for name, st in (("eigen_cubic", "lambda_k > (k-1)^3 / (3200 n^3)"),
                         ("eigen_cubic_measure", "mu*((k-1)^3/(3200 n^3)) <= (k-2)/n"),
                         ("lambda2_unweighted", "lambda_2 >= 2 / (n (n-1)^2)")):
            rows.append(_na(name, st, "weighted graph"))
        return rows
    rows.append(_ge_row("lambda2_unweighted", "lambda_2 >= 2 / (n (n-1)^2)", lam[1],
                        2.0 / (n * (n - 1) ** 2)))
    for k in range(2, n + 1):
        bound = (k - 1) ** 3 / (3200.0 * n ** 3)
        rows.append(_ge_row("eigen_cubic", "lambda_k > (k-1)^3 / (3200 n^3)", lam[k - 1], bound,
                            strict=True, k=k))
        rows.append(_row("eigen_cubic_measure", "mu*((k-1)^3/(3200 n^3)) <= (k-2)/n",
                         graph_measure(s, bound)[1], (k - 2) / n, k=k))
    if ctx.regular:
        for k in range(2, n + 1):
            rows.append(_ge_row("eigen_regular_quadratic", "lambda_k >= (k-1)^2 / (100 n^2)",
                                lam[k - 1], (k - 1) ** 2 / (100.0 * n ** 2), k=k))
    return rows


def _growth_rows(ctx: _Context, mu_star_at) -> list[BoundRow]:
    """``mu*_x(delta) <= 4 w(x) / vol(x, r)`` at the largest admissible ``delta``."""
    g, s = ctx.g, ctx.s
    rows = []
    dist = ctx.dist
    w = g.degrees
    for x in range(g.n):
        ecc = int(dist[x].max())
        for r in range(1, ecc + 1):
            vol = float(w[dist[x] <= r].sum())
            d = _clear_below(s, 1.0 / (r * vol))
            if d <= 0:
                continue
            rows.append(_row("growth_vertex_measure",
                             "mu*_x(delta) <= 4 w(x) / vol(x, r) for delta <= 1/(r vol(x, r))",
                             mu_star_at(d)[x], 4.0 * w[x] / vol, x=x, r=r, delta=d))
    # keep the worst vertex per radius
    worst: dict[int, BoundRow] = {}
    for row in rows:
        r = row.params["r"]
        if r not in worst or row.margin < worst[r].margin:
            worst[r] = row
    return [worst[r] for r in sorted(worst)]


def check_measure_upper_bounds(g: WeightedGraph, s: Spectrum, ctx: _Context | None = None) -> list[BoundRow]:
    ctx = ctx or _Context(g, s, GRID_POINTS)
    rows: list[BoundRow] = []
    cache: dict[float, np.ndarray] = {}

    def mu_star_at(d: float) -> np.ndarray:
        if d not in cache:
            cache[d] = vertex_measures(s, d)[1]
        return cache[d]

    r_vertex, _ = resistance_diameter(g)
    for d in ctx.grid:
        d = float(d)
        star = mu_star_at(d)
        if ctx.unweighted:
            rows.append(_row("measure_cubic", "mu*(delta) < 14.8 delta^(1/3)",
                             graph_measure(s, d)[1], 14.8 * d ** (1 / 3), strict=True, delta=d))
        if ctx.unweighted and ctx.regular:
            rows.append(_worst_vertex("measure_regular_sqrt", "mu*_x(delta) < 10 sqrt(delta)",
                                      star, np.full(g.n, 10 * math.sqrt(d)), strict=True, delta=d))
        if ctx.heavy:
            # only meaningful where F(x) is nonzero; the bound fails trivially when mu*_x = 0
            row = _worst_vertex("measure_resistance",
                                "mu*_x(delta) + pi(x) <= R_diam(x) delta w(x) where mu*_x(delta) > 0",
                                star + ctx.pi, r_vertex * d * g.degrees, mask=star > 1e-10, delta=d)
            if row is not None:
                rows.append(row)
    if not ctx.unweighted:
        rows.append(_na("measure_cubic", "mu*(delta) < 14.8 delta^(1/3)", "weighted graph"))
    if ctx.heavy:
        rows.extend(_growth_rows(ctx, mu_star_at))
    else:
        rows.append(_na("growth_vertex_measure", "mu*_x(delta) <= 4 w(x) / vol(x, r)", "edge weight < 1"))
    return rows


def check_mixing_and_return_bounds(g: WeightedGraph, s: Spectrum, ctx: _Context | None = None) -> list[BoundRow]:
    ctx = ctx or _Context(g, s, GRID_POINTS)
    k = ctx.kernel
    n = g.n
    rows: list[BoundRow] = []
    t_vertex, t_star = commute_times(g)
    tau = linf_mixing_time(k, 0.25)
    rows.append(_row("mixing_commute", "tau_inf(1/4) <= 2 ceil(4 t_commute_max)", tau,
                     2 * math.ceil(4 * t_star - 1e-9)))
    if ctx.unweighted:
        _, r_diam = resistance_diameter(g)
        rows.append(_row("mixing_edges", "tau_inf(1/4) <= 2 ceil(8 |E| R_diam)", tau,
                         2 * math.ceil(8 * g.m * r_diam - 1e-9)))
        rows.append(_row("mixing_cubic", "tau_inf(1/4) <= 8 n^3", tau, 8 * n ** 3))
        if ctx.regular:
            rows.append(_row("mixing_regular", "tau_inf(1/4) <= 24 n^2", tau, 24 * n ** 2))
    else:
        rows.append(_na("mixing_cubic", "tau_inf(1/4) <= 8 n^3", "weighted graph"))
    for t in RETURN_TIMES:
        excess = k.return_excess(t)
        rows.append(_worst_vertex("return_commute", "p_t(x,x)/pi(x) - 1 < 2 t_commute(x) / t",
                                  excess / ctx.pi, 2.0 * t_vertex / t, strict=True, t=t))
        if ctx.unweighted:
            rows.append(_row("return_average", "(sum_x p_t(x,x) - 1)/n < 17 / t^(1/3)",
                             float(excess.sum()) / n, 17.0 / t ** (1 / 3), strict=True, t=t))
            if ctx.regular:
                rows.append(_worst_vertex("return_regular", "p_t(x,x) - pi(x) < 13 / sqrt(t)",
                                          excess, np.full(n, 13.0 / math.sqrt(t)), strict=True, t=t))
    if not ctx.unweighted:
        rows.append(_na("return_average", "(sum_x p_t(x,x) - 1)/n < 17 / t^(1/3)", "weighted graph"))
    return rows


def check_reverse_return_bounds(g: WeightedGraph, s: Spectrum, ctx: _Context | None = None) -> list[BoundRow]:
    """Measure bounded by return-probability excess at time ``~1/delta``."""
    ctx = ctx or _Context(g, s, GRID_POINTS)
    k = ctx.kernel
    rows = []
    for d in ctx.grid:
        d = float(d)
        star = vertex_measures(s, d)[1]
        if d <= 1.0:
            rows.append(_worst_vertex("reverse_return_discrete",
                                      "mu*_x(delta) < 2e (p_floor(2/delta)(x,x) - pi(x))",
                                      star, 2 * math.e * k.return_excess(math.floor(2.0 / d)),
                                      strict=True, delta=d))
        rows.append(_worst_vertex("reverse_return_heat", "mu*_x(delta) <= e (q_{1/delta}(x,x) - pi(x))",
                                  star, math.e * k.return_excess(1.0 / d, heat=True), delta=d))
    return rows


def ball_counts(g: WeightedGraph, dist: np.ndarray | None = None) -> np.ndarray:
    """``N(r)`` around vertex 0 for ``r = 0..diam(0)``."""
    dist = all_distances(g) if dist is None else dist
    row = dist[0]
    return np.array([int(np.count_nonzero(row <= r)) for r in range(int(row.max()) + 1)])


def polynomial_growth_constant(counts: np.ndarray, a: float) -> float:
    """Largest ``C`` with ``N(r) >= C r^a`` for every real ``0 < r <= diam``.

    ``N`` is constant on ``[m, m+1)``, so the binding ratio on that interval
    is ``N(m) / (m+1)^a``.
    """
    m = np.arange(len(counts) - 1)
    return float(np.min(counts[:-1] / (m + 1.0) ** a))


def check_transitive_bounds(g: WeightedGraph, s: Spectrum, ctx: _Context | None = None) -> list[BoundRow]:
    ctx = ctx or _Context(g, s, GRID_POINTS)
    if not g.transitive:
        return [_na("transitive_ball", "mu*(delta) <= 1/((1-a)^2 N(a/sqrt(2 w delta)))",
                    "not declared vertex-transitive")]
    rows: list[BoundRow] = []
    w = float(g.degrees[0])
    counts = ball_counts(g, ctx.dist)
    diam = len(counts) - 1
    rows.append(_ge_row("transitive_gap", "lambda_2 >= 1 / (2 w diam^2)", s.eigenvalues[1],
                        1.0 / (2 * w * diam ** 2)))
    poly = None
    if g.unit_weight and g.growth_dim:
        a = float(g.growth_dim)
        c_fit = polynomial_growth_constant(counts, a)
        poly = (a, c_fit, growth_constants(a, C=c_fit, d=w).C_transitive)
    for d in ctx.grid:
        d = float(d)
        star = vertex_measures(s, d)[1]
        spread = float(star.max() - star.min())
        rows.append(_row("transitive_equal_measure", "max_x mu*_x(delta) - min_x mu*_x(delta) <= 1e-9",
                         spread, 1e-9, delta=d))
        mu_star = graph_measure(s, d)[1]
        if ctx.heavy:
            for alpha in ALPHAS:
                radius = alpha / math.sqrt(2 * w * d)
                ball = int(counts[min(int(math.floor(radius)), diam)])
                rows.append(_row("transitive_ball", "mu*(delta) <= 1/((1-a)^2 N(a/sqrt(2 w delta)))",
                                 mu_star, 1.0 / ((1 - alpha) ** 2 * ball), delta=d, alpha=alpha,
                                 radius=radius))
        if poly is not None:
            a, c_fit, c_prime = poly
            rows.append(_row("transitive_poly_growth", "mu*_x(delta) <= C' delta^(a/2)",
                             float(star.max()), c_prime * d ** (a / 2), delta=d, a=a, C=c_fit))
    return rows


def check_regular_volume_growth(g: WeightedGraph, ctx: _Context | None = None) -> list[BoundRow]:
    """``vol(x, r) >= d^2 r / 3`` for ``1 <= r <= diam(x)`` on unweighted regular graphs."""
    if not (g.unit_weight and g.is_regular):
        return []
    ctx = ctx or _Context(g, graph_spectrum(g), GRID_POINTS)
    dist = ctx.dist
    d = float(g.degrees[0])
    worst: dict[int, BoundRow] = {}
    for x in range(g.n):
        for r in range(1, int(dist[x].max()) + 1):
            vol = d * int(np.count_nonzero(dist[x] <= r))
            row = _ge_row("regular_volume_growth", "vol(x, r) >= d^2 r / 3", vol, d * d * r / 3, x=x, r=r)
            if r not in worst or row.margin < worst[r].margin:
                worst[r] = row
    return [worst[r] for r in sorted(worst)]


def check_ball_energy(g: WeightedGraph, s: Spectrum, ctx: _Context | None = None) -> list[BoundRow]:
    """Half-ball energies from greedy ball selection at each distinct nonzero eigenvalue."""
    ctx = ctx or _Context(g, s, GRID_POINTS)
    if not ctx.unweighted:
        return [_na("ball_energy", "sum_i E(B_i) <= 2 delta n mu*(delta)", "weighted graph")]
    rows = []
    levels = np.unique(np.round(s.eigenvalues[1:], 9))
    for lam in levels:
        d = float(min(lam, 2.0))
        emb = spectral_embedding(s, g, d)
        mu_star = graph_measure(s, d)[1]
        try:
            sel = ball_selection(g, emb)
        except EmbeddingError as exc:
            rows.append(BoundRow("ball_energy", "ball selection completes", {"delta": d, "error": str(exc)},
                                 None, None, None, False))
            continue
        total = sum(embedding_energy(g, emb, vertices=b) for b in sel.half_balls)
        rows.append(_row("ball_energy", "sum_i E(B_i) <= 2 delta n mu*(delta)", total,
                         2 * d * g.n * mu_star, delta=d, k=sel.k))
    return rows


def check_sharpness(g: WeightedGraph, s: Spectrum, ctx: _Context | None = None) -> list[BoundRow]:
    """Finite-n versions of the families showing the bounds are attained."""
    n = g.n
    kind, _, args = (g.family or "").partition("(")
    rows = []
    if kind == "barbell":
        rows.append(_row("sharp_barbell", f"lambda_2 n^3 <= {BARBELL_SLACK:g}", s.eigenvalues[1] * n ** 3,
                         BARBELL_SLACK, slack=BARBELL_SLACK))
    elif kind == "clique_cycle":
        k = int(args.rstrip(")").split(",")[1])
        rows.append(_row("sharp_clique_cycle", f"lambda_k n^3 / k^3 <= {CLIQUE_CYCLE_SLACK:g}",
                         s.eigenvalues[k - 1] * n ** 3 / k ** 3, CLIQUE_CYCLE_SLACK, k=k,
                         slack=CLIQUE_CYCLE_SLACK))
    elif kind == "cycle" and n >= 4:
        ctx = ctx or _Context(g, s, GRID_POINTS)
        rows.append(_ge_row("sharp_cycle_mixing", f"tau_inf(1/4) >= n^2 / {CYCLE_MIXING_SLACK:g}",
                            linf_mixing_time(ctx.kernel, 0.25), n * n / CYCLE_MIXING_SLACK,
                            slack=CYCLE_MIXING_SLACK))
    return rows


@dataclass(frozen=True)
class LogSobolevBracket:
    lower: float
    upper: float
    entropy_lower: float
    entropy_upper: float
    tau2_continuous: float


def log_sobolev_bracket(g: WeightedGraph, s: Spectrum | None = None) -> LogSobolevBracket:
    """Bracket ``1/(2 tau_2(1/e)) <= rho <= lambda_2/2`` using the continuous-time walk;
    the entropy constant lies in ``[4 * lower, 2 lambda_2]``."""
    s = s if s is not None else graph_spectrum(g)
    tau = continuous_l2_mixing_time(WalkKernel(g, s), 1.0 / math.e)
    lower = 1.0 / (2.0 * tau)
    lam2 = float(s.eigenvalues[1])
    return LogSobolevBracket(lower, lam2 / 2.0, 4.0 * lower, 2.0 * lam2, tau)


def describe(g: WeightedGraph) -> dict:
    return {
        "family": g.family, "n": g.n, "m": g.m, "unweighted": g.unit_weight,
        "regular": g.is_regular, "transitive": g.transitive, "growth_dim": g.growth_dim,
    }


def run_bound_suite(
    g: WeightedGraph, s: Spectrum | None = None, *, points: int = GRID_POINTS, sharpness: bool = True
) -> BoundReport:
    """Run every check that applies to ``g`` and collect the rows in a fixed order."""
    start = time.perf_counter()
    g.require_connected()
    s = s if s is not None else graph_spectrum(g)
    ctx = _Context(g, s, points)
    rows = []
    rows += check_eigenvalue_lower_bounds(g, s, ctx)
    rows += check_measure_upper_bounds(g, s, ctx)
    rows += check_mixing_and_return_bounds(g, s, ctx)
    rows += check_reverse_return_bounds(g, s, ctx)
    rows += check_transitive_bounds(g, s, ctx)
    rows += check_regular_volume_growth(g, ctx)
    rows += check_ball_energy(g, s, ctx)
    if sharpness:
        rows += check_sharpness(g, s, ctx)
    br = log_sobolev_bracket(g, s)
    rows.append(_row("log_sobolev_bracket", "1/(2 tau_2_cont(1/e)) <= lambda_2 / 2", br.lower, br.upper,
                     tau2_continuous=br.tau2_continuous))
    notes = []
    if g.transitive:
        notes.append("transitivity is declared by the generator; ball radii are floored to hop counts")
    return BoundReport(describe(g), rows, time.perf_counter() - start, notes)
