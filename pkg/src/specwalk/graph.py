"""Finite simple weighted graphs: construction, edge-list I/O, family generators,
and hop-metric primitives (distances, balls, diameter, stationary law).

Vertices are the dense integers ``0..n-1``.  Neighbor lists are sorted by id so
every downstream algorithm is reproducible.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DisconnectedGraphError, GraphError, ParseError

Edge = tuple[int, int, float]


class WeightedGraph:
    """Immutable finite simple undirected graph with positive edge weights.

    Disconnected graphs can be built (``connected`` is False) so that
    operations needing connectivity can reject them via :meth:`require_connected`.
    ``family``, ``transitive`` and ``growth_dim`` are declared by the generators;
    nothing here tries to detect vertex-transitivity.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[Sequence],
        *,
        family: str | None = None,
        transitive: bool = False,
        growth_dim: int | None = None,
    ):
        if int(n) != n or n < 1:
            raise GraphError(f"vertex count must be a positive integer, got {n!r}")
        n = int(n)
        seen: dict[tuple[int, int], float] = {}
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = 1.0
            else:
                u, v, w = e
            u, v, w = _check_edge(n, u, v, w)
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge {key[0]}-{key[1]}")
            seen[key] = w
        self.n = n
        self.edges: tuple[Edge, ...] = tuple((u, v, w) for (u, v), w in sorted(seen.items()))
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)
        deg = np.zeros(n)
        for u, v, w in self.edges:
            deg[u] += w
            deg[v] += w
        deg.flags.writeable = False
        self.degrees = deg
        self.vol_total = float(deg.sum())
        self.unit_weight = all(w == 1.0 for _, _, w in self.edges)
        self.connected = n == 1 or (_component_size(self.adjacency, 0) == n and len(self.edges) > 0)
        self.family = family
        self.transitive = transitive
        self.growth_dim = growth_dim

    # --- basic views -----------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, x: int) -> float:
        return float(self.degrees[x])

    def neighbors(self, x: int) -> list[int]:
        return [y for y, _ in self.adjacency[x]]

    @cached_property
    def is_regular(self) -> bool:
        return bool(np.all(self.degrees == self.degrees[0]))

    def require_connected(self) -> None:
        if not self.connected:
            raise DisconnectedGraphError("operation requires a connected graph")
        if self.n < 2:
            raise DisconnectedGraphError("operation requires at least one edge")

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            a[u, v] = a[v, u] = w
        return a

    def laplacian_matrix(self) -> np.ndarray:
        """Combinatorial Laplacian ``D - A``."""
        return np.diag(self.degrees) - self.adjacency_matrix()

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(indptr, indices, weights)`` with neighbors in ascending id order."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(a) for a in self.adjacency])
        indices = np.fromiter((y for a in self.adjacency for y, _ in a), dtype=np.int64, count=int(indptr[-1]))
        weights = np.fromiter((w for a in self.adjacency for _, w in a), dtype=np.float64, count=int(indptr[-1]))
        return indptr, indices, weights

    def without_edge(self, u: int, v: int) -> "WeightedGraph":
        key = (min(u, v), max(u, v))
        rest = [e for e in self.edges if (e[0], e[1]) != key]
        if len(rest) == len(self.edges):
            raise GraphError(f"no edge {u}-{v}")
        return WeightedGraph(self.n, rest)

    def edge_set(self) -> set[Edge]:
        return set(self.edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeightedGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        tag = f" {self.family}" if self.family else ""
        return f"<WeightedGraph{tag} n={self.n} m={self.m}>"


def _check_edge(n: int, u, v, w) -> Edge:
    try:
        u_i, v_i = int(u), int(v)
    except (TypeError, ValueError):
        raise GraphError(f"vertex ids must be integers, got {u!r}, {v!r}") from None
    if u_i != u or v_i != v:
        raise GraphError(f"vertex ids must be integers, got {u!r}, {v!r}")
    if not (0 <= u_i < n and 0 <= v_i < n):
        raise GraphError(f"vertex id out of range 0..{n - 1}: {u_i}-{v_i}")
    if u_i == v_i:
        raise GraphError(f"loop at vertex {u_i}")
    w_f = float(w)
    if not math.isfinite(w_f) or w_f <= 0:
        raise GraphError(f"edge {u_i}-{v_i} has nonpositive or non-finite weight {w!r}")
    return u_i, v_i, w_f


def _component_size(adjacency, start: int) -> int:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y, _ in adjacency[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)


# --- edge-list text format ---------------------------------------------------


def parse_edge_list(text: str) -> WeightedGraph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v [w]"`` (0-based ids).

    Blank lines are skipped.  Every error carries the 1-based line number.
    """
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, toks) for i, toks in lines if toks]
    if not lines:
        raise ParseError("empty input", 1)
    hline, header = lines[0]
    if len(header) != 2:
        raise ParseError("header must be 'n m'", hline)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError("header must hold two integers", hline) from None
    if n < 1 or m < 0:
        raise ParseError("header needs n >= 1 and m >= 0", hline)
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else hline)
        raise ParseError(f"expected {m} edge lines, found {len(body)}", where)
    edges: list[Edge] = []
    seen: set[tuple[int, int]] = set()
    for lineno, toks in body:
        if len(toks) not in (2, 3):
            raise ParseError("edge line must be 'u v' or 'u v w'", lineno)
        try:
            u, v = int(toks[0]), int(toks[1])
            w = float(toks[2]) if len(toks) == 3 else 1.0
        except ValueError:
            raise ParseError("malformed number", lineno) from None
        try:
            edge = _check_edge(n, u, v, w)
        except GraphError as exc:
            raise ParseError(str(exc), lineno) from None
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key[0]}-{key[1]}", lineno)
        seen.add(key)
        edges.append(edge)
    return WeightedGraph(n, edges)


def serialize_edge_list(g: WeightedGraph) -> str:
    out = [f"{g.n} {g.m}"]
    for u, v, w in g.edges:
        out.append(f"{u} {v}" if w == 1.0 else f"{u} {v} {w!r}")
    return "\n".join(out) + "\n"


# --- generators --------------------------------------------------------------

FAMILIES = ("cycle", "path", "complete", "star", "barbell", "clique_cycle",
            "torus", "hypercube", "erdos_renyi", "custom")


@dataclass(frozen=True)
class GraphFamilySpec:
    kind: str
    n: int | None = None
    k: int | None = None
    dims: tuple[int, ...] = ()
    p: float | None = None
    seed: int | None = None
    edges: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise GraphError(f"unknown graph family {self.kind!r}")


def generate(spec: GraphFamilySpec) -> WeightedGraph:
    kind = spec.kind
    if kind == "torus":
        return torus(spec.dims)
    if kind == "custom":
        if spec.n is None:
            raise GraphError("custom family needs n")
        return WeightedGraph(spec.n, spec.edges, family="custom")
    if spec.n is None:
        raise GraphError(f"{kind} needs parameter n")
    if kind == "cycle":
        return cycle(spec.n)
    if kind == "path":
        return path(spec.n)
    if kind == "complete":
        return complete(spec.n)
    if kind == "star":
        return star(spec.n)
    if kind == "barbell":
        return barbell(spec.n)
    if kind == "clique_cycle":
        if spec.k is None:
            raise GraphError("clique_cycle needs parameter k")
        return clique_cycle(spec.n, spec.k)
    if kind == "hypercube":
        return hypercube(spec.n)
    if kind == "erdos_renyi":
        if spec.p is None:
            raise GraphError("erdos_renyi needs parameter p")
        return erdos_renyi(spec.n, spec.p, 0 if spec.seed is None else spec.seed)
    raise GraphError(f"unknown graph family {kind!r}")  # pragma: no cover


def parse_family(text: str) -> GraphFamilySpec:
    """Parse ``kind:a,b,...`` (e.g. ``cycle:8``, ``clique_cycle:60,3``, ``torus:8,8``)."""
    kind, _, rest = text.partition(":")
    args = [a for a in rest.replace("x", ",").split(",") if a] if rest else []
    try:
        if kind == "torus":
            return GraphFamilySpec("torus", dims=tuple(int(a) for a in args))
        if kind == "clique_cycle":
            n, k = (int(a) for a in args)
            return GraphFamilySpec(kind, n=n, k=k)
        if kind == "erdos_renyi":
            n, p = int(args[0]), float(args[1])
            seed = int(args[2]) if len(args) > 2 else 0
            return GraphFamilySpec(kind, n=n, p=p, seed=seed)
        (n,) = (int(a) for a in args)
        return GraphFamilySpec(kind, n=n)
    except (ValueError, IndexError):
        raise GraphError(f"bad family spec {text!r}") from None


def cycle(n: int) -> WeightedGraph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return WeightedGraph(n, [(i, (i + 1) % n) for i in range(n)],
                         family=f"cycle({n})", transitive=True, growth_dim=1)


def path(n: int) -> WeightedGraph:
    if n < 2:
        raise GraphError("path needs n >= 2")
    return WeightedGraph(n, [(i, i + 1) for i in range(n - 1)], family=f"path({n})")


def complete(n: int) -> WeightedGraph:
    if n < 2:
        raise GraphError("complete graph needs n >= 2")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return WeightedGraph(n, edges, family=f"complete({n})", transitive=True, growth_dim=1)


def star(leaves: int) -> WeightedGraph:
    """Star with center 0 and ``leaves`` leaves."""
    if leaves < 1:
        raise GraphError("star needs at least one leaf")
    return WeightedGraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)], family=f"star({leaves})")


def _clique_edges(vertices: Sequence[int]) -> list[tuple[int, int]]:
    return [(vertices[i], vertices[j]) for i in range(len(vertices)) for j in range(i + 1, len(vertices))]


def barbell(n: int) -> WeightedGraph:
    """Two cliques on ``floor(n/3)`` vertices joined by a path through the rest."""
    if n < 6:
        raise GraphError("barbell needs n >= 6")
    c = n // 3
    left = list(range(c))
    right = list(range(n - c, n))
    edges = _clique_edges(left) + _clique_edges(right)
    chain = [left[-1], *range(c, n - c), right[0]]
    edges += list(zip(chain, chain[1:]))
    return WeightedGraph(n, edges, family=f"barbell({n})")


def clique_cycle(n: int, k: int) -> WeightedGraph:
    """``k`` cliques of size ``floor(2n/3k)`` joined in a ring by bridges of
    ``floor(n/3k)`` path vertices; leftover vertices extend the last bridge."""
    if k < 2 or not k < n / 6:
        raise GraphError("clique_cycle needs 2 <= k < n/6")
    size = (2 * n) // (3 * k)
    blen = n // (3 * k)
    leftover = n - k * (size + blen)
    cliques = []
    nxt = 0
    for _ in range(k):
        cliques.append(list(range(nxt, nxt + size)))
        nxt += size
    edges = [e for c in cliques for e in _clique_edges(c)]
    for i in range(k):
        count = blen + (leftover if i == k - 1 else 0)
        bridge = list(range(nxt, nxt + count))
        nxt += count
        chain = [cliques[i][-1], *bridge, cliques[(i + 1) % k][0]]
        edges += list(zip(chain, chain[1:]))
    assert nxt == n
    return WeightedGraph(n, edges, family=f"clique_cycle({n},{k})")


def torus(dims: Sequence[int]) -> WeightedGraph:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 3 for d in dims):
        raise GraphError("torus needs at least one dimension, each >= 3")
    n = math.prod(dims)
    idx = np.arange(n).reshape(dims)
    edges = []
    for axis in range(len(dims)):
        shifted = np.roll(idx, -1, axis=axis)
        edges += list(zip(idx.ravel().tolist(), shifted.ravel().tolist()))
    name = "x".join(map(str, dims))
    return WeightedGraph(n, edges, family=f"torus({name})", transitive=True, growth_dim=len(dims))


def hypercube(d: int) -> WeightedGraph:
    if d < 1:
        raise GraphError("hypercube needs dimension >= 1")
    n = 1 << d
    edges = [(x, x ^ (1 << b)) for x in range(n) for b in range(d) if x < x ^ (1 << b)]
    return WeightedGraph(n, edges, family=f"hypercube({d})", transitive=True, growth_dim=d)


def erdos_renyi(n: int, p: float, seed: int, max_tries: int = 1000) -> WeightedGraph:
    """G(n, p) conditioned on connectivity by seeded rejection sampling."""
    if n < 2 or not 0 < p <= 1:
        raise GraphError("erdos_renyi needs n >= 2 and 0 < p <= 1")
    rng = np.random.Generator(np.random.Philox(seed))
    iu, ju = np.triu_indices(n, 1)
    for _ in range(max_tries):
        keep = rng.random(iu.size) < p
        g = WeightedGraph(n, list(zip(iu[keep].tolist(), ju[keep].tolist())),
                          family=f"erdos_renyi({n},{p},{seed})")
        if g.connected:
            return g
    raise GraphError(f"no connected G({n},{p}) sample in {max_tries} tries")


# --- hop metric ----------------------------------------------------------------


def distances_from(g: WeightedGraph, x: int) -> np.ndarray:
    """BFS hop distances from ``x``; weights are ignored.  Unreachable = -1."""
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[x] = 0
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for z, _ in g.adjacency[y]:
            if dist[z] < 0:
                dist[z] = dist[y] + 1
                queue.append(z)
    return dist


def all_distances(g: WeightedGraph) -> np.ndarray:
    return np.stack([distances_from(g, x) for x in range(g.n)])


def ball_volume(g: WeightedGraph, x: int, r: float) -> tuple[int, float]:
    """``(N(x, r), vol(x, r))`` for the hop ball of radius ``floor(r)``."""
    if r < 0:
        raise GraphError("radius must be nonnegative")
    g.require_connected()
    inside = distances_from(g, x) <= math.floor(r)
    return int(inside.sum()), float(g.degrees[inside].sum())


def eccentricity(g: WeightedGraph, x: int) -> int:
    g.require_connected()
    return int(distances_from(g, x).max())


def diameter(g: WeightedGraph) -> int:
    g.require_connected()
    return int(all_distances(g).max())


def stationary(g: WeightedGraph) -> np.ndarray:
    g.require_connected()
    return g.degrees / g.vol_total
