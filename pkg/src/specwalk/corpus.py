"""The reference collection of graphs every bound is checked on."""

from __future__ import annotations

import math

from . import graph as G
from .graph import WeightedGraph

ER_COUNT = 20


def erdos_renyi_members(count: int = ER_COUNT) -> list[WeightedGraph]:
    """Seeded connected G(n, p) graphs with n from 6 to 44 and p near the
    connectivity threshold times 1.5."""
    out = []
    for i in range(count):
        n = 6 + 2 * i
        p = min(1.0, 1.5 * math.log(n) / n)
        out.append(G.erdos_renyi(n, round(p, 4), seed=1000 + i))
    return out


def standard_corpus(max_n: int = 32) -> list[WeightedGraph]:
    """Cycles, paths and complete graphs up to ``max_n`` vertices, barbells,
    clique cycles, an 8x8 torus, the 4-cube and the random graphs."""
    out: list[WeightedGraph] = []
    out += [G.cycle(n) for n in range(3, max_n + 1)]
    out += [G.path(n) for n in range(2, max_n + 1)]
    out += [G.complete(n) for n in range(2, max_n + 1)]
    out += [G.barbell(n) for n in (9, 15, 30, 60)]
    out += [G.clique_cycle(n, k) for n in (60, 120) for k in (3, 4)]
    out += [G.torus((8, 8)), G.hypercube(4)]
    out += erdos_renyi_members()
    return out


def large_graphs() -> list[WeightedGraph]:
    """Unweighted graphs between 64 and 256 vertices."""
    return [G.cycle(256), G.path(128), G.torus((16, 16)), G.hypercube(8), G.barbell(150),
            G.complete(96)]
