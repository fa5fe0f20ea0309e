"""Time the compiled kernels against the NumPy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from specwalk import _backend
from specwalk import graph as G
from specwalk.spectral import normalized_laplacian
from specwalk.walk import _walk_keys


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    for g in (G.barbell(60), G.torus((8, 8)), G.clique_cycle(120, 4)):
        lap = normalized_laplacian(g)
        yield f"jacobi_eigh {g.family} n={g.n}", lambda k, a=lap: k.jacobi_eigh(a)

    g = G.torus((16, 16))
    indptr, keys, indices = _walk_keys(g)
    walks, steps = 20_000, 64
    rng = np.random.default_rng(0)
    starts = rng.integers(0, g.n, walks)
    lengths = np.full(walks, steps, dtype=np.int64)
    offsets = np.arange(walks, dtype=np.int64) * steps
    u = rng.random(walks * steps)
    yield (f"lazy_walk_ends {walks}x{steps} steps",
           lambda k: k.lazy_walk_ends(indptr, keys, indices, starts, lengths, u, offsets))

    for g in (G.complete(7), G.barbell(9), G.hypercube(3)):
        eu = [e[0] for e in g.edges]
        ev = [e[1] for e in g.edges]
        yield f"count_spanning_trees {g.family}", lambda k, n=g.n, a=eu, b=ev: k.count_spanning_trees(n, a, b)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _backend.compiled is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    py, cy = _backend.get("python"), _backend.get("compiled")
    print(f"{'kernel':<44} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, fn in cases():
        tp = best_of(lambda: fn(py), args.repeat)
        tc = best_of(lambda: fn(cy), args.repeat)
        print(f"{name:<44} {tp:>10.4f} {tc:>11.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
