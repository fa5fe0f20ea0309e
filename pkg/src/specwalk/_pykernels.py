"""Pure-Python/NumPy fallbacks for the compiled kernels in ``_kernels.pyx``.

Signatures and return conventions match the compiled module exactly.
``lazy_walk_ends`` and ``count_spanning_trees`` return identical results;
``jacobi_eigh`` uses a parallel (round-robin) rotation order, so it agrees
with the compiled solver to rounding rather than bit-for-bit.
"""

from __future__ import annotations

import numpy as np


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a < n and b < n]
        rounds.append((np.array([a for a, _ in pairs]), np.array([b for _, b in pairs])))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def jacobi_eigh(a_in, tol: float = 1e-13, max_sweeps: int = 100):
    a = np.array(a_in, dtype=np.float64, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    frob = np.sqrt(np.sum(a * a))
    if frob == 0.0:
        return np.zeros(n), v, 0
    rounds = _round_robin(n)
    iu = np.triu_indices(n, 1)
    for sweep in range(max_sweeps + 1):
        if np.sqrt(2.0 * np.sum(a[iu] ** 2)) <= tol * frob:
            return np.diag(a).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p, q in rounds:
            apq = a[p, q]
            live = np.abs(apq) >= 1e-300
            if not live.any():
                continue
            p, q, apq = p[live], q[live], apq[live]
            app, aqq = a[p, p], a[q, q]
            theta = (aqq - app) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            safe = np.where(big, 1.0, theta)
            t = np.where(big, 0.5 / np.where(big, theta, 1.0),
                         np.copysign(1.0, safe) / (np.abs(safe) + np.sqrt(safe * safe + 1.0)))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            x, y = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * x - s * y
            a[:, q] = s * x + c * y
            x, y = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * x - s[:, None] * y
            a[q, :] = s[:, None] * x + c[:, None] * y
            a[p, q] = 0.0
            a[q, p] = 0.0
            a[p, p] = app - t * apq
            a[q, q] = aqq + t * apq
            x, y = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * x - s * y
            v[:, q] = s * x + c * y
    return np.diag(a).copy(), v, -1


def lazy_walk_ends(indptr, keys, indices, starts, lengths, uniforms, offsets):
    indptr = np.asarray(indptr, dtype=np.int64)
    keys = np.asarray(keys, dtype=np.float64)
    indices = np.asarray(indices, dtype=np.int64)
    pos = np.array(starts, dtype=np.int64, copy=True)
    lengths = np.asarray(lengths, dtype=np.int64)
    uniforms = np.asarray(uniforms, dtype=np.float64)
    offsets = np.asarray(offsets, dtype=np.int64)
    longest = int(lengths.max()) if lengths.size else 0
    for step in range(longest):
        active = np.flatnonzero(lengths > step)
        u = uniforms[offsets[active] + step]
        moving = u >= 0.5
        walkers = active[moving]
        if walkers.size == 0:
            continue
        x = pos[walkers]
        target = x.astype(np.float64) + (u[moving] - 0.5) * 2.0
        slot = np.searchsorted(keys, target, side="right")
        slot = np.clip(slot, indptr[x], indptr[x + 1] - 1)
        pos[walkers] = indices[slot]
    return pos


def count_spanning_trees(n: int, eu, ev) -> int:
    eu = [int(a) for a in eu]
    ev = [int(b) for b in ev]
    m = len(eu)
    if n == 1:
        return 1
    if m == 0:
        return 0
    parent = list(range(n))
    size = [1] * n

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(idx: int, chosen: int) -> int:
        if chosen == n - 1:
            return 1
        if m - idx < n - 1 - chosen:
            return 0
        total = 0
        ru, rv = find(eu[idx]), find(ev[idx])
        if ru != rv:
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            size[ru] += size[rv]
            total += rec(idx + 1, chosen + 1)
            size[ru] -= size[rv]
            parent[rv] = rv
        return total + rec(idx + 1, chosen)

    return rec(0, 0)
