import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from specwalk import graph as G
from specwalk.errors import ConvergenceError, EmbeddingError
from specwalk.spectral import (ball_selection, eigendecompose, embedding_energy, graph_measure,
                               graph_spectrum, normalized_laplacian, projection, rayleigh_quotient,
                               spectral_embedding, vertex_measure, vertex_measures)

from conftest import connected_graphs


def test_small_spectra():
    assert np.allclose(graph_spectrum(G.cycle(4)).eigenvalues, [0, 1, 1, 2], atol=1e-12)
    assert np.allclose(graph_spectrum(G.complete(4)).eigenvalues, [0, 4 / 3, 4 / 3, 4 / 3], atol=1e-12)
    lam = graph_spectrum(G.star(3)).eigenvalues
    assert np.allclose(lam, [0, 1, 1, 2], atol=1e-12)


@pytest.mark.parametrize("n", [3, 5, 8, 17, 40])
def test_cycle_formula(n):
    expect = np.sort(1 - np.cos(2 * np.pi * np.arange(n) / n))
    assert np.allclose(graph_spectrum(G.cycle(n)).eigenvalues, expect, atol=1e-9)


def test_spectrum_contract():
    s = graph_spectrum(G.barbell(15))
    assert np.all(np.diff(s.eigenvalues) >= 0)
    assert s.eigenvalues[0] == pytest.approx(0, abs=1e-12)
    assert s.residual <= s.residual_tol
    v = s.eigenvectors
    assert np.allclose(v.T @ v, np.eye(s.n), atol=1e-10)
    # gauge: the largest entry of each vector is positive
    idx = np.argmax(np.abs(v), axis=0)
    assert np.all(v[idx, np.arange(s.n)] > 0)


def test_eigendecompose_rejects_non_symmetric():
    with pytest.raises(ValueError):
        eigendecompose(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eigendecompose_reports_nonconvergence():
    a = np.random.default_rng(3).normal(size=(12, 12))
    with pytest.raises(ConvergenceError):
        eigendecompose(a + a.T, max_sweeps=1)


@given(connected_graphs(weighted=True, max_n=14))
def test_spectrum_matches_lapack(g):
    s = graph_spectrum(g)
    ref = np.linalg.eigh(normalized_laplacian(g))[0]
    assert np.allclose(s.eigenvalues, ref, atol=1e-9)
    assert s.eigenvalues[-1] <= 2 + 1e-9
    lap = normalized_laplacian(g)
    assert np.allclose(lap @ s.eigenvectors, s.eigenvectors * s.eigenvalues, atol=1e-9)


@given(st.integers(3, 24))
def test_bipartite_iff_two(n):
    lam_max = graph_spectrum(G.cycle(n)).eigenvalues[-1]
    assert (abs(lam_max - 2) < 1e-9) == (n % 2 == 0)


def test_measure_examples():
    s = graph_spectrum(G.cycle(4))
    assert graph_measure(s, 0.5) == (0.25, 0.0)
    assert graph_measure(s, 1.0) == (0.75, 0.5)
    for x in range(4):
        assert vertex_measure(s, G.cycle(4), x, 1.0)[1] == pytest.approx(0.5)
    with pytest.raises(ValueError):
        vertex_measures(s, 2.5)


def test_threshold_tolerance_is_configurable():
    s = graph_spectrum(G.cycle(4))
    assert graph_measure(s, 1 - 1e-10)[0] == 0.75
    assert graph_measure(s, 1 - 1e-10, tol=0.0)[0] == 0.25


@given(connected_graphs(weighted=True), st.floats(0.0, 2.0))
def test_measures_are_consistent(g, delta):
    s = graph_spectrum(g)
    mu, star = vertex_measures(s, delta)
    gm, gstar = graph_measure(s, delta)
    assert np.all(star >= -1e-12) and np.all(star <= mu + 1e-12) and np.all(mu <= 1 + 1e-9)
    assert np.isclose(star.sum() / g.n, gstar)
    assert np.isclose(mu.sum() / g.n, gm)
    # kernel part of mu_x is pi(x) scaled by n, i.e. w(x)/vol * n / n
    assert np.allclose(mu - star, G.stationary(g), atol=1e-9)


@given(connected_graphs(weighted=True), st.floats(0.0, 2.0))
def test_projection_commutes_with_laplacian(g, delta):
    s = graph_spectrum(g)
    p, lap = projection(s, delta), normalized_laplacian(g)
    assert np.abs(p @ lap - lap @ p).max() <= 1e-8


@given(connected_graphs(max_n=14))
def test_measure_forces_eigenvalue(g):
    # n * mu* counts nonzero eigenvalues <= delta, so the implication needs "<"
    s = graph_spectrum(g)
    gaps = np.unique(np.round(s.eigenvalues, 9))
    grid = [d for d in np.linspace(0.01, 1.99, 25) if np.min(np.abs(gaps - d)) > 1e-6]
    for d in grid:
        star = graph_measure(s, d)[1]
        for k in range(2, g.n + 1):
            if star < (k - 1) / g.n - 1e-12:
                assert s.eigenvalues[k - 1] > d


def test_embedding_examples():
    c4 = G.cycle(4)
    emb = spectral_embedding(graph_spectrum(c4), c4, 1.0)
    assert emb.dims == 2
    assert np.allclose(emb.norms() ** 2, 0.25)
    k4 = G.complete(4)
    emb = spectral_embedding(graph_spectrum(k4), k4, 1.5)
    assert emb.dims == 3
    assert np.allclose((emb.weights[:, None] * emb.coords).sum(axis=0), 0, atol=1e-9)
    b = G.barbell(15)
    s = graph_spectrum(b)
    emb = spectral_embedding(s, b, float(s.eigenvalues[1]))
    assert emb.dims == int(np.sum(np.abs(s.eigenvalues - s.eigenvalues[1]) <= 1e-9))


def test_trivial_embedding():
    c4 = G.cycle(4)
    s = graph_spectrum(c4)
    with pytest.raises(EmbeddingError):
        spectral_embedding(s, c4, 0.5)
    emb = spectral_embedding(s, c4, 0.5, allow_trivial=True)
    assert emb.dims == 0
    assert ball_selection(c4, emb).k == 1


def test_rayleigh_quotient():
    g = G.barbell(15)
    s = graph_spectrum(g)
    assert rayleigh_quotient(g, np.ones(g.n)) == 0
    for j in (1, 4, 14):
        f = s.eigenvectors[:, j] / np.sqrt(g.degrees)
        assert rayleigh_quotient(g, f) == pytest.approx(s.eigenvalues[j], abs=1e-8)
    with pytest.raises(ValueError):
        rayleigh_quotient(g, np.zeros(g.n))


def tent(n, k, i):
    """1 on clique ``i``, falling linearly to 0 across both neighbouring bridges."""
    size, blen = (2 * n) // (3 * k), n // (3 * k)
    leftover = n - k * (size + blen)
    f = np.zeros(n)
    f[i * size:(i + 1) * size] = 1
    start = k * size
    bridges = []
    for j in range(k):
        count = blen + (leftover if j == k - 1 else 0)
        bridges.append(list(range(start, start + count)))
        start += count
    out, back = bridges[i], bridges[(i - 1) % k]
    for pos, v in enumerate(out):
        f[v] = 1 - (pos + 1) / (len(out) + 1)
    for pos, v in enumerate(back):
        f[v] = (pos + 1) / (len(back) + 1)
    return f


def test_tent_function_rayleigh_quotient():
    n, k = 120, 4
    g = G.clique_cycle(n, k)
    scale = 27 * k ** 3 / n ** 3
    for i in range(1, k - 1):
        assert scale / 3 <= rayleigh_quotient(g, tent(n, k, i)) <= 3 * scale


def test_energy_examples():
    c4 = G.cycle(4)
    emb = spectral_embedding(graph_spectrum(c4), c4, 1.0)
    assert embedding_energy(c4, emb, edges=[]) == 0
    assert embedding_energy(c4, emb) <= 1.0 * np.sum(emb.mu_star()) + 1e-12
    assert np.sum(emb.mu_star()) == pytest.approx(2.0)
    k2 = G.complete(2)
    emb2 = spectral_embedding(graph_spectrum(k2), k2, 2.0)
    assert embedding_energy(k2, emb2, vertices=[0]) == 0
    with pytest.raises(ValueError):
        embedding_energy(c4, emb, edges=[(0, 2)])


@given(connected_graphs(weighted=True), st.floats(0.05, 2.0), st.integers(0, 2 ** 32 - 1))
def test_embedding_invariants(g, delta, seed):
    s = graph_spectrum(g)
    emb = spectral_embedding(s, g, delta, allow_trivial=True)
    w = emb.weights
    assert np.allclose((w[:, None] * emb.coords).sum(axis=0), 0, atol=1e-8)
    assert np.allclose(emb.mu_star(), vertex_measures(s, delta)[1], atol=1e-8)
    if emb.dims:
        v = np.random.default_rng(seed).normal(size=emb.dims)
        v /= np.linalg.norm(v)
        assert np.sum(w * (emb.coords @ v) ** 2) == pytest.approx(1.0, abs=1e-8)
        assert embedding_energy(g, emb) <= delta * np.sum(emb.mu_star()) + 1e-8
        for alpha in (0.25, 0.5):
            bound = 1 / (1 - 2 * alpha ** 2) ** 2
            for x in range(g.n):
                ball = emb.ball(x, alpha * emb.norms()[x])
                assert emb.mu_star()[ball].sum() <= bound + 1e-8
        for x in range(g.n):
            if emb.norms()[x] > 1e-9:
                assert len(emb.ball(x, emb.norms()[x])) < g.n


@given(connected_graphs(max_n=14), st.floats(0.05, 2.0))
def test_path_energy_lower_bound(g, delta):
    s = graph_spectrum(g)
    emb = spectral_embedding(s, g, delta, allow_trivial=True)
    if not emb.dims:
        return
    for x in range(g.n):
        r = 0.5 * emb.norms()[x]
        inside = set(emb.ball(x, r).tolist())
        if len(inside) == g.n:
            continue
        # BFS to the nearest vertex outside the ball, then walk back the parents
        parent = {x: None}
        queue = [x]
        end = None
        while queue and end is None:
            nxt = []
            for y in queue:
                for z in g.neighbors(y):
                    if z not in parent:
                        parent[z] = y
                        if z not in inside:
                            end = z
                            break
                        nxt.append(z)
                if end is not None:
                    break
            queue = nxt
        path = [end]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        edges = list(zip(path, path[1:]))
        assert embedding_energy(g, emb, edges=edges) >= r * r / len(edges) - 1e-12


def test_ball_selection_examples():
    c4 = G.cycle(4)
    sel = ball_selection(c4, spectral_embedding(graph_spectrum(c4), c4, 1.0))
    assert sel.k == 2 and len(sel.centers) == 2
    g = G.clique_cycle(60, 3)
    s = graph_spectrum(g)
    emb = spectral_embedding(s, g, float(s.eigenvalues[2]))
    sel = ball_selection(g, emb)
    assert 1 <= sel.k <= 3
    for i in range(sel.k):
        for j in range(i):
            assert not sel.half_balls[i] & sel.half_balls[j]
        assert emb.mu_star()[sorted(sel.balls[i])].sum() <= 4 / 3 + 1e-9
    with pytest.raises(ValueError):
        ball_selection(g, emb, alpha=0.5)


@given(connected_graphs(weighted=True), st.floats(0.05, 2.0))
def test_ball_selection_properties(g, delta):
    s = graph_spectrum(g)
    emb = spectral_embedding(s, g, delta, allow_trivial=True)
    sel = ball_selection(g, emb)
    star = graph_measure(s, delta)[1]
    assert sel.k == math.floor(star * g.n / 2 + 1e-9) + 1
    for i in range(sel.k):
        assert sel.center_measures[i] >= star / 3 - 1e-8
        for j in range(i):
            assert not sel.half_balls[i] & sel.half_balls[j]
