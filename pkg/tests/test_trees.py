import math
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from specwalk import graph as G
from specwalk.errors import ConvergenceError, GraphError
from specwalk.spectral import Spectrum, graph_spectrum
from specwalk.trees import (GraphOracle, brute_force_tree_count, estimate_log_tau_local,
                            estimator_parameters, harmonic, in_memory_oracle, log_count,
                            log_tau_series_truncated, log_tau_spectral, series_tail,
                            spanning_tree_count_exact)

from conftest import connected_graphs


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_weighted_edges_from(g.edges)
    return h


@pytest.mark.parametrize("n", range(2, 9))
def test_cayley(n):
    assert spanning_tree_count_exact(G.complete(n)) == n ** (n - 2)
    assert brute_force_tree_count(G.complete(n)) == n ** (n - 2)


def test_small_counts():
    assert spanning_tree_count_exact(G.cycle(5)) == 5
    assert spanning_tree_count_exact(G.path(7)) == 1
    assert brute_force_tree_count(G.barbell(9)) == spanning_tree_count_exact(G.barbell(9)) == 9
    assert spanning_tree_count_exact(G.hypercube(3)) == 384


def test_weighted_count_is_exact_fraction():
    g = G.WeightedGraph(3, [(0, 1, 0.5), (1, 2, 2.0), (0, 2, 1.5)])
    # weighted tree sum: 0.5*2 + 0.5*1.5 + 2*1.5
    assert spanning_tree_count_exact(g) == Fraction(19, 4)
    with pytest.raises(GraphError):
        brute_force_tree_count(g)


def test_brute_force_limit():
    with pytest.raises(GraphError):
        brute_force_tree_count(G.cycle(11))


@given(connected_graphs(max_n=9))
def test_three_counts_agree(g):
    exact = spanning_tree_count_exact(g)
    assert brute_force_tree_count(g) == exact
    assert round(nx.number_of_spanning_trees(to_nx(g))) == exact
    assert math.exp(log_tau_spectral(g)) == pytest.approx(exact, rel=1e-9)


@given(connected_graphs(weighted=True, max_n=10))
def test_weighted_spectral_formula(g):
    assert log_tau_spectral(g) == pytest.approx(log_count(spanning_tree_count_exact(g)), abs=1e-8)


def test_spectral_formula_examples():
    assert math.exp(log_tau_spectral(G.cycle(3))) == pytest.approx(3)
    assert log_tau_spectral(G.complete(4)) == pytest.approx(math.log(16))


def test_log_count_huge():
    big = spanning_tree_count_exact(G.complete(200))
    assert log_count(big) == pytest.approx(198 * math.log(200))


def test_spectral_range_error():
    g = G.cycle(4)
    s = graph_spectrum(g)
    bad = Spectrum(np.array([0.0, 0.0, 1.0, 2.0]), s.eigenvectors, s.residual_tol, s.residual, s.sweeps)
    with pytest.raises(ConvergenceError):
        log_tau_spectral(g, bad)


def test_series_examples():
    sv = log_tau_series_truncated(G.cycle(8), 50)
    assert abs(sv.value - math.log(8)) <= sv.error_bound == pytest.approx(45 * 8 / 50 ** (1 / 3))
    assert abs(sv.value - math.log(8)) <= 0.05
    sv = log_tau_series_truncated(G.complete(4), 100)
    assert abs(sv.value - math.log(16)) <= 45 * 4 / 100 ** (1 / 3)
    with pytest.raises(ValueError):
        log_tau_series_truncated(G.cycle(8), 1)


@given(connected_graphs(min_n=3, max_n=12))
def test_series_tail_is_exact_gap(g):
    s = graph_spectrum(g)
    for r in (2, 8, 32):
        gap = log_tau_series_truncated(g, r, s).value - log_tau_spectral(g, s)
        assert gap == pytest.approx(series_tail(s, r), abs=1e-8)
        assert series_tail(s, r) >= -1e-12


def test_parameters():
    r, s, big_n, ds = estimator_parameters(16, 1.0, 0.5)
    assert r == 90
    exact = sum(Fraction(1, k) for k in range(1, 180))
    assert s == pytest.approx(float(exact), rel=1e-14)
    assert s == pytest.approx(5.76739, abs=1e-5)
    assert big_n == math.ceil(64 * math.log(2) * s * s)
    assert ds == math.ceil(256 * math.log(2) * math.log(16) ** 2)


def test_oracle_uniform_and_counted():
    o = in_memory_oracle(G.cycle(4), 3)
    assert isinstance(o, GraphOracle)
    xs = np.array([o.random_vertex() for _ in range(10_000)])
    assert np.all(np.abs(np.bincount(xs, minlength=4) / 10_000 - 0.25) <= 0.02)
    assert o.query_count == 10_000
    nb = o.random_neighbors(np.zeros(2000, dtype=np.int64))
    assert set(nb.tolist()) == {1, 3}
    assert o.degree(2) == 2 and o.query_count == 12_001
    child = o.spawn(5)
    child.random_vertices(7)
    assert o.query_count == 12_008


def test_oracle_rejects_weighted():
    with pytest.raises(GraphError):
        in_memory_oracle(G.WeightedGraph(2, [(0, 1, 2.0)]), 0)


def run(g, seed, **kw):
    kw = {"r": 60, "N": 200_000, "degree_samples": 1000} | kw
    return estimate_log_tau_local(in_memory_oracle(g, seed), g.n, g.m, 1.0, 0.5, seed, **kw)


def test_estimator_on_cycle():
    est = run(G.cycle(8), 7)
    assert abs(est.value - math.log(8) / 8) <= 0.15
    assert est.queries_used <= 2 * est.N * est.r + est.degree_samples + est.N
    assert est.s == pytest.approx(harmonic(119))


def test_estimator_reproducible_and_job_invariant():
    g = G.path(8)
    a = run(g, 3, N=150_000)
    assert a == run(g, 3, N=150_000)
    assert a == run(g, 3, N=150_000, jobs=3)
    assert a != run(g, 4, N=150_000)


def test_estimator_unbiased_mean():
    # averaging seeds shrinks the sampling error toward the truncation offset
    g = G.cycle(8)
    target = (log_tau_spectral(g) + series_tail(graph_spectrum(g), 30)) / g.n
    vals = [run(g, seed, r=30, N=50_000).value for seed in range(12)]
    assert np.mean(vals) == pytest.approx(target, abs=0.01)


def test_estimator_argument_checks():
    o = in_memory_oracle(G.cycle(8), 0)
    with pytest.raises(ValueError):
        estimate_log_tau_local(o, 8, 8, 1.5, 0.5, 0)
    with pytest.raises(ValueError):
        estimate_log_tau_local(o, 8, 8, 1.0, 1.0, 0)
    with pytest.raises(ValueError):
        estimate_log_tau_local(o, 8, 8, 1.0, 0.5, 0, r=0)
