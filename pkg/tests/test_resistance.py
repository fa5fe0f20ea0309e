from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from specwalk import graph as G
from specwalk.errors import DisconnectedGraphError
from specwalk.resistance import (commute_times, effective_resistance, resistance_diameter,
                                 resistance_matrix, resistance_matrix_exact, resistance_profile)

from conftest import connected_graphs


def test_examples():
    assert effective_resistance(G.path(3), 0, 2) == 2
    assert effective_resistance(G.cycle(4), 0, 1) == 0.75
    assert effective_resistance(G.cycle(4), 0, 2) == 1.0
    assert resistance_diameter(G.cycle(4))[1] == 1.0
    assert resistance_diameter(G.path(7))[1] == 6.0
    assert resistance_diameter(G.complete(2))[1] == 1.0
    assert commute_times(G.cycle(4))[1] == 8
    assert commute_times(G.complete(2))[1] == 2
    assert commute_times(G.path(3))[1] == 8


def test_exact_fractions():
    r = resistance_matrix_exact(G.cycle(5))
    assert r[0][1] == Fraction(4, 5)
    assert r[0][2] == Fraction(6, 5)
    w = G.WeightedGraph(3, [(0, 1, 2.0), (1, 2, 0.5)])
    assert resistance_matrix_exact(w)[0][2] == Fraction(5, 2)


def test_errors():
    with pytest.raises(ValueError):
        effective_resistance(G.cycle(4), 1, 1)
    with pytest.raises(ValueError):
        effective_resistance(G.cycle(4), 0, 4)
    with pytest.raises(DisconnectedGraphError):
        resistance_matrix(G.WeightedGraph(4, [(0, 1), (2, 3)]))


def test_float_path_matches_exact_on_large_graph():
    g = G.cycle(80)
    r = resistance_matrix(g)
    for d in (1, 10, 40):
        assert r[0, d] == pytest.approx(d * (80 - d) / 80, rel=1e-10)


def test_profile_json():
    prof = resistance_profile(G.cycle(4))
    js = prof.to_json()
    assert js["r_diam"] == 1.0 and js["commute_max"] == 8.0
    assert len(js["resistances"]) == 4


@given(connected_graphs(weighted=True, min_n=3, max_n=10))
def test_matches_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    # weights here are conductances
    h.add_edges_from((u, v, {"weight": w}) for u, v, w in g.edges)
    r = resistance_matrix(g)
    for s in range(g.n):
        for t in range(s + 1, g.n):
            assert r[s, t] == pytest.approx(nx.resistance_distance(h, s, t, weight="weight", invert_weight=False), rel=1e-9)


@given(connected_graphs(weighted=True))
def test_metric_and_foster(g):
    r = resistance_matrix(g)
    assert np.allclose(r, r.T) and np.all(np.diag(r) == 0)
    assert np.all(r[:, :, None] <= r[:, None, :].transpose(0, 2, 1) + r[None, :, :] + 1e-9)
    # Foster: sum over edges of w * R = n - 1
    total = sum(w * r[u, v] for u, v, w in g.edges)
    assert total == pytest.approx(g.n - 1, rel=1e-9)


@given(connected_graphs(min_n=3, max_n=10))
def test_rayleigh_monotone(g):
    if g.m == g.n - 1:
        return
    u, v, _ = g.edges[-1]
    h = g.without_edge(u, v)
    if not h.connected:
        return
    assert np.all(resistance_matrix(h) >= resistance_matrix(g) - 1e-12)
