import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from specwalk import graph as G
from specwalk.spectral import graph_spectrum
from specwalk.walk import (WalkKernel, average_return_excess, continuous_l2_mixing_time,
                           heat_return_probability, hoeffding_half_width, l2_mixing_time,
                           linf_mixing_time, measure_return_bounds, mixing_report,
                           monte_carlo_return, return_probabilities, return_probability,
                           simulate_lazy_walks, spectral_return_integral, transition_probability)

from conftest import connected_graphs


def test_return_probability_examples():
    assert return_probability(WalkKernel(G.complete(2)), 0, 1) == pytest.approx(0.5)
    c4 = WalkKernel(G.cycle(4))
    assert return_probability(c4, 0, 2) == pytest.approx(3 / 8)
    assert return_probability(c4, 0, 0) == pytest.approx(1.0)
    assert transition_probability(c4, 0, 1, 1) == pytest.approx(0.25)
    assert transition_probability(c4, 0, 1, 5) == pytest.approx(0.25)
    assert transition_probability(c4, 0, 2, 3) == pytest.approx(3 / 16)
    k2 = WalkKernel(G.complete(2))
    for t in (0.0, 0.3, 2.0):
        assert heat_return_probability(k2, 0, t) == pytest.approx(0.5 + math.exp(-2 * t) / 2)


@given(connected_graphs(weighted=True), st.integers(0, 40))
def test_spectral_probabilities_match_matrix_powers(g, t):
    k = WalkKernel(g)
    pt = np.linalg.matrix_power(k.matrix(), t)
    assert np.allclose(return_probabilities(k, t), np.diag(pt), atol=1e-10)
    assert np.allclose(k.power(t), pt, atol=1e-10)
    assert transition_probability(k, 0, g.n - 1, t) == pytest.approx(pt[0, g.n - 1], abs=1e-10)
    assert np.allclose(pt.sum(axis=1), 1)
    # reversibility
    assert np.allclose(k.pi[:, None] * pt, (k.pi[:, None] * pt).T, atol=1e-12)


@given(connected_graphs(weighted=True), st.integers(1, 64))
def test_trace_identity(g, t):
    k = WalkKernel(g)
    assert average_return_excess(k, t) == pytest.approx(spectral_return_integral(k.spectrum, t), abs=1e-10)


@given(connected_graphs(weighted=True), st.integers(0, 30))
def test_return_probability_monotone(g, t):
    p = return_probabilities(WalkKernel(g), t)
    q = return_probabilities(WalkKernel(g), t + 1)
    assert np.all(q <= p + 1e-12)


def test_mixing_examples():
    assert l2_mixing_time(WalkKernel(G.complete(2)), 0.01) == 1
    assert l2_mixing_time(WalkKernel(G.cycle(4)), 0.5) == 2
    for n in range(2, 17):
        # P on K_n has eigenvalue (n-2)/(2(n-1)) with multiplicity n-1
        decay = (n - 2) / (2 * (n - 1))
        expect = next(t for t in range(10) if (n - 1) * decay ** (2 * t) <= 1 + 1e-12)
        assert l2_mixing_time(WalkKernel(G.complete(n)), 1.0) == expect
    assert [l2_mixing_time(WalkKernel(G.complete(n)), 1.0) for n in (3, 6, 7, 16)] == [1, 1, 2, 2]
    # on K2, p_0(x,x)/pi(x) = 2 already meets 1 + eps^2 at eps = 1
    assert l2_mixing_time(WalkKernel(G.complete(2)), 1.0) == 0
    assert linf_mixing_time(WalkKernel(G.cycle(4)), 0.25) == 3
    assert linf_mixing_time(WalkKernel(G.complete(2)), 0.25) == 1
    rep = mixing_report(WalkKernel(G.cycle(4)), 0.25)
    assert rep.tau_inf == 3 and rep.witness is not None
    x, y = rep.witness
    k = WalkKernel(G.cycle(4))
    assert abs(k.power(2)[x, y] / k.pi[y] - 1) > 0.25
    with pytest.raises(ValueError):
        l2_mixing_time(WalkKernel(G.cycle(4)), 0.0)


@given(connected_graphs(weighted=True, max_n=10), st.sampled_from([1 / 16, 1 / 4, 1.0]))
def test_mixing_relation(g, eps):
    k = WalkKernel(g)
    assert math.ceil(linf_mixing_time(k, eps) / 2) == l2_mixing_time(k, math.sqrt(eps))


def test_mixing_time_is_first_passing_time():
    k = WalkKernel(G.path(9))
    t = linf_mixing_time(k, 0.25)
    dev = lambda s: np.abs(k.power(s) / k.pi - 1).max()
    assert dev(t) <= 0.25 + 1e-12 < dev(t - 1)


def test_continuous_mixing_k2():
    assert continuous_l2_mixing_time(WalkKernel(G.complete(2)), 1 / math.e) == pytest.approx(0.5, rel=1e-9)


def test_measure_return_bounds_c4():
    lhs, disc, cont = measure_return_bounds(WalkKernel(G.cycle(4)), 0, 1.0)
    assert lhs == pytest.approx(0.5)
    assert disc == pytest.approx(2 * math.e * (3 / 8 - 1 / 4))
    assert lhs < disc and lhs <= cont
    lhs, disc, _ = measure_return_bounds(WalkKernel(G.complete(2)), 0, 1.0)
    assert lhs == 0 and disc >= 0
    assert measure_return_bounds(WalkKernel(G.cycle(4)), 0, 1.5)[1] is None


@pytest.mark.parametrize("g, t, exact", [(G.complete(2), 1, 0.5), (G.cycle(4), 2, 3 / 8)])
def test_monte_carlo_examples(g, t, exact):
    res = monte_carlo_return(g, 0, t, 100_000, seed=11)
    assert abs(res.estimate - exact) <= 0.01
    assert res.half_width == pytest.approx(hoeffding_half_width(100_000))


def test_monte_carlo_reproducible_and_job_invariant():
    g = G.barbell(15)
    a = monte_carlo_return(g, 3, 17, 150_000, seed=5)
    b = monte_carlo_return(g, 3, 17, 150_000, seed=5, jobs=4)
    assert a == b
    assert monte_carlo_return(g, 3, 17, 150_000, seed=6) != a


def test_monte_carlo_covers_exact_value():
    g = G.barbell(9)
    k = WalkKernel(g)
    for seed in range(5):
        res = monte_carlo_return(g, 1, 6, 40_000, seed=seed)
        assert abs(res.estimate - return_probability(k, 1, 6)) <= res.half_width


def test_walk_step_distribution():
    # with uniforms spread evenly the empirical one-step law equals P(x, .)
    g = G.WeightedGraph(3, [(0, 1, 1.0), (0, 2, 3.0)])
    u = (np.arange(80_000) + 0.5) / 80_000
    ends = simulate_lazy_walks(g, np.zeros(u.size, dtype=np.int64), np.ones(u.size), u)
    freq = np.bincount(ends, minlength=3) / u.size
    assert np.allclose(freq, [0.5, 0.125, 0.375], atol=1e-4)


def test_simulation_needs_enough_uniforms():
    with pytest.raises(ValueError):
        simulate_lazy_walks(G.cycle(4), [0], [5], np.zeros(3))
