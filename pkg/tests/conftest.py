import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from specwalk.graph import WeightedGraph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def connected_graphs(draw, min_n=2, max_n=12, weighted=False):
    """A random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    weight = st.sampled_from([0.5, 1.0, 1.5, 2.0, 3.0]) if weighted else st.just(1.0)
    edges = {}
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges[(u, v)] = draw(weight)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    if pairs:
        extra = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(len(pairs), 2 * n)))
        for e in extra:
            edges[e] = draw(weight)
    return WeightedGraph(n, [(u, v, w) for (u, v), w in edges.items()])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
