"""Spectral graph analysis toolkit.

Normalized-Laplacian spectra, spectral measures and embeddings, effective
resistances, lazy random walks, spanning-tree counting and estimation, and a
suite that checks spectral inequalities numerically.
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .errors import (ConvergenceError, DisconnectedGraphError, EmbeddingError, GraphError,
                     OracleError, ParseError, SpecwalkError)
from .graph import (GraphFamilySpec, WeightedGraph, generate, parse_edge_list, parse_family,
                    serialize_edge_list)
from .resistance import effective_resistance, resistance_matrix, resistance_profile
from .spectral import (Spectrum, ball_selection, eigendecompose, graph_measure, graph_spectrum,
                       normalized_laplacian, spectral_embedding, vertex_measure, vertex_measures)
from .trees import (estimate_log_tau_local, in_memory_oracle, log_tau_series_truncated,
                    log_tau_spectral, spanning_tree_count_exact)
from .walk import WalkKernel, mixing_report, monte_carlo_return, return_probability
from .bounds import growth_constants, run_bound_suite

__all__ = [
    "BACKEND", "ConvergenceError", "DisconnectedGraphError", "EmbeddingError", "GraphError",
    "GraphFamilySpec", "OracleError", "ParseError", "SpecwalkError", "Spectrum", "WalkKernel",
    "WeightedGraph", "ball_selection", "effective_resistance", "eigendecompose",
    "estimate_log_tau_local", "generate", "graph_measure", "graph_spectrum", "growth_constants",
    "in_memory_oracle", "log_tau_series_truncated", "log_tau_spectral", "mixing_report",
    "monte_carlo_return", "normalized_laplacian", "parse_edge_list", "parse_family",
    "resistance_matrix", "resistance_profile", "return_probability", "run_bound_suite",
    "serialize_edge_list", "spanning_tree_count_exact", "spectral_embedding", "vertex_measure",
    "vertex_measures",
]
