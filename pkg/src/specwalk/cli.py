"""Command-line front end.

Commands read a graph as an edge list (file path, or ``-`` for stdin) or from
``--family kind:params`` and print JSON (default) or a plain table.  Exit
status: 0 success, 1 domain error, 2 usage error, 3 when ``bounds`` finds a
failing row.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__, graph as G
from ._backend import BACKEND
from .bounds import run_bound_suite
from .errors import SpecwalkError
from .resistance import effective_resistance, resistance_profile
from .spectral import (THRESHOLD_TOL, ball_selection, graph_measure, graph_spectrum,
                       spectral_embedding, vertex_measures)
from .trees import (brute_force_tree_count, estimate_log_tau_local, in_memory_oracle,
                    log_count, log_tau_series_truncated, log_tau_spectral, spanning_tree_count_exact)
from .walk import (WalkKernel, heat_return_probability, mixing_report, monte_carlo_return,
                   return_probability)

SCHEMA = "specwalk/1"
EXIT_DOMAIN, EXIT_USAGE, EXIT_BOUNDS = 1, 2, 3


def _load(args) -> G.WeightedGraph:
    if args.family:
        return G.generate(G.parse_family(args.family))
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    return G.parse_edge_list(text)


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, np.generic):
        return v.item()
    if isinstance(v, Fraction):
        return float(v)
    return v


def _emit(args, command: str, payload: dict, table: str | None = None) -> None:
    if args.format == "table" and table is not None:
        text = table
    else:
        text = json.dumps(_jsonable({"schema": SCHEMA, "command": command} | payload), indent=2)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _kv_table(payload: dict) -> str:
    return "\n".join(f"{k:<20} {v}" for k, v in payload.items())


# --- commands ------------------------------------------------------------------


def cmd_gen(args) -> int:
    params = ",".join(args.params)
    text = f"{args.kind}:{params}" if params else args.kind
    spec = G.parse_family(text)
    if spec.kind == "erdos_renyi" and args.seed is not None and len(args.params) < 3:
        spec = G.GraphFamilySpec(spec.kind, n=spec.n, p=spec.p, seed=args.seed)
    out = G.serialize_edge_list(G.generate(spec))
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def cmd_spectrum(args) -> int:
    g = _load(args)
    s = graph_spectrum(g)
    payload = {"n": g.n, "backend": BACKEND, **s.to_json(vectors=args.vectors)}
    table = "\n".join(f"{j + 1:>4} {lam:.15g}" for j, lam in enumerate(s.eigenvalues))
    _emit(args, "spectrum", payload, table)
    return 0


def cmd_measure(args) -> int:
    g = _load(args)
    s = graph_spectrum(g)
    mu, star = vertex_measures(s, args.delta, args.tolerance)
    gm, gstar = graph_measure(s, args.delta, args.tolerance)
    if args.vertex is not None:
        if not 0 <= args.vertex < g.n:
            raise ValueError(f"vertex {args.vertex} out of range")
        payload = {"delta": args.delta, "vertex": args.vertex, "mu_x": mu[args.vertex],
                   "mu_star_x": star[args.vertex]}
    else:
        payload = {"delta": args.delta, "mu": gm, "mu_star": gstar, "mu_x": mu, "mu_star_x": star}
    table = _kv_table({k: v for k, v in payload.items() if not isinstance(v, np.ndarray)})
    _emit(args, "measure", payload, table)
    return 0


def cmd_embed(args) -> int:
    g = _load(args)
    s = graph_spectrum(g)
    emb = spectral_embedding(s, g, args.delta, tol=args.tolerance)
    sel = ball_selection(g, emb, args.alpha)
    payload = {
        "delta": args.delta, "dims": emb.dims, "eigen_indices": emb.indices, "coords": emb.coords,
        "norms_sq": emb.norms() ** 2,
        "ball_selection": {"alpha": sel.alpha, "k": sel.k, "centers": sel.centers, "radii": sel.radii,
                           "half_balls": [sorted(b) for b in sel.half_balls]},
    }
    table = _kv_table({"delta": args.delta, "dims": emb.dims, "k": sel.k, "centers": list(sel.centers)})
    _emit(args, "embed", payload, table)
    return 0


def cmd_resistance(args) -> int:
    g = _load(args)
    if args.source is not None or args.target is not None:
        if args.source is None or args.target is None:
            raise ValueError("--source and --target go together")
        r = effective_resistance(g, args.source, args.target)
        payload = {"source": args.source, "target": args.target, "resistance": r}
        _emit(args, "resistance", payload, f"{r:.15g}")
        return 0
    prof = resistance_profile(g)
    payload = prof.to_json()
    table = _kv_table({"r_diam": prof.r_diam, "commute_max": prof.commute_max})
    _emit(args, "resistance", payload, table)
    return 0


def cmd_walk(args) -> int:
    g = _load(args)
    k = WalkKernel(g)
    x, t = args.vertex, args.time
    if not 0 <= x < g.n:
        raise ValueError(f"vertex {x} out of range")
    payload = {"vertex": x, "t": t, "return_probability": return_probability(k, x, t),
               "heat_return_probability": heat_return_probability(k, x, float(t)),
               "stationary": float(k.pi[x])}
    if args.samples:
        seed = 0 if args.seed is None else args.seed
        payload["monte_carlo"] = monte_carlo_return(g, x, t, args.samples, seed, jobs=args.jobs).to_json()
    _emit(args, "walk", payload, _kv_table({k_: v for k_, v in payload.items() if k_ != "monte_carlo"}))
    return 0


def cmd_mixing(args) -> int:
    g = _load(args)
    rep = mixing_report(WalkKernel(g), args.epsilon)
    _emit(args, "mixing", rep.to_json(), _kv_table(rep.to_json()))
    return 0


def cmd_trees_exact(args) -> int:
    g = _load(args)
    count = spanning_tree_count_exact(g)
    payload = {"count": count if isinstance(count, int) else float(count), "log_count": log_count(count)}
    if isinstance(count, Fraction):
        payload["exact"] = f"{count.numerator}/{count.denominator}"
    if args.brute_force:
        payload["brute_force"] = brute_force_tree_count(g)
    _emit(args, "trees-exact", payload, str(count))
    return 0


def cmd_trees_series(args) -> int:
    g = _load(args)
    s = graph_spectrum(g)
    sv = log_tau_series_truncated(g, args.r, s)
    payload = {"r": args.r, "value": sv.value, "error_bound": sv.error_bound,
               "log_tau_spectral": log_tau_spectral(g, s)}
    _emit(args, "trees-series", payload, _kv_table(payload))
    return 0


def cmd_trees_estimate(args) -> int:
    g = _load(args)
    seed = 0 if args.seed is None else args.seed
    oracle = in_memory_oracle(g, seed)
    est = estimate_log_tau_local(
        oracle, g.n, g.m, args.epsilon, args.fail_prob, seed,
        r=args.override_r, N=args.override_N, degree_samples=args.override_degree_samples, jobs=args.jobs,
    )
    payload = est.to_json()
    _emit(args, "trees-estimate", payload, _kv_table(payload))
    return 0


def cmd_bounds(args) -> int:
    g = _load(args)
    report = run_bound_suite(g, points=args.points)
    # the report carries its own versioned schema
    _emit(args, "bounds", report.to_json(), report.to_table())
    return 0 if report.passed else EXIT_BOUNDS


# --- parser --------------------------------------------------------------------


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="specwalk", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND})")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")
    common.add_argument("--seed", type=_seed, default=None)
    common.add_argument("--jobs", type=_positive_int, default=1)
    common.add_argument("--tolerance", type=float, default=THRESHOLD_TOL,
                        help="eigenvalue threshold tolerance for measures and embeddings")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("input", nargs="?", default="-", help="edge-list file, '-' for stdin")
    graph_in.add_argument("--family", help="generate instead of reading, e.g. cycle:8 or clique_cycle:60,3")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="emit a family member as an edge list")
    p.add_argument("kind", choices=[f for f in G.FAMILIES if f != "custom"])
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("spectrum", parents=[common, graph_in], help="normalized Laplacian eigenvalues")
    p.add_argument("--vectors", action="store_true", help="include eigenvectors")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("measure", parents=[common, graph_in], help="spectral measures at a threshold")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--vertex", type=int)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("embed", parents=[common, graph_in], help="spectral embedding and ball selection")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.25)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("resistance", parents=[common, graph_in], help="effective resistances")
    p.add_argument("--source", type=int)
    p.add_argument("--target", type=int)
    p.set_defaults(func=cmd_resistance)

    p = sub.add_parser("walk", parents=[common, graph_in], help="lazy-walk return probabilities")
    p.add_argument("--vertex", type=int, default=0)
    p.add_argument("--time", type=int, required=True)
    p.add_argument("--samples", type=_positive_int, help="also run a Monte Carlo estimate")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("mixing", parents=[common, graph_in], help="L2 and L-infinity mixing times")
    p.add_argument("--epsilon", type=float, default=0.25)
    p.set_defaults(func=cmd_mixing)

    p = sub.add_parser("trees-exact", parents=[common, graph_in], help="exact spanning-tree count")
    p.add_argument("--brute-force", action="store_true", help="also enumerate (n <= 10)")
    p.set_defaults(func=cmd_trees_exact)

    p = sub.add_parser("trees-series", parents=[common, graph_in], help="truncated series for ln tau")
    p.add_argument("--r", type=int, default=32)
    p.set_defaults(func=cmd_trees_series)

    p = sub.add_parser("trees-estimate", parents=[common, graph_in], help="local estimate of ln(tau)/n")
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--fail-prob", type=float, default=0.5)
    p.add_argument("--override-r", type=_positive_int)
    p.add_argument("--override-N", type=_positive_int)
    p.add_argument("--override-degree-samples", type=_positive_int)
    p.set_defaults(func=cmd_trees_estimate)

    p = sub.add_parser("bounds", parents=[common, graph_in], help="run the inequality suite")
    p.add_argument("--points", type=_positive_int, default=64, help="threshold grid size")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecwalkError, ValueError, ArithmeticError, OSError) as exc:
        print(f"specwalk: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
