"""Command-line front end: ``satlab <subcommand> ...``.

Every subcommand prints JSON on stdout.  The exit status is 1 when a bound
or empirical check fails, 2 on bad input, and 0 otherwise.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import bound_report
from .construct import kt_construction, layered_construction, star_construction
from .formats import read_graph, write_graph
from .graph import Graph, RngSpec, complete_graph, generate_random
from .harness import ConfigError, ExperimentConfig, check_alpha_concentration, check_random_properties, run_experiment
from .pattern import PatternError, parse_pattern
from .saturate import POLICIES, exact_min_sat, greedy_complete, verify_saturated


def _dump(obj) -> None:
    def default(x):
        if isinstance(x, Fraction):
            return str(x)
        raise TypeError(f"cannot serialise {type(x).__name__}")

    print(json.dumps(obj, indent=2, default=default))


def load_graph(arg: str) -> Graph:
    """A graph from a file path, or ``complete:N``, ``gnp:N,P[,SEED]``, ``g6:STRING``."""
    path = Path(arg)
    if path.is_file():
        return read_graph(path.read_text())
    kind, _, body = arg.partition(":")
    try:
        if kind == "complete":
            return complete_graph(int(body))
        if kind == "gnp":
            parts = body.split(",")
            seed = int(parts[2]) if len(parts) > 2 else 0
            return generate_random(int(parts[0]), float(parts[1]), RngSpec(seed))
        if kind == "g6":
            return read_graph(body, "graph6")
    except (IndexError, ValueError) as exc:
        raise ValueError(f"bad graph spec {arg!r}: {exc}") from exc
    raise ValueError(f"{arg!r} is neither a file nor a graph spec (complete:N, gnp:N,P,SEED, g6:...)")


def cmd_gen(args) -> int:
    g = generate_random(args.n, args.p, RngSpec(args.seed, args.stream))
    text = write_graph(g, args.format)
    if args.out:
        Path(args.out).write_text(text)
        _dump({"n": g.n, "m": g.m, "out": args.out})
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0


def cmd_exact(args) -> int:
    g = load_graph(args.graph)
    pat = parse_pattern(args.pattern)
    res = exact_min_sat(g, pat, args.budget, edge_limit=args.edge_limit)
    verdict = verify_saturated(g, res.witness, pat)
    _dump({
        "m": res.value if res.optimal else res.best,
        "method": "exact" if res.optimal else "exact-truncated",
        "verified": verdict.status,
        "witness": verdict.to_dict()["witness"],
        "optimal": res.optimal,
        "lower_bound": res.lower_bound,
        "nodes": res.nodes,
        "edges": [list(e) for e in res.witness.edge_list()],
    })
    return 0


def cmd_complete(args) -> int:
    g = load_graph(args.graph)
    pat = parse_pattern(args.pattern)
    res = greedy_complete(g, None, pat, args.policy, RngSpec(args.seed))
    out = res.to_dict(with_edges=args.edges)
    out["policy"] = res.params["policy"]
    _dump(out)
    return 0 if res.verdict.passed else 1


def cmd_construct(args) -> int:
    pat = parse_pattern(args.pattern, args.p)
    params = None
    if args.method == "kt":
        res = kt_construction(args.n, pat, args.policy)
    else:
        g = generate_random(args.n, args.p, RngSpec(args.seed))
        if args.method == "layered":
            res, lp = layered_construction(g, args.p, pat, args.policy, RngSpec(args.seed, 1))
            params = lp.to_dict(full=args.emit_params)
        else:
            res, sp = star_construction(g, args.p, pat, RngSpec(args.seed, 1))
            params = sp.to_dict()
    out = res.to_dict(with_edges=args.edges)
    out["m_over_n"] = res.m / args.n
    out["params"] = params if params is not None else res.params
    _dump(out)
    return 0 if res.verdict.passed else 1


def cmd_bounds(args) -> int:
    rep = bound_report(parse_pattern(args.pattern, args.p), args.n, args.p)
    if args.format == "text":
        print(rep.to_text())
    else:
        _dump(rep.to_dict())
    return 0


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig.load(args.config)
    overrides = {}
    if args.csv:
        overrides["csv_path"] = args.csv
    if args.summary:
        overrides["summary_path"] = args.summary
    if args.workers:
        overrides["workers"] = args.workers
    if overrides:
        from dataclasses import replace

        cfg = replace(cfg, **overrides)
    res = run_experiment(cfg)
    _dump(res.summary)
    return 0 if res.passed else 1


def cmd_check_random(args) -> int:
    rep = check_random_properties(args.n, args.p, args.trials, RngSpec(args.seed),
                                  eps=args.eps, clique_size=args.clique_size)
    rep["max_failure_rate"] = args.max_failure_rate
    rep["passed"] = (rep["ratio_failure_rate"] <= args.max_failure_rate
                     and rep["clique_failure_rate"] <= args.max_failure_rate)
    _dump(rep)
    return 0 if rep["passed"] else 1


def cmd_check_alpha(args) -> int:
    rep = check_alpha_concentration(args.n, args.p, args.k, args.seeds,
                                    tolerance=args.tolerance, budget=args.budget)
    _dump(rep)
    return 0 if rep["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="satlab", description="Graph saturation laboratory")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="sample G(n, p)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--stream", type=int, default=0)
    s.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("exact", help="exact minimum saturated subgraph")
    s.add_argument("--graph", required=True, help="file, complete:N, gnp:N,P,SEED or g6:STRING")
    s.add_argument("--pattern", required=True)
    s.add_argument("--budget", type=int)
    s.add_argument("--edge-limit", type=int, default=26)
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("complete", help="greedy completion from the empty subgraph")
    s.add_argument("--graph", required=True)
    s.add_argument("--pattern", required=True)
    s.add_argument("--policy", choices=sorted(POLICIES), default="lex")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--edges", action="store_true", help="include the edge list")
    s.set_defaults(func=cmd_complete)

    s = sub.add_parser("construct", help="run an explicit construction")
    s.add_argument("--method", choices=("layered", "kt", "star"), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--pattern", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--policy", choices=sorted(POLICIES), default="lex")
    s.add_argument("--emit-params", action="store_true", help="include full vertex sets")
    s.add_argument("--edges", action="store_true", help="include the edge list")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("bounds", help="every bound that applies to a pattern")
    s.add_argument("--pattern", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("experiment", help="run a Monte Carlo experiment from a JSON config")
    s.add_argument("--config", required=True)
    s.add_argument("--csv")
    s.add_argument("--summary")
    s.add_argument("--workers", type=int)
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("check-random", help="edge-density and clique checks on G(n, p)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--eps", type=float, default=0.2)
    s.add_argument("--clique-size", type=int, default=5)
    s.add_argument("--max-failure-rate", type=float, default=0.05)
    s.set_defaults(func=cmd_check_random)

    s = sub.add_parser("check-alpha", help="exact k-independence number against its centre")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--k", type=int, default=0)
    s.add_argument("--seeds", type=int, nargs="+", default=[0])
    s.add_argument("--tolerance", type=float, default=3.0)
    s.add_argument("--budget", type=int, default=5_000_000)
    s.set_defaults(func=cmd_check_alpha)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (PatternError, ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
