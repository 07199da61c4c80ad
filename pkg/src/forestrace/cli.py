"""Command-line front end.

Subcommands: gen, estimate, bench, smooth, report. Exit codes: 0 success,
1 usage error, 2 runtime error. Diagnostics go to stderr, data to files or
stdout.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bench as bench_mod
from .errors import ForestraceError
from .forest import estimate_rf
from .generate import generate
from .graph import read_graph, write_graph
from .probe import SolverConfig, estimate_girard, smooth
from .sdd import estimate_sdd, read_matrix_market
from .spectral import exact_s, graph_spectrum


def _build_parser():
    p = argparse.ArgumentParser(prog="forestrace")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a benchmark graph")
    g.add_argument("family", choices=["ring", "grid2d", "grid3d",
                                      "barabasi_albert", "knn_cloud"])
    g.add_argument("--n", type=int)
    g.add_argument("--rows", type=int)
    g.add_argument("--cols", type=int)
    g.add_argument("--dims", type=int, nargs=3)
    g.add_argument("--m", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--noise", type=float, default=0.01)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True)

    e = sub.add_parser("estimate", help="estimate s(q)")
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph")
    src.add_argument("--sdd", help="Matrix Market SDD matrix")
    e.add_argument("--method", default="forest",
                   choices=["forest", "girard-cg", "girard-direct", "exact"])
    e.add_argument("--q", type=float, required=True)
    e.add_argument("--k", type=int)
    e.add_argument("--epsilon", type=float,
                   help="target relative error; k is chosen from a pilot")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--tol", type=float, default=1e-8, help="CG tolerance")

    b = sub.add_parser("bench", help="run a benchmark plan")
    b.add_argument("--plan", required=True, help="TOML plan file")
    b.add_argument("-o", "--output", required=True, help="CSV output path")

    s = sub.add_parser("smooth", help="Tikhonov-smooth a node signal")
    s.add_argument("--graph", required=True)
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--input", required=True, help="one value per line")
    s.add_argument("--output", required=True)
    s.add_argument("--tol", type=float, default=1e-8)

    r = sub.add_parser("report", help="render figures from a bench CSV")
    r.add_argument("--csv", required=True)
    r.add_argument("-o", "--output", required=True, help="figure directory")
    return p


def _cmd_gen(args):
    kwargs = dict(n=args.n, rows=args.rows, cols=args.cols, dims=args.dims,
                  m=args.m, k=args.k, noise=args.noise, seed=args.seed)
    g = generate(args.family, **kwargs)
    write_graph(g, args.output)
    print(f"wrote {args.output}: n={g.n} m={g.m_edges}", file=sys.stderr)
    return 0


def _estimate_once(args, k, seed):
    if args.sdd:
        G = read_matrix_market(args.sdd)
        return estimate_sdd(G, args.q, k, master_seed=seed)
    g = read_graph(args.graph)
    method = args.method.replace("-", "_")
    if method == "forest":
        return estimate_rf(g, args.q, k, master_seed=seed)
    if method in ("girard_cg", "girard_direct"):
        cfg = SolverConfig(kind="cg_jacobi" if method == "girard_cg"
                           else "dense_direct", rel_tolerance=args.tol)
        return estimate_girard(g, args.q, k, master_seed=seed, cfg=cfg)
    # exact oracle, small graphs only
    return exact_s(graph_spectrum(g), args.q)


def _cmd_estimate(args):
    if args.k is None and args.epsilon is None and args.method != "exact":
        print("error: provide --k or --epsilon", file=sys.stderr)
        return 1
    if args.method == "exact":
        s = _estimate_once(args, 1, args.seed)
        print(f"s_hat={s!r} stderr=0.0 k=1")
        return 0
    if args.epsilon is not None:
        pilot = _estimate_once(args, 100, args.seed)
        k = bench_mod.required_k(pilot, args.epsilon)
        res = _estimate_once(args, k, args.seed + 1)
    else:
        res = _estimate_once(args, args.k, args.seed)
    print(f"s_hat={res.mean!r} stderr={res.stderr!r} k={res.k}")
    return 0


def _cmd_bench(args):
    plan = bench_mod.load_plan(args.plan)
    rows = bench_mod.run_bench(plan, csv_path=args.output)
    print(f"wrote {args.output}: {len(rows)} rows", file=sys.stderr)
    return 0


def _cmd_smooth(args):
    g = read_graph(args.graph)
    y = np.loadtxt(args.input, ndmin=1)
    x = smooth(g, args.q, y, SolverConfig(rel_tolerance=args.tol))
    np.savetxt(args.output, x)
    return 0


def _cmd_report(args):
    from .report import render_report
    written = render_report(args.csv, args.output)
    for path in written:
        print(path, file=sys.stderr)
    return 0


_COMMANDS = {"gen": _cmd_gen, "estimate": _cmd_estimate, "bench": _cmd_bench,
             "smooth": _cmd_smooth, "report": _cmd_report}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return _COMMANDS[args.command](args)
    except ForestraceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1 if _is_usage(exc) else 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _is_usage(exc):
    from .errors import (BadK, BadParameters, NonPositiveQ, SizeTooSmall,
                         ZeroReplicates)
    return isinstance(exc, (NonPositiveQ, BadParameters, BadK, SizeTooSmall,
                            ZeroReplicates))


if __name__ == "__main__":
    sys.exit(main())
