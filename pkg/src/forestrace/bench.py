"""Benchmark protocol: q-grid selection, epsilon-targeted replicate counts,
effective-cost accounting, and CSV emission.

For each (graph, q, method) cell we run a pilot of `pilot_reps` replicates,
solve epsilon = stderr_1 / (mean * sqrt(k)) for the replicate count k that
reaches the target relative error, and report the machine-independent work
counter per replicate multiplied by that k as the effective cost.
"""

from __future__ import annotations

import csv
import math
import os
import time
from dataclasses import asdict, dataclass

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from .errors import BisectionFailed, ForestraceError, ZeroMeanPilot
from .forest import estimate_rf, substream_seeds
from .generate import generate
from .graph import read_graph
from .probe import SolverConfig, estimate_girard
from .spectral import exact_s, graph_spectrum

CSV_COLUMNS = ["graph", "n", "m_edges", "q", "method", "s_hat", "s_exact",
               "stderr", "required_k", "setup_cost", "cost_metric",
               "wall_time_ms", "error"]

METHODS = ("forest", "girard_cg", "girard_direct", "exact")


@dataclass
class BenchPlan:
    graphs: list            # (name, WeightedGraph) pairs
    methods: list
    epsilon: float = 0.02
    pilot_reps: int = 100
    master_seed: int = 0
    q_grid: list | None = None   # explicit grid; otherwise picked per graph
    q_points: int = 8
    q_lo_frac: float = 0.01
    q_hi_frac: float = 0.50

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.q_grid is not None:
            qs = list(self.q_grid)
            if any(q <= 0 for q in qs) or any(
                    b <= a for a, b in zip(qs, qs[1:])):
                raise ValueError("q_grid must be positive and increasing")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}")


@dataclass
class BenchRow:
    graph: str
    n: int
    m_edges: int
    q: float
    method: str
    s_hat: float = math.nan
    s_exact: float = math.nan
    stderr: float = math.nan
    required_k: int = 0
    setup_cost: int = 0
    cost_metric: int = 0
    wall_time_ms: float = 0.0
    error: str = ""


def required_k(pilot, epsilon):
    """Replicates needed for relative error epsilon, from a pilot run."""
    if not pilot.mean > 0:
        raise ZeroMeanPilot(f"pilot mean must be positive, got {pilot.mean}")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    k = math.ceil(pilot.sample_variance / (epsilon ** 2 * pilot.mean ** 2))
    return max(1, k)


def pick_q_grid(g, points=8, lo_frac=0.01, hi_frac=0.50, seed=0):
    """Log-spaced q values spanning s(q) from lo_frac*n to hi_frac*n.

    Endpoints are located by bisection on log q; s is evaluated exactly for
    n <= 2000 and by a 50-forest pilot (10% relative tolerance) above that.
    """
    if not (0 < lo_frac < hi_frac < 1):
        raise ValueError("need 0 < lo_frac < hi_frac < 1")
    if points < 2:
        raise ValueError("need at least 2 grid points")
    if g.n <= 2000:
        spec = graph_spectrum(g)
        s_of = lambda q: exact_s(spec, q)
        rel_tol = 1e-3
    else:
        s_of = lambda q: estimate_rf(g, q, 50, master_seed=seed).mean
        rel_tol = 0.10
    q_lo = _bisect_s(s_of, lo_frac * g.n, rel_tol)
    q_hi = _bisect_s(s_of, hi_frac * g.n, rel_tol)
    return list(np.geomspace(q_lo, q_hi, points))


def _bisect_s(s_of, target, rel_tol, max_iter=60):
    # s(q) is strictly increasing in q; bracket then bisect in log q
    lo = hi = 1.0
    s1 = s_of(1.0)
    it = 0
    if s1 < target:
        while s_of(hi) < target:
            hi *= 8.0
            it += 1
            if it > max_iter:
                raise BisectionFailed(f"cannot bracket s(q) = {target}")
    else:
        while s_of(lo) > target:
            lo /= 8.0
            it += 1
            if it > max_iter:
                raise BisectionFailed(f"cannot bracket s(q) = {target}")
    for _ in range(max_iter):
        mid = math.sqrt(lo * hi)
        s_mid = s_of(mid)
        if abs(s_mid - target) <= rel_tol * target:
            return mid
        if s_mid < target:
            lo = mid
        else:
            hi = mid
    raise BisectionFailed(f"no q with s(q) = {target} after {max_iter} bisections")


def _run_cell(name, g, q, method, spec, plan, cell_index):
    row = BenchRow(graph=name, n=g.n, m_edges=g.m_edges, q=q, method=method)
    if spec is not None:
        row.s_exact = exact_s(spec, q)
    pilot_seed = int(substream_seeds(plan.master_seed, 1, family=2 * cell_index)[0])
    t0 = time.perf_counter()
    try:
        if method == "exact":
            if spec is None:
                raise ForestraceError("exact method needs n <= 2000")
            row.s_hat = row.s_exact
            row.stderr = 0.0
            row.required_k = 1
            row.setup_cost = g.n ** 3
            row.cost_metric = g.n ** 3
        elif method == "forest":
            pilot = estimate_rf(g, q, plan.pilot_reps, master_seed=pilot_seed)
            row.s_hat = pilot.mean
            row.stderr = pilot.stderr
            row.required_k = required_k(pilot, plan.epsilon)
            row.cost_metric = round(pilot.cost / pilot.k * row.required_k)
        elif method in ("girard_cg", "girard_direct"):
            cfg = SolverConfig(kind="cg_jacobi" if method == "girard_cg"
                               else "dense_direct")
            pilot = estimate_girard(g, q, plan.pilot_reps,
                                    master_seed=pilot_seed, cfg=cfg)
            row.s_hat = pilot.mean
            row.stderr = pilot.stderr
            row.required_k = required_k(pilot, plan.epsilon)
            if method == "girard_cg":
                row.cost_metric = round(pilot.cost / pilot.k * g.n * row.required_k)
            else:
                row.setup_cost = g.n ** 3
                row.cost_metric = g.n ** 3
    except ForestraceError as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    row.wall_time_ms = (time.perf_counter() - t0) * 1000.0
    return row


def run_bench(plan, csv_path=None):
    """Run every (graph, q, method) cell of the plan; optionally write CSV."""
    rows = []
    cell_index = 0
    for name, g in plan.graphs:
        spec = graph_spectrum(g) if g.n <= 2000 else None
        if plan.q_grid is not None:
            qs = list(plan.q_grid)
        else:
            qs = pick_q_grid(g, plan.q_points, plan.q_lo_frac, plan.q_hi_frac,
                             seed=plan.master_seed)
        for q in qs:
            for method in plan.methods:
                rows.append(_run_cell(name, g, q, method, spec, plan, cell_index))
                cell_index += 1
    rows.sort(key=lambda r: (r.graph, r.q, r.method))
    if csv_path is not None:
        write_csv(rows, csv_path)
    return rows


def write_csv(rows, path):
    """Atomic CSV write (temp file + rename)."""
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in rows:
            rec = asdict(row)
            for key in ("s_hat", "s_exact", "stderr"):
                rec[key] = "" if math.isnan(rec[key]) else repr(rec[key])
            writer.writerow(rec)
    os.replace(tmp, path)


def read_csv(path):
    """Parse a bench CSV back into BenchRow records."""
    rows = []
    with open(path, newline="", encoding="utf-8") as f:
        for rec in csv.DictReader(f):
            rows.append(BenchRow(
                graph=rec["graph"], n=int(rec["n"]), m_edges=int(rec["m_edges"]),
                q=float(rec["q"]), method=rec["method"],
                s_hat=float(rec["s_hat"]) if rec["s_hat"] else math.nan,
                s_exact=float(rec["s_exact"]) if rec["s_exact"] else math.nan,
                stderr=float(rec["stderr"]) if rec["stderr"] else math.nan,
                required_k=int(rec["required_k"]),
                setup_cost=int(rec["setup_cost"]),
                cost_metric=int(rec["cost_metric"]),
                wall_time_ms=float(rec["wall_time_ms"]),
                error=rec["error"]))
    return rows


def load_plan(path):
    """Load a TOML plan file into a BenchPlan (generating/reading graphs)."""
    with open(path, "rb") as f:
        doc = tomllib.load(f)
    graphs = []
    base = os.path.dirname(os.path.abspath(path))
    for gspec in doc.get("graphs", []):
        if "file" in gspec:
            fpath = gspec["file"]
            if not os.path.isabs(fpath):
                fpath = os.path.join(base, fpath)
            g = read_graph(fpath)
            name = gspec.get("name", os.path.basename(fpath))
        else:
            params = {k: v for k, v in gspec.items() if k not in ("name",)}
            family = params.pop("family")
            params.setdefault("seed", doc.get("seed", 0))
            g = generate(family, **params)
            name = gspec.get("name", family)
        graphs.append((name, g))
    return BenchPlan(
        graphs=graphs,
        methods=list(doc.get("methods", ["forest"])),
        epsilon=float(doc.get("epsilon", 0.02)),
        pilot_reps=int(doc.get("pilot_reps", 100)),
        master_seed=int(doc.get("seed", 0)),
        q_grid=doc.get("q_grid"),
        q_points=int(doc.get("q_points", 8)),
        q_lo_frac=float(doc.get("q_lo_frac", 0.01)),
        q_hi_frac=float(doc.get("q_hi_frac", 0.50)),
    )
