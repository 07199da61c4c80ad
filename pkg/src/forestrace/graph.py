"""Weighted undirected graphs and their Laplacian semantics.

The graph is stored in CSR form (indptr/indices/weights) together with a
per-node cumulative-weight prefix so that weight-proportional neighbor
sampling is a binary search. Instances are immutable after construction
and safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConflictingDuplicate,
    DimensionMismatch,
    FormatViolation,
    NegativeWeight,
    ParseError,
    SelfLoop,
)


@dataclass(frozen=True)
class Violation:
    kind: str  # "SymmetryViolation" | "DegreeMismatch" | "SelfLoop" | "NegativeWeight"
    where: tuple

    def __str__(self):
        return f"{self.kind}{self.where}"


class WeightedGraph:
    """Undirected simple graph with positive real edge weights."""

    def __init__(self, n, indptr, indices, weights):
        self.n = int(n)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.weights = np.asarray(weights, dtype=np.float64)
        self.degrees = np.add.reduceat(
            np.concatenate([self.weights, [0.0]]), self.indptr[:-1]
        ) if self.indices.size else np.zeros(self.n)
        self.degrees[np.diff(self.indptr) == 0] = 0.0
        # cumulative weights within each neighbor slice, for O(log d) sampling
        self.cumweights = np.copy(self.weights)
        for i in range(self.n):
            lo, hi = self.indptr[i], self.indptr[i + 1]
            if hi > lo:
                np.cumsum(self.weights[lo:hi], out=self.cumweights[lo:hi])
        self.m_edges = self.indices.size // 2
        for a in (self.indptr, self.indices, self.weights, self.degrees,
                  self.cumweights):
            a.setflags(write=False)

    # -- accessors ---------------------------------------------------------

    @property
    def total_weight(self):
        return float(self.weights.sum()) / 2.0

    def neighbors(self, i):
        """(neighbor ids, weights) of node i."""
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def edges(self):
        """Yield (i, j, w) with i < j, each undirected edge once."""
        for i in range(self.n):
            lo, hi = self.indptr[i], self.indptr[i + 1]
            for j, w in zip(self.indices[lo:hi], self.weights[lo:hi]):
                if i < j:
                    yield int(i), int(j), float(w)

    def laplacian_dense(self):
        """Dense L = D - A. Intended for desk-scale oracles only."""
        L = np.zeros((self.n, self.n))
        for i, j, w in self.edges():
            L[i, j] -= w
            L[j, i] -= w
            L[i, i] += w
            L[j, j] += w
        return L

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.weights, other.weights))

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m_edges})"


def from_edge_list(rows, n=None):
    """Build a WeightedGraph from (i, j, w) rows.

    Node count is max id + 1 unless given. Duplicate rows with equal weight
    merge; conflicting weights raise ConflictingDuplicate.
    """
    adj = {}
    max_id = -1
    for i, j, w in rows:
        i, j, w = int(i), int(j), float(w)
        if i == j:
            raise SelfLoop(f"self-loop at node {i}")
        if w <= 0:
            raise NegativeWeight(f"edge ({i},{j}) has non-positive weight {w}")
        if i < 0 or j < 0:
            raise ParseError(f"negative node id in edge ({i},{j})")
        key = (i, j) if i < j else (j, i)
        if key in adj:
            if adj[key] != w:
                raise ConflictingDuplicate(
                    f"edge {key} given weights {adj[key]} and {w}")
        else:
            adj[key] = w
        max_id = max(max_id, i, j)
    if n is None:
        n = max_id + 1
    elif max_id >= n:
        raise ParseError(f"node id {max_id} exceeds declared size {n}")
    counts = np.zeros(n + 1, dtype=np.int64)
    for (i, j) in adj:
        counts[i + 1] += 1
        counts[j + 1] += 1
    indptr = np.cumsum(counts)
    indices = np.zeros(indptr[-1], dtype=np.int64)
    weights = np.zeros(indptr[-1], dtype=np.float64)
    fill = indptr[:-1].copy()
    for (i, j), w in sorted(adj.items()):
        indices[fill[i]] = j
        weights[fill[i]] = w
        fill[i] += 1
        indices[fill[j]] = i
        weights[fill[j]] = w
        fill[j] += 1
    # neighbor lists sorted by id for deterministic iteration
    for i in range(n):
        lo, hi = indptr[i], indptr[i + 1]
        order = np.argsort(indices[lo:hi], kind="stable")
        indices[lo:hi] = indices[lo:hi][order]
        weights[lo:hi] = weights[lo:hi][order]
    return WeightedGraph(n, indptr, indices, weights)


def laplacian_apply(g, x):
    """(D - A) x without forming the matrix."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise DimensionMismatch(f"expected vector of length {g.n}, got {x.shape}")
    ax = np.zeros(g.n)
    np.add.at(ax, _row_of(g), g.weights * x[g.indices])
    return g.degrees * x - ax


def _row_of(g):
    rows = np.repeat(np.arange(g.n), np.diff(g.indptr))
    return rows


def validate(g):
    """Check the WeightedGraph invariants; return a list of Violations."""
    out = []
    seen = {}
    for i in range(g.n):
        lo, hi = g.indptr[i], g.indptr[i + 1]
        nbrs = g.indices[lo:hi]
        ws = g.weights[lo:hi]
        for j, w in zip(nbrs, ws):
            if j == i:
                out.append(Violation("SelfLoop", (i,)))
            if w <= 0:
                out.append(Violation("NegativeWeight", (i, int(j))))
            seen[(i, int(j))] = float(w)
        if len(set(map(int, nbrs))) != len(nbrs):
            out.append(Violation("DuplicateEdge", (i,)))
        dsum = float(ws.sum())
        tol = 1e-12 * max(1.0, abs(dsum)) * max(1, len(ws))
        if abs(dsum - g.degrees[i]) > tol:
            out.append(Violation("DegreeMismatch", (i,)))
    for (i, j), w in seen.items():
        back = seen.get((j, i))
        if back is None or back != w:
            if i < j:  # report each asymmetric pair once
                out.append(Violation("SymmetryViolation", (i, j)))
            elif (j, i) not in seen:
                out.append(Violation("SymmetryViolation", (j, i)))
    return out


# -- file I/O ---------------------------------------------------------------

def write_graph(g, path):
    """Write edge-list format: one 'i j w' line per undirected edge."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"# forestrace edge list: n={g.n} m={g.m_edges}\n")
        for i, j, w in g.edges():
            f.write(f"{i} {j} {w!r}\n")


def read_graph(path):
    """Read the edge-list format ('i j w' lines, '#' comments)."""
    rows = []
    declared_n = None
    with open(path, "r", encoding="utf-8") as f:
        first = f.readline()
        if first.startswith("%%MatrixMarket"):
            raise FormatViolation(
                "Matrix Market input is for SDD matrices; use the --sdd path")
        lines = [first] + f.readlines()
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            if "n=" in stripped:
                try:
                    declared_n = int(stripped.split("n=")[1].split()[0])
                except (ValueError, IndexError):
                    pass
            continue
        parts = stripped.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'i j w', got {stripped!r}", line=lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise ParseError(f"cannot parse {stripped!r}", line=lineno) from None
        rows.append((i, j, w))
    return from_edge_list(rows, n=declared_n)
