"""Symmetric diagonally dominant matrices reduced to a pair of Laplacians.

A symmetric matrix G with G_ii >= sum_j |G_ij| splits into diagonal parts
D1 (off-diagonal absolute row sums) and D2 (the dominance surplus) plus
the positive and negative off-diagonal parts Ap and An. Two graphs follow:

  L1 = D1 + An - Ap                      (n nodes)
  L2 = [[D1 + D2/2 + An, -D2/2 - Ap],
        [-D2/2 - Ap, D1 + D2/2 + An]]    (2n nodes)

whose spectra satisfy lambda(L2) = lambda(L1) u lambda(G), so
s_G(q) = s_L2(q) - s_L1(q) and the forest estimator applies to G by
running on both graphs and subtracting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InternalInconsistency,
    NonPositiveQ,
    NotDiagonallyDominant,
    NotSymmetric,
    ParseError,
)
from .forest import EstimatorResult, estimate_rf, substream_seeds
from .graph import from_edge_list


@dataclass(frozen=True)
class SddMatrix:
    """Sparse symmetric diagonally dominant matrix.

    offdiag maps (i, j) with i < j to the entry value; diag is length n.
    """
    n: int
    diag: np.ndarray
    offdiag: dict

    @classmethod
    def from_dense(cls, M, tol=1e-12):
        M = np.asarray(M, dtype=np.float64)
        n = M.shape[0]
        if M.ndim != 2 or M.shape[1] != n:
            raise NotSymmetric(f"matrix is not square: {M.shape}")
        scale = np.abs(M).max() if n else 0.0
        if scale > 0 and np.abs(M - M.T).max() > tol * scale:
            raise NotSymmetric("matrix is not symmetric")
        offdiag = {}
        for i in range(n):
            for j in range(i + 1, n):
                if M[i, j] != 0.0:
                    offdiag[(i, j)] = float(M[i, j])
        out = cls(n=n, diag=np.diag(M).astype(np.float64).copy(), offdiag=offdiag)
        out.check_dominance()
        return out

    def check_dominance(self, tol=1e-12):
        rowsum = np.zeros(self.n)
        for (i, j), v in self.offdiag.items():
            rowsum[i] += abs(v)
            rowsum[j] += abs(v)
        for i in range(self.n):
            if self.diag[i] < rowsum[i] * (1.0 - tol) - tol:
                raise NotDiagonallyDominant(i)

    def to_dense(self):
        M = np.diag(self.diag).astype(np.float64)
        for (i, j), v in self.offdiag.items():
            M[i, j] = v
            M[j, i] = v
        return M


@dataclass(frozen=True)
class SddDecomposition:
    d1: np.ndarray            # off-diagonal absolute row sums
    d2: np.ndarray            # dominance surplus G_ii - D1_ii
    ap: dict                  # positive off-diagonal entries, (i<j) -> value
    an: dict                  # negative off-diagonal entries, (i<j) -> value

    @property
    def n(self):
        return self.d1.size


def dd_decompose(G):
    """Split G into D1 + D2 + Ap + An."""
    d1 = np.zeros(G.n)
    ap, an = {}, {}
    for (i, j), v in G.offdiag.items():
        d1[i] += abs(v)
        d1[j] += abs(v)
        if v > 0:
            ap[(i, j)] = v
        else:
            an[(i, j)] = v
    d2 = G.diag - d1
    for i in range(G.n):
        if d2[i] < -1e-12 * max(1.0, abs(G.diag[i])):
            raise NotDiagonallyDominant(i)
    d2 = np.maximum(d2, 0.0)
    return SddDecomposition(d1=d1, d2=d2, ap=ap, an=an)


def build_laplacians(dec):
    """The (L1, L2) graph pair for a decomposition; L2 has 2n nodes.

    L1's edge (i, j) has weight |G_ij|. In L2, negative entries become
    within-layer edges, positive entries become cross-layer edges, and the
    surplus D2 adds a cross edge of weight D2(i,i)/2 between i and i+n.
    """
    n = dec.n
    edges1 = []
    edges2 = []
    for (i, j), v in dec.an.items():
        w = -v
        edges1.append((i, j, w))
        edges2.append((i, j, w))
        edges2.append((i + n, j + n, w))
    for (i, j), v in dec.ap.items():
        edges1.append((i, j, v))
        edges2.append((i, j + n, v))
        edges2.append((j, i + n, v))
    for i in range(n):
        if dec.d2[i] > 0.0:
            edges2.append((i, i + n, dec.d2[i] / 2.0))
    g1 = from_edge_list(edges1, n=n)
    g2 = from_edge_list(edges2, n=2 * n)
    # degrees of g1 must reproduce D1 exactly up to rounding
    if not np.allclose(g1.degrees, dec.d1, rtol=1e-12, atol=1e-12):
        raise InternalInconsistency("L1 degrees do not match D1")
    expect2 = np.concatenate([dec.d1 + dec.d2 / 2.0, dec.d1 + dec.d2 / 2.0])
    if not np.allclose(g2.degrees, expect2, rtol=1e-12, atol=1e-12):
        raise InternalInconsistency("L2 degrees do not match D1 + D2/2")
    return g1, g2


def estimate_sdd(G, q, k, master_seed=0):
    """Forest estimate of s_G(q) by the two-graph subtraction.

    The two runs use distinct substream families, so their replicates are
    independent; the variance field carries the sum of both sample
    variances.
    """
    if not q > 0:
        raise NonPositiveQ(f"q must be positive, got {q}")
    g1, g2 = build_laplacians(dd_decompose(G))
    seed1 = int(substream_seeds(master_seed, 1, family=1)[0])
    seed2 = int(substream_seeds(master_seed, 1, family=2)[0])
    r2 = estimate_rf(g2, q, k, master_seed=seed2)
    r1 = estimate_rf(g1, q, k, master_seed=seed1)
    var = r2.sample_variance + r1.sample_variance
    return EstimatorResult(mean=r2.mean - r1.mean, sample_variance=var, k=k,
                           stderr=math.sqrt(var / k), method="forest",
                           q=float(q), cost=r2.cost + r1.cost)


# -- Matrix Market input ------------------------------------------------------

def read_matrix_market(path):
    """Read a coordinate real symmetric Matrix Market file as an SddMatrix."""
    with open(path, "r", encoding="utf-8") as f:
        lines = f.readlines()
    if not lines or not lines[0].startswith("%%MatrixMarket"):
        raise ParseError("missing %%MatrixMarket header", line=1)
    header = lines[0].split()
    if [t.lower() for t in header[1:]] != ["matrix", "coordinate", "real", "symmetric"]:
        raise ParseError(
            f"unsupported header {lines[0].strip()!r}; need "
            "'matrix coordinate real symmetric'", line=1)
    idx = 1
    while idx < len(lines) and lines[idx].lstrip().startswith("%"):
        idx += 1
    if idx >= len(lines):
        raise ParseError("missing size line", line=len(lines))
    parts = lines[idx].split()
    try:
        nrows, ncols, nnz = int(parts[0]), int(parts[1]), int(parts[2])
    except (ValueError, IndexError):
        raise ParseError(f"bad size line {lines[idx].strip()!r}",
                         line=idx + 1) from None
    if nrows != ncols:
        raise ParseError("matrix must be square", line=idx + 1)
    diag = np.zeros(nrows)
    offdiag = {}
    count = 0
    for lineno in range(idx + 1, len(lines)):
        stripped = lines[lineno].strip()
        if not stripped or stripped.startswith("%"):
            continue
        parts = stripped.split()
        try:
            i, j = int(parts[0]) - 1, int(parts[1]) - 1
            v = float(parts[2])
        except (ValueError, IndexError):
            raise ParseError(f"bad entry {stripped!r}", line=lineno + 1) from None
        if not (0 <= i < nrows and 0 <= j < ncols):
            raise ParseError(f"index out of range in {stripped!r}", line=lineno + 1)
        count += 1
        if i == j:
            diag[i] = v
        elif v != 0.0:
            offdiag[(min(i, j), max(i, j))] = v
    if count != nnz:
        raise ParseError(f"expected {nnz} entries, found {count}", line=len(lines))
    G = SddMatrix(n=nrows, diag=diag, offdiag=offdiag)
    G.check_dominance()
    return G


def write_matrix_market(G, path):
    """Write the lower-triangle-plus-diagonal of an SddMatrix."""
    entries = [(i, i, float(G.diag[i])) for i in range(G.n)]
    entries += [(j, i, float(v)) for (i, j), v in sorted(G.offdiag.items())]
    with open(path, "w", encoding="utf-8") as f:
        f.write("%%MatrixMarket matrix coordinate real symmetric\n")
        f.write(f"{G.n} {G.n} {len(entries)}\n")
        for i, j, v in sorted(entries):
            f.write(f"{i + 1} {j + 1} {v!r}\n")
    return path
