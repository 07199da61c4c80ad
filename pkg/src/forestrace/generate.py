"""Seedable generators for the benchmark graph families.

All generators are pure functions of their parameters and seed: identical
inputs produce identical edge sets.
"""

from __future__ import annotations

import numpy as np

from .errors import BadK, BadParameters, DuplicatePoints, SizeTooSmall
from .graph import from_edge_list

FAMILIES = ("ring", "grid2d", "grid3d", "barabasi_albert", "knn_cloud")


def gen_ring(n):
    """Cycle graph on n nodes, unit weights."""
    if n < 3:
        raise SizeTooSmall(f"ring needs n >= 3, got {n}")
    return from_edge_list((i, (i + 1) % n, 1.0) for i in range(n))


def gen_grid2d(rows, cols):
    """Non-periodic 2D lattice with 4-neighbor connectivity, unit weights."""
    if rows < 2 or cols < 2:
        raise SizeTooSmall(f"grid2d needs dims >= 2, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                edges.append((i, i + 1, 1.0))
            if r + 1 < rows:
                edges.append((i, i + cols, 1.0))
    return from_edge_list(edges)


def gen_grid3d(a, b, c):
    """Non-periodic 3D lattice with 6-neighbor connectivity, unit weights."""
    if min(a, b, c) < 2:
        raise SizeTooSmall(f"grid3d needs dims >= 2, got {a}x{b}x{c}")
    edges = []
    for x in range(a):
        for y in range(b):
            for z in range(c):
                i = (x * b + y) * c + z
                if z + 1 < c:
                    edges.append((i, i + 1, 1.0))
                if y + 1 < b:
                    edges.append((i, i + c, 1.0))
                if x + 1 < a:
                    edges.append((i, i + b * c, 1.0))
    return from_edge_list(edges)


def gen_barabasi_albert(n, m, seed=0):
    """Preferential attachment: clique of m+1 seed nodes, then each new node
    attaches m edges to distinct existing nodes with probability proportional
    to current degree. Average degree approaches 2m."""
    if not 1 <= m < n:
        raise BadParameters(f"need 1 <= m < n, got m={m}, n={n}")
    rng = np.random.Generator(np.random.Philox(key=[int(seed), 0xBA]))
    edges = [(i, j, 1.0) for i in range(m + 1) for j in range(i + 1, m + 1)]
    # endpoint multiset: each node appears once per incident edge
    endpoints = [i for i in range(m + 1) for _ in range(m)]
    for v in range(m + 1, n):
        targets = set()
        while len(targets) < m:
            draws = rng.integers(0, len(endpoints), size=m - len(targets))
            for d in draws:
                targets.add(endpoints[d])
        for t in sorted(targets):
            edges.append((t, v, 1.0))
            endpoints.append(t)
            endpoints.append(v)
    return from_edge_list(edges, n=n)


def gen_knn_cloud(points, k):
    """Symmetrized k-nearest-neighbor graph (union rule), unit weights.

    Edge (i, j) is present iff j is among the k Euclidean-nearest of i or
    vice versa; distance ties break toward the lower index.
    """
    pts = np.asarray(points, dtype=np.float64)
    n = pts.shape[0]
    if not 1 <= k < n:
        raise BadK(f"need 1 <= k < n, got k={k}, n={n}")
    if np.unique(pts, axis=0).shape[0] != n:
        raise DuplicatePoints("points must be pairwise distinct")
    sq = np.sum(pts * pts, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (pts @ pts.T)
    np.maximum(d2, 0.0, out=d2)
    np.fill_diagonal(d2, np.inf)
    pairs = set()
    for i in range(n):
        nearest = np.argsort(d2[i], kind="stable")[:k]  # stable: ties -> lower index
        for j in nearest:
            pairs.add((min(i, int(j)), max(i, int(j))))
    return from_edge_list((i, j, 1.0) for i, j in sorted(pairs))


def sample_heart_surface(n, noise_sigma=0.01, seed=0):
    """n points on a heart-shaped parametric surface plus Gaussian offset.

    Parametrization over theta in [0, pi], phi in [0, 2pi]:
      x = sin(theta) cos(phi)
      y = sin(theta) sin(phi) (1 + exp(-0.1 theta))
      z = cos(theta) (0.1 + theta)
    """
    if noise_sigma < 0:
        raise BadParameters("noise_sigma must be >= 0")
    rng = np.random.Generator(np.random.Philox(key=[int(seed), 0x4EA27]))
    theta = rng.uniform(0.0, np.pi, size=n)
    phi = rng.uniform(0.0, 2.0 * np.pi, size=n)
    pts = heart_surface_point(theta, phi)
    if noise_sigma > 0:
        pts = pts + noise_sigma * rng.standard_normal((n, 3))
    return pts


def heart_surface_point(theta, phi):
    """The noiseless surface map; exposed so tests can check membership."""
    x = np.sin(theta) * np.cos(phi)
    y = np.sin(theta) * np.sin(phi) * (1.0 + np.exp(-0.1 * theta))
    z = np.cos(theta) * (0.1 + theta)
    return np.stack([x, y, z], axis=-1)


def generate(family, *, n=None, rows=None, cols=None, dims=None, m=None,
             k=None, noise=0.01, seed=0):
    """Dispatch by family name; used by the CLI and the bench planner."""
    if family == "ring":
        return gen_ring(n)
    if family == "grid2d":
        return gen_grid2d(rows or dims[0], cols or dims[1])
    if family == "grid3d":
        return gen_grid3d(*dims)
    if family == "barabasi_albert":
        return gen_barabasi_albert(n, m if m is not None else 15, seed)
    if family == "knn_cloud":
        pts = sample_heart_surface(n, noise_sigma=noise, seed=seed)
        return gen_knn_cloud(pts, k if k is not None else 8)
    raise BadParameters(f"unknown family {family!r}; choose from {FAMILIES}")
