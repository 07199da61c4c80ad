"""Random spanning forest sampler and the root-count estimator of s(q).

A forest is drawn by interrupted loop-erased random walks: starting at the
lowest-id unvisited node, each step either absorbs into the auxiliary node
with probability q/(q + d_i) or moves to a neighbor chosen proportionally
to edge weight. Loop erasure uses successor overwriting. The number of
roots of one forest is an unbiased estimate of s(q) = q * Tr((L + qI)^-1),
with per-forest variance q * sum_i lambda_i / (q + lambda_i)^2.

Replicate l of an estimation run uses a counter-based substream keyed by
(master_seed, l), so results do not depend on scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import NonPositiveQ, ZeroReplicates

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_U53 = 1.0 / 9007199254740992.0  # 2^-53


@dataclass(frozen=True)
class ForestSample:
    roots: frozenset
    steps: int
    q: float
    seed: int  # substream identifier actually used


@dataclass(frozen=True)
class EstimatorResult:
    mean: float
    sample_variance: float
    k: int
    stderr: float
    method: str  # forest | girard_cg | girard_direct | exact
    q: float
    cost: int  # total walk steps (forest) or total solver iterations (girard)


@njit(cache=True)
def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def _forest_walk(indptr, indices, cumw, degrees, q, seed):
    """One forest: returns (root mask, step count). seed is a uint64 counter base."""
    n = degrees.size
    succ = np.full(n, -1, np.int64)
    in_forest = np.zeros(n, np.bool_)
    is_root = np.zeros(n, np.bool_)
    counter = seed
    steps = 0
    for start in range(n):
        u = start
        while not in_forest[u]:
            counter += _GAMMA
            u1 = np.float64(_mix64(counter) >> np.uint64(11)) * _U53
            steps += 1
            d = degrees[u]
            if u1 * (q + d) < q:
                in_forest[u] = True
                is_root[u] = True
                break
            counter += _GAMMA
            t = np.float64(_mix64(counter) >> np.uint64(11)) * _U53 * d
            lo = indptr[u]
            hi = indptr[u + 1] - 1
            while lo < hi:
                mid = (lo + hi) // 2
                if cumw[mid] > t:
                    hi = mid
                else:
                    lo = mid + 1
            succ[u] = indices[lo]
            u = indices[lo]
        u = start
        while not in_forest[u]:
            in_forest[u] = True
            u = succ[u]
    return is_root, steps


@njit(cache=True)
def _replicate_counts(indptr, indices, cumw, degrees, q, seeds):
    k = seeds.size
    counts = np.empty(k, np.float64)
    steps = np.empty(k, np.int64)
    for l in range(k):
        is_root, s = _forest_walk(indptr, indices, cumw, degrees, q, seeds[l])
        counts[l] = np.float64(is_root.sum())
        steps[l] = s
    return counts, steps


def substream_seeds(master_seed, k, family=0):
    """Counter bases for replicates 0..k-1 of one (master_seed, family) run."""
    ms = np.uint64(int(master_seed) & 0xFFFFFFFFFFFFFFFF)
    fam = np.uint64(int(family) & 0xFFFFFFFFFFFFFFFF)
    ls = np.arange(k, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = ms * np.uint64(0xD1B54A32D192ED03) + fam * _GAMMA + ls
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
    return z


def sample_forest(g, q, seed=0):
    """Draw one random spanning forest; return its root set and step count."""
    if not q > 0:
        raise NonPositiveQ(f"q must be positive, got {q}")
    sub = substream_seeds(seed, 1)[0]
    is_root, steps = _forest_walk(
        g.indptr, g.indices, g.cumweights, g.degrees, float(q), sub)
    return ForestSample(roots=frozenset(np.flatnonzero(is_root).tolist()),
                        steps=int(steps), q=float(q), seed=int(sub))


def estimate_rf(g, q, k, master_seed=0):
    """Mean root count over k independent forests."""
    if not q > 0:
        raise NonPositiveQ(f"q must be positive, got {q}")
    if k < 1:
        raise ZeroReplicates(f"need at least one replicate, got {k}")
    seeds = substream_seeds(master_seed, k)
    counts, steps = _replicate_counts(
        g.indptr, g.indices, g.cumweights, g.degrees, float(q), seeds)
    return summarize(counts, "forest", q, int(steps.sum()))


def summarize(values, method, q, cost):
    """Replicate values -> EstimatorResult (ddof=1 sample variance)."""
    values = np.asarray(values, dtype=np.float64)
    k = values.size
    mean = float(values.mean())
    var = float(values.var(ddof=1)) if k > 1 else 0.0
    return EstimatorResult(mean=mean, sample_variance=var, k=k,
                           stderr=float(np.sqrt(var / k)), method=method,
                           q=float(q), cost=int(cost))
