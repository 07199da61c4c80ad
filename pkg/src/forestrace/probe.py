"""Gaussian-probe (Girard/Hutchinson) baseline and Tikhonov smoothing.

Each replicate draws a standard Gaussian probe r and evaluates the
quadratic form q * r^T (L + qI)^-1 r through a linear solver: either
Jacobi-preconditioned conjugate gradients on the matrix-free operator, or
a dense Cholesky factorization for desk-scale oracles.

Probe replicate l uses numpy's Philox keyed by (master_seed, l), with
coordinates drawn in ascending order, so runs are deterministic under any
parallel schedule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    DimensionMismatch,
    MaxIterationsExceeded,
    NonPositiveQ,
    TooLarge,
    ZeroReplicates,
)
from .forest import summarize
from .graph import laplacian_apply

DENSE_CAP = 2000


@dataclass(frozen=True)
class SolverConfig:
    kind: str = "cg_jacobi"  # cg_jacobi | dense_direct
    rel_tolerance: float = 1e-8
    max_iterations: int | None = None  # default 10 * n

    def __post_init__(self):
        if self.kind not in ("cg_jacobi", "dense_direct"):
            raise ValueError(f"unknown solver kind {self.kind!r}")
        if not self.rel_tolerance > 0:
            raise ValueError("rel_tolerance must be positive")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


def cg_solve(apply_op, precond_diag, b, cfg=SolverConfig()):
    """Jacobi-preconditioned CG for an SPD operator.

    Stops when ||A x - b|| <= rel_tolerance * ||b||. Returns
    (x, iterations, final_residual); raises MaxIterationsExceeded with the
    best iterate in the payload if the budget runs out.
    """
    b = np.asarray(b, dtype=np.float64)
    n = b.size
    max_it = cfg.max_iterations if cfg.max_iterations is not None else 10 * n
    inv_diag = 1.0 / np.asarray(precond_diag, dtype=np.float64)
    bnorm = np.linalg.norm(b)
    x = np.zeros(n)
    if bnorm == 0.0:
        return x, 0, 0.0
    r = b.copy()
    z = inv_diag * r
    p = z.copy()
    rz = r @ z
    rnorm = bnorm
    for it in range(1, max_it + 1):
        ap = apply_op(p)
        alpha = rz / (p @ ap)
        x = x + alpha * p
        r = r - alpha * ap
        rnorm = np.linalg.norm(r)
        if rnorm <= cfg.rel_tolerance * bnorm:
            return x, it, float(rnorm)
        z = inv_diag * r
        rz_new = r @ z
        p = z + (rz_new / rz) * p
        rz = rz_new
    raise MaxIterationsExceeded(
        f"CG did not converge in {max_it} iterations (residual {rnorm:.3e})",
        x=x, iterations=max_it, residual=float(rnorm))


def _shifted_apply(g, q):
    return lambda v: laplacian_apply(g, v) + q * v


def _dense_factor(g, q):
    if g.n > DENSE_CAP:
        raise TooLarge(f"dense_direct capped at n={DENSE_CAP}, got {g.n}")
    M = g.laplacian_dense()
    M[np.diag_indices_from(M)] += q
    return scipy.linalg.cho_factor(M)


def solve_shifted(g, q, b, cfg=SolverConfig()):
    """Solve (L + qI) x = b with the configured solver.

    Returns (x, iterations); iterations is 0 for the dense path.
    """
    if not q > 0:
        raise NonPositiveQ(f"q must be positive, got {q}")
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (g.n,):
        raise DimensionMismatch(f"expected vector of length {g.n}, got {b.shape}")
    if cfg.kind == "dense_direct":
        x = scipy.linalg.cho_solve(_dense_factor(g, q), b)
        return x, 0
    x, it, _ = cg_solve(_shifted_apply(g, q), g.degrees + q, b, cfg)
    return x, it


def quadratic_form(g, q, r, cfg=SolverConfig()):
    """q * r^T (L + qI)^-1 r."""
    x, _ = solve_shifted(g, q, r, cfg)
    return float(q * (np.asarray(r, dtype=np.float64) @ x))


def smooth(g, q, y, cfg=SolverConfig()):
    """Tikhonov smoother: x_hat = q (qI + L)^-1 y."""
    x, _ = solve_shifted(g, q, y, cfg)
    return q * x


def _probe(master_seed, l, n):
    rng = np.random.Generator(np.random.Philox(key=[int(master_seed), int(l)]))
    return rng.standard_normal(n)


def estimate_girard(g, q, k, master_seed=0, cfg=SolverConfig()):
    """Mean of k Gaussian quadratic-form replicates."""
    if not q > 0:
        raise NonPositiveQ(f"q must be positive, got {q}")
    if k < 1:
        raise ZeroReplicates(f"need at least one replicate, got {k}")
    values = np.empty(k)
    total_iters = 0
    if cfg.kind == "dense_direct":
        factor = _dense_factor(g, q)  # one factorization shared by all probes
        chunk = max(1, 2 ** 22 // max(1, g.n))  # cap probe blocks at ~32 MB
        for lo in range(0, k, chunk):
            hi = min(k, lo + chunk)
            probes = np.stack([_probe(master_seed, l, g.n)
                               for l in range(lo, hi)])
            xs = scipy.linalg.cho_solve(factor, probes.T)
            values[lo:hi] = q * np.einsum("ln,nl->l", probes, xs)
        method = "girard_direct"
    else:
        apply_op = _shifted_apply(g, q)
        diag = g.degrees + q
        for l in range(k):
            r = _probe(master_seed, l, g.n)
            x, it, _ = cg_solve(apply_op, diag, r, cfg)
            values[l] = q * (r @ x)
            total_iters += it
        method = "girard_cg"
    return summarize(values, method, q, total_iters)
