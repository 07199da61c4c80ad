"""Exact desk-scale ground truth from dense symmetric eigendecompositions.

All closed-form quantities used in tests live here: the regularized
inverse trace s(q) = sum_i q/(lambda_i + q), and the per-sample variances
of the forest and Gaussian-probe estimators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonPositiveQ, NotSymmetric, TooLarge

MAX_DENSE_N = 2000


@dataclass(frozen=True)
class SpectralSummary:
    eigenvalues: np.ndarray  # ascending
    n: int = field(default=0)

    def __post_init__(self):
        vals = np.sort(np.asarray(self.eigenvalues, dtype=np.float64))
        object.__setattr__(self, "eigenvalues", vals)
        object.__setattr__(self, "n", vals.size)


def eig_sym_dense(M):
    """Eigenvalues of a dense symmetric matrix, n <= 2000."""
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSymmetric(f"matrix is not square: {M.shape}")
    n = M.shape[0]
    if n > MAX_DENSE_N:
        raise TooLarge(f"dense eigensolve capped at n={MAX_DENSE_N}, got {n}")
    scale = np.abs(M).max() if n else 0.0
    if scale > 0 and np.abs(M - M.T).max() > 1e-12 * scale:
        raise NotSymmetric("matrix is not symmetric to 1e-12 relative")
    return SpectralSummary(np.linalg.eigvalsh(M))


def graph_spectrum(g):
    """SpectralSummary of a graph's Laplacian (desk-scale)."""
    return eig_sym_dense(g.laplacian_dense())


def exact_s(spec, q):
    """s(q) = sum_i q / (lambda_i + q)."""
    _check_q(q)
    return float(np.sum(q / (spec.eigenvalues + q)))


def var_wilson(spec, q):
    """Per-forest variance of the root-count estimator: q * sum lambda/(q+lambda)^2."""
    _check_q(q)
    lam = spec.eigenvalues
    return float(q * np.sum(lam / (q + lam) ** 2))


def var_girard(spec, q):
    """Per-probe variance of the Gaussian quadratic-form estimator: sum 2q^2/(q+lambda)^2."""
    _check_q(q)
    return float(np.sum(2.0 * q * q / (q + spec.eigenvalues) ** 2))


def _check_q(q):
    if not q > 0:
        raise NonPositiveQ(f"q must be positive, got {q}")
