"""forestrace: regularized inverse-trace estimation on graph Laplacians.

Estimates s(q) = q * Tr((L + qI)^-1) by the mean root count of random
spanning forests sampled with interrupted loop-erased random walks,
alongside a Gaussian-probe + conjugate-gradient baseline and an exact
dense spectral oracle. Symmetric diagonally dominant matrices are handled
by reduction to a pair of Laplacians.
"""

from .forest import EstimatorResult, ForestSample, estimate_rf, sample_forest
from .generate import (
    gen_barabasi_albert,
    gen_grid2d,
    gen_grid3d,
    gen_knn_cloud,
    gen_ring,
    sample_heart_surface,
)
from .graph import (
    WeightedGraph,
    from_edge_list,
    laplacian_apply,
    read_graph,
    validate,
    write_graph,
)
from .probe import SolverConfig, cg_solve, estimate_girard, quadratic_form, smooth
from .sdd import (
    SddDecomposition,
    SddMatrix,
    build_laplacians,
    dd_decompose,
    estimate_sdd,
    read_matrix_market,
)
from .spectral import (
    SpectralSummary,
    eig_sym_dense,
    exact_s,
    graph_spectrum,
    var_girard,
    var_wilson,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
