import numpy as np
import pytest

import forestrace as fr
from forestrace.errors import MaxIterationsExceeded, NonPositiveQ, TooLarge
from forestrace.probe import SolverConfig, solve_shifted
from conftest import random_graph


def edgeless(n):
    return fr.from_edge_list([], n=n)


class TestCgSolve:
    def test_diagonal_system_one_iteration(self):
        g = edgeless(2)
        b = np.array([4.0, 6.0])
        x, it, res = fr.cg_solve(lambda v: fr.laplacian_apply(g, v) + 2.0 * v,
                                 g.degrees + 2.0, b)
        assert np.allclose(x, [2.0, 3.0])
        assert it == 1

    def test_single_edge_analytic(self, k2):
        # (L + I) = [[2,-1],[-1,2]], b = (1,1) -> x = (1,1)
        x, it, _ = fr.cg_solve(lambda v: fr.laplacian_apply(k2, v) + v,
                               k2.degrees + 1.0, np.ones(2))
        assert np.allclose(x, [1.0, 1.0], atol=1e-8)

    def test_residual_postcondition(self):
        g = random_graph(30, 0.3, seed=4)
        b = np.random.default_rng(0).standard_normal(30)
        q = 0.3
        x, _, _ = fr.cg_solve(lambda v: fr.laplacian_apply(g, v) + q * v,
                              g.degrees + q, b)
        res = np.linalg.norm(fr.laplacian_apply(g, x) + q * x - b)
        assert res <= 1e-8 * np.linalg.norm(b)

    def test_max_iterations_payload(self, k2):
        cfg = SolverConfig(rel_tolerance=1e-14, max_iterations=1)
        with pytest.raises(MaxIterationsExceeded) as ei:
            fr.cg_solve(lambda v: fr.laplacian_apply(k2, v) + 1e-8 * v,
                        k2.degrees + 1e-8,
                        np.array([1.0, -0.5]), cfg)
        assert ei.value.x is not None
        assert ei.value.iterations == 1

    def test_agrees_with_dense(self):
        for seed in range(4):
            g = random_graph(80, 0.1, seed)
            b = np.random.default_rng(seed).standard_normal(80)
            x_cg, _ = solve_shifted(g, 0.9, b, SolverConfig(kind="cg_jacobi"))
            x_dd, _ = solve_shifted(g, 0.9, b, SolverConfig(kind="dense_direct"))
            assert np.linalg.norm(x_cg - x_dd) <= 1e-6 * np.linalg.norm(x_dd)

    def test_dense_too_large(self):
        g = edgeless(2001)
        with pytest.raises(TooLarge):
            solve_shifted(g, 1.0, np.ones(2001), SolverConfig(kind="dense_direct"))


class TestQuadraticForm:
    def test_single_node(self):
        assert fr.quadratic_form(edgeless(1), 1.0, np.array([2.0])) == pytest.approx(4.0)

    def test_edgeless_pair(self):
        assert fr.quadratic_form(edgeless(2), 3.0, np.ones(2)) == pytest.approx(2.0)

    def test_kernel_direction(self, k3):
        assert fr.quadratic_form(k3, 1.0, np.ones(3)) == pytest.approx(3.0)


class TestEstimateGirard:
    def test_edgeless_norm_squared(self):
        g = edgeless(20)
        r = fr.estimate_girard(g, 1.7, 50000, master_seed=3)
        assert abs(r.mean - 20.0) <= 3 * r.stderr

    def test_k2_mean_and_variance(self, k2):
        r = fr.estimate_girard(k2, 1.0, 50000, master_seed=4,
                               cfg=SolverConfig(kind="dense_direct"))
        assert abs(r.mean - 4 / 3) <= 3 * r.stderr
        assert r.sample_variance == pytest.approx(20 / 9, rel=0.15)

    def test_matches_oracle_small_graph(self):
        g = random_graph(9, 0.5, seed=6)
        spec = fr.graph_spectrum(g)
        r = fr.estimate_girard(g, 0.6, 100000, master_seed=8,
                               cfg=SolverConfig(kind="dense_direct"))
        assert abs(r.mean - fr.exact_s(spec, 0.6)) <= 4 * r.stderr

    def test_cg_and_direct_agree(self):
        g = random_graph(60, 0.15, seed=2)
        a = fr.estimate_girard(g, 0.8, 50, master_seed=5)
        b = fr.estimate_girard(g, 0.8, 50, master_seed=5,
                               cfg=SolverConfig(kind="dense_direct"))
        assert a.mean == pytest.approx(b.mean, rel=1e-5)

    def test_non_positive_q(self, k2):
        with pytest.raises(NonPositiveQ):
            fr.estimate_girard(k2, -1.0, 10)


def test_probe_identity_fixed_matrix():
    # E[r^T M r] = Tr M for any fixed symmetric matrix
    rng = np.random.default_rng(12)
    M = rng.standard_normal((5, 5))
    M = (M + M.T) / 2
    probes = rng.standard_normal((200000, 5))
    vals = np.einsum("li,ij,lj->l", probes, M, probes)
    se = vals.std(ddof=1) / np.sqrt(len(vals))
    assert vals.mean() == pytest.approx(np.trace(M), abs=4 * se)


class TestSmooth:
    def test_edgeless_identity(self):
        y = np.array([1.0, -2.0, 0.5])
        assert np.allclose(fr.smooth(edgeless(3), 2.0, y), y)

    def test_constant_preserved(self, k3):
        y = np.full(3, 4.2)
        assert np.allclose(fr.smooth(k3, 0.5, y), y, atol=1e-8)

    def test_smooths_noisy_step(self):
        g = fr.gen_ring(64)
        rng = np.random.default_rng(7)
        y = np.where(np.arange(64) < 32, 1.0, 0.0) + 0.2 * rng.standard_normal(64)
        xh = fr.smooth(g, 1.0, y)
        assert np.linalg.norm(xh) <= np.linalg.norm(y)
        assert xh @ fr.laplacian_apply(g, xh) <= y @ fr.laplacian_apply(g, y)
