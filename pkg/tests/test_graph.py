import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import forestrace as fr
from forestrace.errors import (
    ConflictingDuplicate,
    DimensionMismatch,
    FormatViolation,
    NegativeWeight,
    ParseError,
    SelfLoop,
)
from conftest import random_graph


class TestFromEdgeList:
    def test_single_edge(self):
        g = fr.from_edge_list([(0, 1, 1.0)])
        assert g.n == 2
        assert np.allclose(g.degrees, [1.0, 1.0])

    def test_triangle(self):
        g = fr.from_edge_list([(0, 1, 1), (1, 2, 1), (2, 0, 1)])
        assert g.n == 3
        assert np.allclose(g.degrees, [2.0, 2.0, 2.0])

    def test_duplicate_merge(self):
        g = fr.from_edge_list([(0, 1, 2), (1, 0, 2)])
        assert g.m_edges == 1
        assert np.allclose(g.degrees, [2.0, 2.0])

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoop):
            fr.from_edge_list([(1, 1, 1.0)])

    def test_negative_weight_rejected(self):
        with pytest.raises(NegativeWeight):
            fr.from_edge_list([(0, 1, -1.0)])

    def test_conflicting_duplicate_rejected(self):
        with pytest.raises(ConflictingDuplicate):
            fr.from_edge_list([(0, 1, 1.0), (1, 0, 2.0)])


class TestLaplacianApply:
    def test_constant_in_kernel(self, k3):
        assert np.allclose(fr.laplacian_apply(k3, np.ones(3)), 0.0)

    def test_single_edge(self):
        g = fr.from_edge_list([(0, 1, 3.5)])
        assert np.allclose(fr.laplacian_apply(g, [1.0, 0.0]), [3.5, -3.5])

    def test_k3_row(self, k3):
        assert np.allclose(fr.laplacian_apply(k3, [1.0, 0.0, 0.0]), [2, -1, -1])

    def test_dimension_mismatch(self, k3):
        with pytest.raises(DimensionMismatch):
            fr.laplacian_apply(k3, np.ones(4))

    def test_agrees_with_dense(self):
        for seed in range(5):
            g = random_graph(40, 0.2, seed)
            L = g.laplacian_dense()
            x = np.random.default_rng(seed).standard_normal(g.n)
            assert np.allclose(fr.laplacian_apply(g, x), L @ x, rtol=1e-12)


class TestValidate:
    def test_clean_graph(self, k3):
        assert fr.validate(k3) == []

    def test_corrupted_degree_cache(self, k3):
        k3.degrees.setflags(write=True)
        k3.degrees[1] += 0.5
        out = fr.validate(k3)
        assert any(v.kind == "DegreeMismatch" and v.where == (1,) for v in out)

    def test_asymmetric_weight(self):
        g = fr.from_edge_list([(0, 1, 1.0)])
        g.weights.setflags(write=True)
        g.weights[0] = 2.0  # 0 -> 1 direction only
        out = fr.validate(g)
        assert any(v.kind == "SymmetryViolation" for v in out)


class TestIO:
    def test_read_simple(self, tmp_path):
        p = tmp_path / "g.tsv"
        p.write_text("0 1 1.0\n1 2 1.0\n")
        g = fr.read_graph(p)
        assert g.n == 3 and g.m_edges == 2

    def test_round_trip(self, tmp_path):
        g = fr.gen_grid2d(2, 2)
        p = tmp_path / "grid.tsv"
        fr.write_graph(g, p)
        assert fr.read_graph(p) == g

    def test_malformed_line(self, tmp_path):
        p = tmp_path / "bad.tsv"
        p.write_text("0 x 1.0\n")
        with pytest.raises(ParseError) as ei:
            fr.read_graph(p)
        assert ei.value.line == 1

    def test_comments_ignored(self, tmp_path):
        p = tmp_path / "g.tsv"
        p.write_text("# a comment\n0 1 2.5\n")
        assert fr.read_graph(p).m_edges == 1

    def test_matrix_market_redirected(self, tmp_path):
        p = tmp_path / "m.mtx"
        p.write_text("%%MatrixMarket matrix coordinate real symmetric\n1 1 1\n1 1 2.0\n")
        with pytest.raises(FormatViolation):
            fr.read_graph(p)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 20))
def test_operator_symmetry_property(seed, n):
    g = random_graph(n, 0.4, seed)
    rng = np.random.default_rng(seed + 1)
    x, y = rng.standard_normal((2, n))
    lhs = x @ fr.laplacian_apply(g, y)
    rhs = y @ fr.laplacian_apply(g, x)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 20))
def test_quadratic_form_property(seed, n):
    g = random_graph(n, 0.4, seed)
    x = np.random.default_rng(seed + 2).standard_normal(n)
    quad = x @ fr.laplacian_apply(g, x)
    by_edges = sum(w * (x[i] - x[j]) ** 2 for i, j, w in g.edges())
    assert quad == pytest.approx(by_edges, rel=1e-9, abs=1e-9)
    assert quad >= -1e-9
