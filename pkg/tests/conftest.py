import numpy as np
import pytest

import forestrace as fr


def random_graph(n, p, seed, wlo=0.5, whi=2.0):
    """Erdos-Renyi-style weighted graph; connected not guaranteed."""
    rng = np.random.default_rng(seed)
    edges = [(i, j, float(rng.uniform(wlo, whi)))
             for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return fr.from_edge_list(edges, n=n)


def random_sdd(n, seed, density=0.6):
    """Random symmetric diagonally dominant matrix with mixed-sign entries."""
    rng = np.random.default_rng(seed)
    M = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                M[i, j] = M[j, i] = rng.uniform(-2.0, 2.0)
    surplus = rng.uniform(0.0, 1.5, size=n)
    for i in range(n):
        M[i, i] = np.abs(M[i]).sum() + surplus[i]
    return M


@pytest.fixture
def k3():
    return fr.from_edge_list([(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])


@pytest.fixture
def k2():
    return fr.from_edge_list([(0, 1, 1.0)])
