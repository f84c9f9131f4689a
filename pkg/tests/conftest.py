import numpy as np
import pytest

from graphstream.graph import AttributedGraph


def random_graph(rng, n_nodes, p_edge=0.5, dim=2, graph_id=None, directed=False, edge_dim=0):
    x = rng.uniform(0.0, 3.0, size=(n_nodes, dim)).round(3)
    if directed:
        pairs = [(i, j) for i in range(n_nodes) for j in range(n_nodes) if i != j]
    else:
        pairs = [(i, j) for i in range(n_nodes) for j in range(i + 1, n_nodes)]
    edges = [p for p in pairs if rng.random() < p_edge]
    edge_attrs = [tuple(rng.uniform(-1.5, 1.5, size=edge_dim)) for _ in edges] if edge_dim else None
    gid = graph_id or f"g{rng.integers(1 << 30)}"
    return AttributedGraph.from_arrays(gid, x, edges, edge_attrs, directed=directed, node_attr_dim=dim,
                                       edge_attr_dim=edge_dim)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def triangle():
    return AttributedGraph.from_arrays("k3", [[0, 0], [1, 0], [0, 1]], [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def path3():
    return AttributedGraph.from_arrays("p3", [[0, 0], [1, 0], [2, 0]], [(0, 1), (1, 2)])
