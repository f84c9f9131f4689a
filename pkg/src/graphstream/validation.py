"""Input validation helpers shared by the estimators."""

from __future__ import annotations

import numpy as np
from sklearn.exceptions import NotFittedError

from graphstream.exceptions import DimensionMismatchError
from graphstream.graph import AttributedGraph


def check_graphs(X, validate: bool = False) -> list[AttributedGraph]:
    """Coerce ``X`` to a list of graphs, optionally checking every invariant."""
    if isinstance(X, AttributedGraph):
        raise TypeError("expected a sequence of graphs, got a single AttributedGraph")
    graphs = list(X)
    for g in graphs:
        if not isinstance(g, AttributedGraph):
            raise TypeError(f"expected AttributedGraph, got {type(g).__name__}")
        if validate:
            g.check()
    return graphs


def check_homogeneous(graphs) -> tuple[int, int, bool]:
    """Common ``(node_attr_dim, edge_attr_dim, directed)`` of a graph collection."""
    node_dims = {g.node_attr_dim for g in graphs if g.n_nodes}
    edge_dims = {g.edge_attr_dim for g in graphs if g.n_edges}
    kinds = {g.directed for g in graphs}
    if len(node_dims) > 1 or len(edge_dims) > 1 or len(kinds) > 1:
        raise DimensionMismatchError(
            f"graphs are not homogeneous: node dims {sorted(node_dims)}, edge dims {sorted(edge_dims)}, "
            f"directed flags {sorted(kinds)}"
        )
    return (node_dims.pop() if node_dims else 0, edge_dims.pop() if edge_dims else 0,
            kinds.pop() if kinds else False)


def check_labels(y, n_classes: int) -> np.ndarray:
    """Integer labels in ``1..n_classes``."""
    y = np.asarray(y)
    if y.ndim != 1:
        raise ValueError("labels must be one-dimensional")
    if y.size and not np.all(np.equal(np.mod(y, 1), 0)):
        raise ValueError("labels must be integers")
    y = y.astype(int)
    if y.size and (y.min() < 1 or y.max() > n_classes):
        raise ValueError(f"labels must lie in 1..{n_classes}")
    return y


def check_is_fitted(estimator, attribute: str):
    if not hasattr(estimator, attribute):
        raise NotFittedError(f"{type(estimator).__name__} is not fitted yet; call fit or warm_start first")
