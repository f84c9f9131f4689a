"""Prequential G-mean and the two-feature graph baseline."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from graphstream.graph import AttributedGraph, adjacency
from graphstream.validation import check_graphs


def gmean(recalls: Sequence[float]) -> float:
    """Geometric mean of per-class recalls; zero as soon as one recall is zero."""
    recalls = list(recalls)
    if not recalls:
        raise ValueError("gmean needs at least one recall")
    for r in recalls:
        if not 0.0 <= r <= 1.0:
            raise ValueError(f"recall outside [0, 1]: {r}")
    if min(recalls) == 0.0:
        return 0.0
    return math.exp(sum(math.log(r) for r in recalls) / len(recalls))


class PrequentialTracker:
    """Per-class recalls under exponential fading.

    Each update decays every class's hit and total counts by ``fading_factor``
    before adding the new outcome. Classes that have not been seen yet are left
    out of the G-mean.
    """

    def __init__(self, n_classes: int, fading_factor: float = 0.99):
        if n_classes < 1:
            raise ValueError("n_classes must be >= 1")
        if not 0.0 < fading_factor <= 1.0:
            raise ValueError("fading_factor must lie in (0, 1]")
        self.n_classes = n_classes
        self.fading_factor = fading_factor
        self.hits = np.zeros(n_classes)
        self.totals = np.zeros(n_classes)

    def update(self, y: int, y_pred: int) -> float:
        k = self.n_classes
        if not (1 <= y <= k and 1 <= y_pred <= k):
            raise ValueError(f"labels must lie in 1..{k}, got y={y}, y_pred={y_pred}")
        self.hits *= self.fading_factor
        self.totals *= self.fading_factor
        self.totals[y - 1] += 1.0
        if y == y_pred:
            self.hits[y - 1] += 1.0
        return self.gmean

    @property
    def recalls(self) -> list[float | None]:
        return [float(min(1.0, h / n)) if n > 0 else None for h, n in zip(self.hits, self.totals)]

    @property
    def gmean(self) -> float:
        seen = [r for r in self.recalls if r is not None]
        return gmean(seen) if seen else 0.0


def laplacian(g: AttributedGraph) -> np.ndarray:
    a = adjacency(g).astype(float)
    return np.diag(a.sum(axis=1)) - a


def jacobi_eigenvalues(matrix: np.ndarray, tol: float = 1e-10, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted descending."""
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.T):
        raise ValueError("matrix must be symmetric")
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.triu(a, 1) ** 2)))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-15 * (abs(a[p, p]) + abs(a[q, q])) or abs(apq) < 1e-300:
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
    return np.sort(np.diag(a))[::-1]


def edge_density(g: AttributedGraph) -> float:
    """``M / (N (N - 1))`` with undirected edges counted once."""
    n = g.n_nodes
    if n < 2:
        raise ValueError(f"edge density needs at least 2 nodes, graph {g.id!r} has {n}")
    return g.n_edges / (n * (n - 1))


def spectral_gap(g: AttributedGraph) -> float:
    """Difference between the two largest Laplacian eigenvalue magnitudes."""
    if g.directed:
        raise ValueError("spectral gap is only defined here for undirected graphs")
    if g.n_nodes < 2:
        raise ValueError(f"spectral gap needs at least 2 nodes, graph {g.id!r} has {g.n_nodes}")
    eig = np.sort(np.abs(jacobi_eigenvalues(laplacian(g))))[::-1]
    return float(max(0.0, eig[0] - eig[1]))


class GraphFeatureExtractor(BaseEstimator, TransformerMixin):
    """Maps graphs to ``[edge_density, spectral_gap]``.

    Graphs with fewer than two nodes have neither feature defined; they are
    mapped to ``degenerate_value`` so that a stream never stalls on them.
    """

    def __init__(self, degenerate_value=0.0):
        self.degenerate_value = degenerate_value

    def fit(self, X, y=None):
        check_graphs(X)
        self.n_features_out_ = 2
        return self

    def transform_one(self, g: AttributedGraph) -> np.ndarray:
        if g.n_nodes < 2:
            return np.full(2, float(self.degenerate_value))
        return np.array([edge_density(g), spectral_gap(g)])

    def transform(self, X):
        graphs = check_graphs(X)
        return np.array([self.transform_one(g) for g in graphs]).reshape(len(graphs), 2)

    def get_feature_names_out(self, input_features=None):
        return np.array(["edge_density", "spectral_gap"], dtype=object)
