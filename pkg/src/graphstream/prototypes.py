"""Per-class graph memory, Centers prototype selection and distance embeddings."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from graphstream.exceptions import EmptyClassError
from graphstream.ged import DistanceCache, GedCostModel, GedPolicy, GraphDistance, pairwise_distances
from graphstream.graph import AttributedGraph
from graphstream.validation import check_graphs, check_is_fitted


class MemoryItem(NamedTuple):
    graph: AttributedGraph
    arrival: int


class ClassMemory:
    """One FIFO queue of capacity ``L`` per class label, oldest entry first."""

    def __init__(self, labels: Sequence[int], capacity: int):
        if capacity < 1:
            raise ValueError("memory capacity must be >= 1")
        self.labels = tuple(labels)
        self.capacity = capacity
        self.queues: dict[int, deque[MemoryItem]] = {c: deque() for c in self.labels}

    def _queue(self, label):
        if label not in self.queues:
            raise ValueError(f"unknown class label {label!r}; expected one of {self.labels}")
        return self.queues[label]

    def append(self, graph: AttributedGraph, label: int, arrival: int) -> MemoryItem | None:
        q = self._queue(label)
        if q and arrival <= q[-1].arrival:
            raise ValueError("arrival indices must increase within a class queue")
        q.append(MemoryItem(graph, arrival))
        if len(q) > self.capacity:
            return q.popleft()
        return None

    def graphs(self, label: int) -> list[AttributedGraph]:
        return [item.graph for item in self._queue(label)]

    def __len__(self):
        return sum(len(q) for q in self.queues.values())


class EmbeddingMemory:
    """Vectors index-aligned with a :class:`ClassMemory`."""

    def __init__(self, labels: Sequence[int], capacity: int):
        self.labels = tuple(labels)
        self.capacity = capacity
        self.queues: dict[int, deque[np.ndarray]] = {c: deque() for c in self.labels}

    def append(self, vector: np.ndarray, label: int) -> np.ndarray | None:
        q = self.queues[label]
        q.append(np.asarray(vector, dtype=float))
        if len(q) > self.capacity:
            return q.popleft()
        return None

    def training_set(self) -> tuple[np.ndarray, np.ndarray]:
        """All stored vectors with their labels, class-major."""
        xs, ys = [], []
        for c in self.labels:
            for v in self.queues[c]:
                xs.append(v)
                ys.append(c)
        return np.array(xs), np.array(ys, dtype=int)

    def __len__(self):
        return sum(len(q) for q in self.queues.values())


def append(memory: ClassMemory, embeddings: EmbeddingMemory, graph: AttributedGraph, label: int,
           vector: np.ndarray, arrival: int) -> AttributedGraph | None:
    """Append to both memories together; returns the evicted graph, if any."""
    evicted = memory.append(graph, label, arrival)
    embeddings.append(vector, label)
    return evicted.graph if evicted is not None else None


def select_prototypes(distances: np.ndarray, n_prototypes: int) -> list[int]:
    """Indices of ``n_prototypes`` medians chosen greedily by the Centers rule.

    Each round picks the candidate whose summed distance to the other remaining
    candidates is smallest, then removes it from both the candidates and the
    sums. Ties go to the lowest index, i.e. the oldest graph when rows are in
    arrival order.
    """
    d = np.asarray(distances, dtype=float)
    n = d.shape[0]
    if d.shape != (n, n):
        raise ValueError("distance matrix must be square")
    if not 1 <= n_prototypes <= n:
        raise ValueError(f"cannot select {n_prototypes} prototypes from {n} graphs")
    remaining = list(range(n))
    chosen = []
    for _ in range(n_prototypes):
        sums = [sum(d[i, j] for j in remaining if j != i) for i in remaining]
        best = remaining[int(np.argmin(sums))]
        chosen.append(best)
        remaining.remove(best)
    return chosen


@dataclass(frozen=True, eq=False)
class PrototypeSet:
    """Selected prototypes per class; the global order is class-major."""

    labels: tuple[int, ...]
    per_class: tuple[tuple[AttributedGraph, ...], ...]

    @property
    def graphs(self) -> list[AttributedGraph]:
        return [g for group in self.per_class for g in group]

    def __len__(self):
        return sum(len(group) for group in self.per_class)


def recalculate_prototypes(memory: ClassMemory, n_prototypes: int, metric: GraphDistance) -> PrototypeSet:
    """Re-select prototypes for every class from the current memory contents."""
    groups = []
    for c in memory.labels:
        graphs = memory.graphs(c)
        if not graphs:
            raise EmptyClassError(c)
        r = min(n_prototypes, len(graphs))
        d = pairwise_distances(graphs, metric.cost_model, metric.policy, metric.cache)
        groups.append(tuple(graphs[i] for i in select_prototypes(d, r)))
    return PrototypeSet(memory.labels, tuple(groups))


def embed(graph: AttributedGraph, prototypes: PrototypeSet, metric: GraphDistance) -> np.ndarray:
    """Vector of distances from ``graph`` to every prototype, in global prototype order."""
    if not len(prototypes):
        raise ValueError("embedding needs at least one prototype")
    return np.array([metric(graph, p) for p in prototypes.graphs])


def reembed_all(memory: ClassMemory, embeddings: EmbeddingMemory, prototypes: PrototypeSet,
                metric: GraphDistance) -> EmbeddingMemory:
    """Replace every stored vector by the embedding of its graph under ``prototypes``."""
    for c in memory.labels:
        embeddings.queues[c] = deque(embed(g, prototypes, metric) for g in memory.graphs(c))
    return embeddings


class PrototypeEmbedding(BaseEstimator, TransformerMixin):
    """Dissimilarity-space embedding onto per-class median graphs.

    ``fit`` groups the training graphs by label (keeping their order as arrival
    order), selects ``n_prototypes`` medians per class and ``transform`` maps
    each graph to its distances from all ``n_prototypes * n_classes``
    prototypes.

    Parameters
    ----------
    n_prototypes : int
    cost_model : GedCostModel or None
    ged_policy : GedPolicy or None
    cache_size : int
        Capacity of the LRU distance cache shared by fit and transform.
    """

    def __init__(self, n_prototypes=3, cost_model=None, ged_policy=None, cache_size=100_000):
        self.n_prototypes = n_prototypes
        self.cost_model = cost_model
        self.ged_policy = ged_policy
        self.cache_size = cache_size

    def _metric(self) -> GraphDistance:
        if not hasattr(self, "metric_"):
            self.metric_ = GraphDistance(self.cost_model or GedCostModel(), self.ged_policy or GedPolicy(),
                                         DistanceCache(self.cache_size))
        return self.metric_

    def fit(self, X, y):
        graphs = check_graphs(X)
        y = np.asarray(y)
        if len(graphs) != len(y):
            raise ValueError("X and y have different lengths")
        labels = tuple(int(c) for c in np.unique(y))
        memory = ClassMemory(labels, capacity=max(1, len(graphs)))
        for t, (g, c) in enumerate(zip(graphs, y.tolist())):
            memory.append(g, int(c), t)
        return self.fit_memory(memory)

    def fit_memory(self, memory: ClassMemory) -> "PrototypeEmbedding":
        self.prototypes_ = recalculate_prototypes(memory, self.n_prototypes, self._metric())
        self.classes_ = np.array(memory.labels)
        return self

    def transform_one(self, graph: AttributedGraph) -> np.ndarray:
        check_is_fitted(self, "prototypes_")
        return embed(graph, self.prototypes_, self._metric())

    def transform(self, X):
        check_is_fitted(self, "prototypes_")
        graphs = check_graphs(X)
        return np.array([self.transform_one(g) for g in graphs]).reshape(len(graphs), len(self.prototypes_))
