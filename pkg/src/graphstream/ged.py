"""Graph edit distance.

Two solvers share one cost model:

* :func:`exact_ged` -- A* over partial node mappings with an admissible
  node/edge counting heuristic, pruned by the bipartite upper bound.
* :func:`approx_ged` -- bipartite assignment (Hungarian) on node
  substitution plus local edge-structure costs; the returned distance prices the
  induced edit path, so it is always an upper bound on the exact value.

:func:`distance` dispatches between them by graph size, and
:func:`pairwise_distances` builds memoized distance matrices.
"""

from __future__ import annotations

import heapq
import itertools
import math
import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from graphstream.exceptions import DimensionMismatchError, GedBudgetExceeded
from graphstream.graph import AttributedGraph

NODE_METRICS = ("euclidean", "scaled_euclidean", "discrete")
EDGE_METRICS = ("euclidean", "angle", "discrete", "zero")

# stands in for "forbidden" in the assignment matrix
_FORBIDDEN = 1e12


@dataclass(frozen=True)
class GedCostModel:
    """Edit-operation costs.

    ``node_subst_weight`` multiplies whichever node metric is chosen, which is
    how ``scaled_euclidean`` is parameterised. ``angle`` compares the first
    edge attribute as an undirected orientation (differences wrap at pi).
    """

    node_insert: float = 1.0
    node_delete: float = 1.0
    edge_insert: float = 1.0
    edge_delete: float = 1.0
    node_subst: str = "euclidean"
    node_subst_weight: float = 1.0
    edge_subst: str = "zero"
    edge_subst_weight: float = 1.0

    def __post_init__(self):
        for name in ("node_insert", "node_delete", "edge_insert", "edge_delete", "node_subst_weight",
                     "edge_subst_weight"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and non-negative, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.node_subst not in NODE_METRICS:
            raise ValueError(f"node_subst must be one of {NODE_METRICS}, got {self.node_subst!r}")
        if self.edge_subst not in EDGE_METRICS:
            raise ValueError(f"edge_subst must be one of {EDGE_METRICS}, got {self.edge_subst!r}")

    @property
    def symmetric(self) -> bool:
        return self.node_insert == self.node_delete and self.edge_insert == self.edge_delete

    @property
    def fingerprint(self) -> tuple:
        return (self.node_insert, self.node_delete, self.edge_insert, self.edge_delete, self.node_subst,
                self.node_subst_weight, self.edge_subst, self.edge_subst_weight)

    def node_cost_matrix(self, x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
        """Substitution costs between every node of one graph and every node of another."""
        if len(x1) == 0 or len(x2) == 0:
            return np.zeros((len(x1), len(x2)))
        if x1.shape[1] == 0:
            return np.zeros((len(x1), len(x2)))
        if self.node_subst == "discrete":
            cost = (cdist(x1, x2, "chebyshev") > 0).astype(float)
        else:
            cost = cdist(x1, x2, "euclidean")
        return self.node_subst_weight * cost

    def edge_cost(self, a: tuple[float, ...], b: tuple[float, ...]) -> float:
        metric = self.edge_subst
        if metric == "zero" or not a:
            return 0.0
        if metric == "euclidean":
            c = math.sqrt(sum((p - q) ** 2 for p, q in zip(a, b)))
        elif metric == "discrete":
            c = 0.0 if a == b else 1.0
        else:
            diff = abs(a[0] - b[0]) % math.pi
            c = min(diff, math.pi - diff)
        return self.edge_subst_weight * c


@dataclass(frozen=True)
class GedPolicy:
    exact_below_n_nodes: int = 10
    budget: int = 1_000_000

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError("budget must be positive")

    @property
    def key(self) -> tuple:
        return (self.exact_below_n_nodes, self.budget)


class EditOperation(NamedTuple):
    kind: str
    source: object
    target: object
    cost: float


@dataclass
class GedResult:
    distance: float
    exact: bool
    expanded_states: int = 0
    edit_path: list[EditOperation] | None = None
    mapping: tuple[int, ...] | None = None
    root_bound: float = 0.0


def _check_dims(g1: AttributedGraph, g2: AttributedGraph):
    # an empty node or edge set carries no attributes to compare
    node_clash = g1.n_nodes and g2.n_nodes and g1.node_attr_dim != g2.node_attr_dim
    edge_clash = g1.n_edges and g2.n_edges and g1.edge_attr_dim != g2.edge_attr_dim
    if node_clash or edge_clash:
        raise DimensionMismatchError(
            f"attribute dimensions differ: {g1.id!r} has (d={g1.node_attr_dim}, c={g1.edge_attr_dim}), "
            f"{g2.id!r} has (d={g2.node_attr_dim}, c={g2.edge_attr_dim})"
        )
    if g1.directed != g2.directed:
        raise DimensionMismatchError(f"cannot compare directed with undirected graphs ({g1.id!r}, {g2.id!r})")


def _same_content(g1: AttributedGraph, g2: AttributedGraph) -> bool:
    return g1 is g2 or (g1.nodes == g2.nodes and g1.edges == g2.edges and g1.directed == g2.directed)


def path_cost(g1: AttributedGraph, g2: AttributedGraph, mapping: Sequence[int], cm: GedCostModel,
              with_ops: bool = False):
    """Total cost of the edit path induced by a node mapping.

    ``mapping[i]`` is the index in ``g2`` of the image of node ``i`` of ``g1``,
    or ``-1`` for a deletion. Unmapped ``g2`` nodes are inserted. Returns
    ``(cost, ops)``; ``ops`` is ``None`` unless ``with_ops`` is set.
    """
    ops = [] if with_ops else None
    x1, x2 = g1.node_matrix, g2.node_matrix
    subst = cm.node_cost_matrix(x1, x2)
    total = 0.0
    hit = set()
    for i, u in enumerate(mapping):
        if u >= 0:
            c = float(subst[i, u])
            hit.add(u)
            if ops is not None:
                ops.append(EditOperation("node_subst", g1.nodes[i].node_id, g2.nodes[u].node_id, c))
        else:
            c = cm.node_delete
            if ops is not None:
                ops.append(EditOperation("node_delete", g1.nodes[i].node_id, None, c))
        total += c
    for u in range(g2.n_nodes):
        if u not in hit:
            total += cm.node_insert
            if ops is not None:
                ops.append(EditOperation("node_insert", None, g2.nodes[u].node_id, cm.node_insert))

    edges2 = g2.edge_map
    matched = set()
    for (i, j), e in zip(g1.edge_pairs, g1.edges):
        u, v = mapping[i], mapping[j]
        other = edges2.get((u, v)) if u >= 0 and v >= 0 else None
        if other is not None:
            c = cm.edge_cost(e.attributes, other)
            matched.add((u, v) if g2.directed else (min(u, v), max(u, v)))
            kind, tgt = "edge_subst", (g2.nodes[u].node_id, g2.nodes[v].node_id)
        else:
            c = cm.edge_delete
            kind, tgt = "edge_delete", None
        total += c
        if ops is not None:
            ops.append(EditOperation(kind, (e.from_id, e.to_id), tgt, c))
    for (u, v), e in zip(g2.edge_pairs, g2.edges):
        key = (u, v) if g2.directed else (min(u, v), max(u, v))
        if key not in matched:
            total += cm.edge_insert
            if ops is not None:
                ops.append(EditOperation("edge_insert", None, (e.from_id, e.to_id), cm.edge_insert))
    return total, ops


def _incident(g: AttributedGraph) -> list[list[tuple[float, ...]]]:
    inc = [[] for _ in range(g.n_nodes)]
    for (i, j), e in zip(g.edge_pairs, g.edges):
        inc[i].append(e.attributes)
        inc[j].append(e.attributes)
    return inc


def _local_edge_cost(a: list, b: list, cm: GedCostModel) -> float:
    """Optimal matching cost between two incident-edge sets."""
    if cm.edge_subst == "zero" or not a or not b:
        if len(a) >= len(b):
            return (len(a) - len(b)) * cm.edge_delete
        return (len(b) - len(a)) * cm.edge_insert
    na, nb = len(a), len(b)
    m = np.full((na + nb, na + nb), _FORBIDDEN)
    for p in range(na):
        for q in range(nb):
            m[p, q] = cm.edge_cost(a[p], b[q])
        m[p, nb + p] = cm.edge_delete
    for q in range(nb):
        m[na + q, q] = cm.edge_insert
    m[na:, nb:] = 0.0
    rows, cols = linear_sum_assignment(m)
    return float(m[rows, cols].sum())


def _bipartite_mapping(g1: AttributedGraph, g2: AttributedGraph, cm: GedCostModel) -> tuple[int, ...]:
    n1, n2 = g1.n_nodes, g2.n_nodes
    if n1 == 0:
        return ()
    if n2 == 0:
        return tuple([-1] * n1)
    inc1, inc2 = _incident(g1), _incident(g2)
    m = np.full((n1 + n2, n1 + n2), _FORBIDDEN)
    subst = cm.node_cost_matrix(g1.node_matrix, g2.node_matrix)
    for i in range(n1):
        for u in range(n2):
            m[i, u] = subst[i, u] + 0.5 * _local_edge_cost(inc1[i], inc2[u], cm)
        m[i, n2 + i] = cm.node_delete + 0.5 * len(inc1[i]) * cm.edge_delete
    for u in range(n2):
        m[n1 + u, u] = cm.node_insert + 0.5 * len(inc2[u]) * cm.edge_insert
    m[n1:, n2:] = 0.0
    rows, cols = linear_sum_assignment(m)
    mapping = [-1] * n1
    for r, c in zip(rows, cols):
        if r < n1 and c < n2:
            mapping[r] = int(c)
    return tuple(mapping)


def approx_ged(g1: AttributedGraph, g2: AttributedGraph, cm: GedCostModel | None = None,
               with_path: bool = False) -> GedResult:
    """Bipartite-assignment upper bound on the edit distance.

    For symmetric cost models both argument orders are priced and the cheaper
    path wins, which makes the result symmetric.
    """
    cm = cm or GedCostModel()
    _check_dims(g1, g2)
    if _same_content(g1, g2):
        mapping = tuple(range(g1.n_nodes))
        cost, ops = path_cost(g1, g2, mapping, cm, with_ops=with_path)
        return GedResult(0.0, exact=False, edit_path=ops, mapping=mapping)
    mapping = _bipartite_mapping(g1, g2, cm)
    cost, ops = path_cost(g1, g2, mapping, cm, with_ops=with_path)
    if cm.symmetric:
        reverse = _bipartite_mapping(g2, g1, cm)
        rcost, _ = path_cost(g2, g1, reverse, cm)
        if rcost < cost:
            mapping = _invert(reverse, g1.n_nodes)
            cost, ops = path_cost(g1, g2, mapping, cm, with_ops=with_path)
    return GedResult(cost, exact=False, edit_path=ops, mapping=mapping)


def _invert(mapping: Sequence[int], n_target: int) -> tuple[int, ...]:
    inv = [-1] * n_target
    for i, u in enumerate(mapping):
        if u >= 0:
            inv[u] = i
    return tuple(inv)


class _AStar:
    """A* over g1 nodes in a fixed order; each g1 node maps to an unused g2 node or is deleted.

    The heuristic solves an assignment problem over the unmatched nodes. Each
    candidate pair is charged its substitution cost, the exact cost of its edges
    towards already-matched nodes ("anchored" edges, which only depend on the pair)
    and half of a local degree bound for edges among unmatched nodes. Every edit
    operation is charged at most once, so the bound is admissible. It is combined
    with a plain edge-count bound by taking the maximum.
    """

    def __init__(self, g1: AttributedGraph, g2: AttributedGraph, cm: GedCostModel):
        self.g1, self.g2, self.cm = g1, g2, cm
        self.n1, self.n2 = n1, n2 = g1.n_nodes, g2.n_nodes
        self.directed = g1.directed
        a1 = np.zeros((n1, n1))
        for i, j in g1.edge_pairs:
            a1[i, j] = 1.0
        a2 = np.zeros((n2, n2))
        for u, v in g2.edge_pairs:
            a2[u, v] = 1.0
        if not self.directed:
            a1 = np.maximum(a1, a1.T)
            a2 = np.maximum(a2, a2.T)
        self.a1, self.a2 = a1, a2
        self.deg1 = a1 + a1.T if self.directed else a1
        self.deg2 = a2 + a2.T if self.directed else a2
        degree = self.deg1.sum(axis=1)
        # high-degree nodes first: their edges get priced early
        self.order = sorted(range(n1), key=lambda i: -degree[i])
        pos = {node: p for p, node in enumerate(self.order)}
        self.subst_array = cm.node_cost_matrix(g1.node_matrix, g2.node_matrix)
        self.subst = self.subst_array.tolist()
        self.e1 = g1.edge_map
        self.e2 = g2.edge_map
        # g1 edges with at least one endpoint at order position >= depth
        self.e1_remaining = [0] * (n1 + 1)
        for i, j in g1.edge_pairs:
            for depth in range(max(pos[i], pos[j]) + 1):
                self.e1_remaining[depth] += 1
        self.m2 = g2.n_edges
        self.nb2 = [[] for _ in range(n2)]
        for u, v in g2.edge_pairs:
            self.nb2[u].append(v)
            self.nb2[v].append(u)

    def step_cost(self, depth, assigned, u):
        cm = self.cm
        k = self.order[depth]
        c = self.subst[k][u] if u >= 0 else cm.node_delete
        e1, e2 = self.e1, self.e2
        for p in range(depth):
            j = self.order[p]
            v = assigned[p]
            pairs = ((k, j, u, v), (j, k, v, u)) if self.directed else ((k, j, u, v),)
            for a, b, x, y in pairs:
                a1 = e1.get((a, b))
                a2 = e2.get((x, y)) if x >= 0 and y >= 0 else None
                if a1 is not None:
                    c += cm.edge_cost(a1, a2) if a2 is not None else cm.edge_delete
                elif a2 is not None:
                    c += cm.edge_insert
        return c

    def anchor_update(self, anchors, j, v):
        """Add the anchored-edge costs created by fixing g1 node ``j`` to ``v``."""
        cm = self.cm
        pair, rows, cols = anchors
        pair = pair.copy()
        rows = rows.copy()
        cols = cols.copy()
        views = ((self.a1[:, j], self.a2[:, v] if v >= 0 else None),)
        if self.directed:
            views += ((self.a1[j, :], self.a2[v, :] if v >= 0 else None),)
        for x1, x2 in views:
            rows += cm.edge_delete * x1
            if x2 is None:
                pair += cm.edge_delete * x1[:, None]
            else:
                cols += cm.edge_insert * x2
                pair += cm.edge_delete * np.outer(x1, 1.0 - x2) + cm.edge_insert * np.outer(1.0 - x1, x2)
        return pair, rows, cols

    def inside_edges_added(self, used, u):
        """g2 edges between ``u`` and already-used g2 nodes."""
        return sum(1 for v in self.nb2[u] if used >> v & 1)

    def heuristic(self, depth, used, e2_inside, anchors):
        cm = self.cm
        rows = self.order[depth:]
        cols = [u for u in range(self.n2) if not used >> u & 1]
        n_p, n_q = len(rows), len(cols)
        r1 = self.e1_remaining[depth]
        r2 = self.m2 - e2_inside
        count_lb = max(0, r1 - r2) * cm.edge_delete + max(0, r2 - r1) * cm.edge_insert
        if n_p == 0 or n_q == 0:
            return n_p * cm.node_delete + n_q * cm.node_insert + count_lb
        pair, anchored_del, anchored_ins = anchors
        deg_p = self.deg1[np.ix_(rows, rows)].sum(axis=1)
        deg_q = self.deg2[np.ix_(cols, cols)].sum(axis=1)
        diff = deg_p[:, None] - deg_q[None, :]
        local = np.where(diff > 0, diff * cm.edge_delete, -diff * cm.edge_insert)
        size = n_p + n_q
        m = np.full((size, size), _FORBIDDEN)
        m[:n_p, :n_q] = self.subst_array[np.ix_(rows, cols)] + pair[np.ix_(rows, cols)] + 0.5 * local
        idx_p = np.arange(n_p)
        idx_q = np.arange(n_q)
        m[idx_p, n_q + idx_p] = cm.node_delete + anchored_del[rows] + 0.5 * deg_p * cm.edge_delete
        m[n_p + idx_q, idx_q] = cm.node_insert + anchored_ins[cols] + 0.5 * deg_q * cm.edge_insert
        m[n_p:, n_q:] = 0.0
        r, c = linear_sum_assignment(m)
        return max(float(m[r, c].sum()), count_lb)

    def completion_cost(self, used, e2_inside):
        n_unused = self.n2 - bin(used).count("1")
        return n_unused * self.cm.node_insert + (self.m2 - e2_inside) * self.cm.edge_insert

    def solve(self, budget, upper_bound=math.inf):
        n1 = self.n1
        tie = itertools.count()
        root_anchors = (np.zeros((self.n1, self.n2)), np.zeros(self.n1), np.zeros(self.n2))
        root_h = self.heuristic(0, 0, 0, root_anchors)
        if n1 == 0:
            return self.completion_cost(0, 0), (), 0, root_h
        # (f, fifo tie, g, depth, assigned, used mask, g2 edges inside used set, anchors, complete flag)
        heap = [(root_h, next(tie), 0.0, 0, (), 0, 0, root_anchors, False)]
        expanded = 0
        limit = upper_bound + 1e-9
        while heap:
            f, _, g, depth, assigned, used, inside, anchors, complete = heapq.heappop(heap)
            if complete:
                mapping = [-1] * n1
                for p, u in enumerate(assigned):
                    mapping[self.order[p]] = u
                return g, tuple(mapping), expanded, root_h
            expanded += 1
            if expanded > budget:
                raise GedBudgetExceeded(expanded - 1, budget)
            k = self.order[depth]
            candidates = [u for u in range(self.n2) if not used >> u & 1]
            candidates.append(-1)
            for u in candidates:
                g_child = g + self.step_cost(depth, assigned, u)
                if u >= 0:
                    used_child = used | (1 << u)
                    inside_child = inside + self.inside_edges_added(used, u)
                else:
                    used_child, inside_child = used, inside
                child = assigned + (u,)
                if depth + 1 == n1:
                    total = g_child + self.completion_cost(used_child, inside_child)
                    if total <= limit:
                        heapq.heappush(heap, (total, next(tie), total, n1, child, used_child, inside_child,
                                              None, True))
                    continue
                if g_child > limit:
                    continue
                child_anchors = self.anchor_update(anchors, k, u)
                f_child = g_child + self.heuristic(depth + 1, used_child, inside_child, child_anchors)
                if f_child <= limit:
                    heapq.heappush(heap, (f_child, next(tie), g_child, depth + 1, child, used_child,
                                          inside_child, child_anchors, False))
        raise AssertionError("A* exhausted its frontier without a complete mapping")


def exact_ged(g1: AttributedGraph, g2: AttributedGraph, cm: GedCostModel | None = None,
              budget: int = 1_000_000, with_path: bool = False) -> GedResult:
    """Exact edit distance by A* search.

    Raises :class:`GedBudgetExceeded` if more than ``budget`` states would be
    expanded; callers normally fall back to :func:`approx_ged`.
    """
    cm = cm or GedCostModel()
    if budget <= 0:
        raise ValueError("budget must be positive")
    _check_dims(g1, g2)
    if _same_content(g1, g2):
        mapping = tuple(range(g1.n_nodes))
        _, ops = path_cost(g1, g2, mapping, cm, with_ops=with_path)
        return GedResult(0.0, exact=True, expanded_states=0, edit_path=ops, mapping=mapping)
    bound_mapping = _bipartite_mapping(g1, g2, cm)
    upper, _ = path_cost(g1, g2, bound_mapping, cm)
    solver = _AStar(g1, g2, cm)
    dist, mapping, expanded, root_h = solver.solve(budget, upper_bound=upper)
    ops = path_cost(g1, g2, mapping, cm, with_ops=True)[1] if with_path else None
    return GedResult(dist, exact=True, expanded_states=expanded, edit_path=ops, mapping=mapping, root_bound=root_h)


def distance(g1: AttributedGraph, g2: AttributedGraph, cm: GedCostModel | None = None,
             policy: GedPolicy | None = None) -> GedResult:
    """Exact GED for small pairs, bipartite approximation otherwise or when the budget runs out."""
    cm = cm or GedCostModel()
    policy = policy or GedPolicy()
    if max(g1.n_nodes, g2.n_nodes) <= policy.exact_below_n_nodes:
        try:
            return exact_ged(g1, g2, cm, policy.budget)
        except GedBudgetExceeded:
            pass
    return approx_ged(g1, g2, cm)


class DistanceCache:
    """Thread-safe LRU memo of pairwise distances.

    Keys combine cost-model fingerprint, policy and content digests of both
    graphs, so reused graph ids never alias different graphs.
    """

    def __init__(self, capacity: int = 100_000):
        self.capacity = capacity
        self._data: OrderedDict = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key(g1: AttributedGraph, g2: AttributedGraph, cm: GedCostModel, policy: GedPolicy):
        a, b = g1.content_key, g2.content_key
        if cm.symmetric and b < a:
            a, b = b, a
        return (cm.fingerprint, policy.key, a, b)

    def get(self, key):
        with self._lock:
            if key in self._data:
                self._data.move_to_end(key)
                self.hits += 1
                return self._data[key]
            self.misses += 1
            return None

    def put(self, key, value: float):
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.capacity:
                self._data.popitem(last=False)

    def __len__(self):
        return len(self._data)


@dataclass
class GraphDistance:
    """Memoized ``delta(g1, g2)`` under a fixed cost model and policy."""

    cost_model: GedCostModel = field(default_factory=GedCostModel)
    policy: GedPolicy = field(default_factory=GedPolicy)
    cache: DistanceCache | None = field(default_factory=DistanceCache)
    computed: int = 0

    def __call__(self, g1: AttributedGraph, g2: AttributedGraph) -> float:
        if self.cache is None:
            self.computed += 1
            return distance(g1, g2, self.cost_model, self.policy).distance
        key = DistanceCache.key(g1, g2, self.cost_model, self.policy)
        value = self.cache.get(key)
        if value is None:
            self.computed += 1
            value = self._compute(g1, g2)
            self.cache.put(key, value)
        return value

    def _compute(self, g1, g2) -> float:
        d = distance(g1, g2, self.cost_model, self.policy).distance
        if not self.cost_model.symmetric:
            # keep matrices symmetric for median selection
            d = 0.5 * (d + distance(g2, g1, self.cost_model, self.policy).distance)
        return d


def _distance_values(pairs, cm, policy):
    return [distance(a, b, cm, policy).distance for a, b in pairs]


def pairwise_distances(graphs: Sequence[AttributedGraph], cm: GedCostModel | None = None,
                       policy: GedPolicy | None = None, cache: DistanceCache | None = None,
                       n_jobs: int = 1) -> np.ndarray:
    """Symmetric matrix of graph distances with a zero diagonal.

    Asymmetric cost models are symmetrised by averaging both directions.
    With ``n_jobs > 1`` uncached pairs are computed in worker processes; the
    values are identical to sequential evaluation.
    """
    metric = GraphDistance(cm or GedCostModel(), policy or GedPolicy(), cache)
    graphs = list(graphs)
    n = len(graphs)
    for g in graphs[1:]:
        _check_dims(graphs[0], g)
    out = np.zeros((n, n))
    pending = []
    for i in range(n):
        for j in range(i + 1, n):
            if cache is not None:
                value = cache.get(DistanceCache.key(graphs[i], graphs[j], metric.cost_model, metric.policy))
                if value is not None:
                    out[i, j] = out[j, i] = value
                    continue
            pending.append((i, j))
    if n_jobs != 1 and len(pending) > 1:
        from joblib import Parallel, delayed

        cm_, policy_ = metric.cost_model, metric.policy
        chunks = [pending[k::max(1, abs(n_jobs))] for k in range(max(1, abs(n_jobs)))]
        forward = Parallel(n_jobs=n_jobs)(
            delayed(_distance_values)([(graphs[i], graphs[j]) for i, j in chunk], cm_, policy_) for chunk in chunks
        )
        backward = None
        if not cm_.symmetric:
            backward = Parallel(n_jobs=n_jobs)(
                delayed(_distance_values)([(graphs[j], graphs[i]) for i, j in chunk], cm_, policy_)
                for chunk in chunks
            )
        for c, chunk in enumerate(chunks):
            for k, (i, j) in enumerate(chunk):
                value = forward[c][k] if backward is None else 0.5 * (forward[c][k] + backward[c][k])
                out[i, j] = out[j, i] = value
                if cache is not None:
                    cache.put(DistanceCache.key(graphs[i], graphs[j], cm_, policy_), value)
    else:
        for i, j in pending:
            value = metric._compute(graphs[i], graphs[j])
            out[i, j] = out[j, i] = value
            if cache is not None:
                cache.put(DistanceCache.key(graphs[i], graphs[j], metric.cost_model, metric.policy), value)
    return out
