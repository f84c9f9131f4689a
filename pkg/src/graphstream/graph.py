"""Attributed graph data model.

Graphs are immutable value objects. Node identity is the string ``node_id``;
matrix positions follow the stored node order, so every derived matrix is
deterministic for a given graph.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from graphstream.exceptions import InvalidGraphError


@dataclass(frozen=True)
class NodeRecord:
    node_id: str
    attributes: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(float(a) for a in self.attributes))


@dataclass(frozen=True)
class EdgeRecord:
    from_id: str
    to_id: str
    attributes: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(float(a) for a in self.attributes))


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    index: int | None = None

    def __str__(self):
        where = "" if self.index is None else f" [#{self.index}]"
        return f"{self.kind}{where}: {self.message}"


@dataclass(frozen=True, eq=False)
class AttributedGraph:
    """Graph with d-dimensional node attributes and c-dimensional edge attributes.

    Undirected edges are stored once; the implied adjacency is symmetric.
    Construction does not validate; call :func:`validate` or :meth:`check`.
    """

    id: str
    nodes: tuple[NodeRecord, ...] = ()
    edges: tuple[EdgeRecord, ...] = ()
    directed: bool = False
    node_attr_dim: int = 0
    edge_attr_dim: int = 0

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))

    @classmethod
    def from_arrays(
        cls,
        id: str,
        node_attributes: Sequence[Sequence[float]] | np.ndarray,
        edges: Iterable[tuple[int, int]] = (),
        edge_attributes: Sequence[Sequence[float]] | None = None,
        directed: bool = False,
        node_ids: Sequence[str] | None = None,
        node_attr_dim: int | None = None,
        edge_attr_dim: int | None = None,
    ) -> "AttributedGraph":
        """Build a graph from positional node attributes and index-pair edges."""
        node_attributes = [tuple(row) for row in node_attributes]
        if node_ids is None:
            node_ids = [f"_{i}" for i in range(len(node_attributes))]
        if node_attr_dim is None:
            node_attr_dim = len(node_attributes[0]) if node_attributes else 0
        edges = list(edges)
        if edge_attributes is None:
            edge_attributes = [()] * len(edges)
        if edge_attr_dim is None:
            edge_attr_dim = len(edge_attributes[0]) if edge_attributes else 0
        nodes = tuple(NodeRecord(nid, attrs) for nid, attrs in zip(node_ids, node_attributes))
        edge_records = tuple(
            EdgeRecord(node_ids[i], node_ids[j], attrs) for (i, j), attrs in zip(edges, edge_attributes)
        )
        return cls(id, nodes, edge_records, directed, node_attr_dim, edge_attr_dim)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def node_index(self) -> dict[str, int]:
        return {n.node_id: i for i, n in enumerate(self.nodes)}

    @cached_property
    def node_matrix(self) -> np.ndarray:
        """``N x d`` node attribute matrix."""
        if not self.nodes:
            return np.zeros((0, self.node_attr_dim))
        return np.array([n.attributes for n in self.nodes], dtype=float).reshape(self.n_nodes, self.node_attr_dim)

    @cached_property
    def edge_pairs(self) -> tuple[tuple[int, int], ...]:
        idx = self.node_index
        return tuple((idx[e.from_id], idx[e.to_id]) for e in self.edges)

    @cached_property
    def edge_map(self) -> dict[tuple[int, int], tuple[float, ...]]:
        """Edge attributes keyed by index pair; undirected edges appear under both orders."""
        out = {}
        for (i, j), e in zip(self.edge_pairs, self.edges):
            out[(i, j)] = e.attributes
            if not self.directed:
                out[(j, i)] = e.attributes
        return out

    @cached_property
    def content_key(self) -> str:
        """Digest of everything that affects edit distances (ids and node names excluded)."""
        payload = repr((self.directed, self.node_attr_dim, self.edge_attr_dim,
                        tuple(n.attributes for n in self.nodes),
                        tuple(zip(self.edge_pairs, (e.attributes for e in self.edges)))))
        return hashlib.blake2b(payload.encode(), digest_size=16).hexdigest()

    def check(self) -> "AttributedGraph":
        """Raise :class:`InvalidGraphError` listing every violation, else return self."""
        report = validate(self)
        if report:
            raise InvalidGraphError(self.id, report)
        return self

    def __eq__(self, other):
        if not isinstance(other, AttributedGraph):
            return NotImplemented
        return (
            self.id == other.id
            and self.nodes == other.nodes
            and self.edges == other.edges
            and self.directed == other.directed
            and self.node_attr_dim == other.node_attr_dim
            and self.edge_attr_dim == other.edge_attr_dim
        )

    def __hash__(self):
        return hash((self.id, self.nodes, self.edges, self.directed))

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"AttributedGraph(id={self.id!r}, N={self.n_nodes}, M={self.n_edges}, {kind}, d={self.node_attr_dim})"


def _finite(values) -> bool:
    return all(math.isfinite(v) for v in values)


def validate(g: AttributedGraph) -> list[Violation]:
    """Return every invariant violation of ``g``; an empty list means valid."""
    report: list[Violation] = []
    if g.node_attr_dim < 0 or g.edge_attr_dim < 0:
        report.append(Violation("dimension", "attribute dimensions must be non-negative"))

    seen_ids: set[str] = set()
    for i, node in enumerate(g.nodes):
        if node.node_id in seen_ids:
            report.append(Violation("duplicate-node", f"node id {node.node_id!r} repeated", i))
        seen_ids.add(node.node_id)
        if len(node.attributes) != g.node_attr_dim:
            report.append(
                Violation(
                    "node-attr-dim",
                    f"node {node.node_id!r} has {len(node.attributes)} attributes, expected {g.node_attr_dim}",
                    i,
                )
            )
        if not _finite(node.attributes):
            report.append(Violation("node-attr-finite", f"node {node.node_id!r} has non-finite attributes", i))

    seen_pairs: set[tuple[str, str]] = set()
    for k, edge in enumerate(g.edges):
        for end in (edge.from_id, edge.to_id):
            if end not in seen_ids:
                report.append(Violation("dangling-edge", f"edge references missing node {end!r}", k))
        if edge.from_id == edge.to_id:
            report.append(Violation("self-loop", f"self-loop on node {edge.from_id!r}", k))
        key = (edge.from_id, edge.to_id) if g.directed else tuple(sorted((edge.from_id, edge.to_id)))
        if key in seen_pairs:
            report.append(Violation("duplicate-edge", f"duplicate edge {edge.from_id!r}-{edge.to_id!r}", k))
        seen_pairs.add(key)
        if len(edge.attributes) != g.edge_attr_dim:
            report.append(
                Violation(
                    "edge-attr-dim",
                    f"edge {edge.from_id!r}-{edge.to_id!r} has {len(edge.attributes)} attributes, "
                    f"expected {g.edge_attr_dim}",
                    k,
                )
            )
        if not _finite(edge.attributes):
            report.append(Violation("edge-attr-finite", f"edge {edge.from_id!r}-{edge.to_id!r} is non-finite", k))
    return report


def adjacency(g: AttributedGraph) -> np.ndarray:
    """Binary ``N x N`` adjacency matrix in stored node order."""
    g.check()
    n = g.n_nodes
    a = np.zeros((n, n), dtype=np.int8)
    for i, j in g.edge_pairs:
        a[i, j] = 1
        if not g.directed:
            a[j, i] = 1
    return a


def is_connected(g: AttributedGraph) -> bool:
    """Weak connectivity; the empty graph counts as connected."""
    n = g.n_nodes
    if n <= 1:
        return True
    neighbours = [[] for _ in range(n)]
    for i, j in g.edge_pairs:
        neighbours[i].append(j)
        neighbours[j].append(i)
    seen = {0}
    stack = [0]
    while stack:
        for nb in neighbours[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == n
