"""Line-delimited JSON stream files.

One record per line::

    {"t": 1, "label": 2, "segment_tag": "none", "id": "s000001", "directed": false,
     "node_attr_dim": 2, "edge_attr_dim": 0,
     "nodes": [{"id": "_0", "attributes": [1.5, 3.0]}, ...],
     "edges": [{"from": "_0", "to": "_1", "attributes": []}, ...]}

Floats are written with ``repr`` precision, so reading a written file gives
back equal records.
"""

from __future__ import annotations

import json
from typing import Iterable

from graphstream.exceptions import ParseError
from graphstream.graph import AttributedGraph, EdgeRecord, NodeRecord, validate
from graphstream.io.atomic import atomic_write
from graphstream.io.records import StreamRecord

_REQUIRED = ("t", "label", "nodes", "edges")


def record_to_dict(record: StreamRecord) -> dict:
    g = record.graph
    return {
        "t": record.t,
        "label": record.label,
        "segment_tag": record.segment_tag,
        "id": g.id,
        "directed": g.directed,
        "node_attr_dim": g.node_attr_dim,
        "edge_attr_dim": g.edge_attr_dim,
        "nodes": [{"id": n.node_id, "attributes": list(n.attributes)} for n in g.nodes],
        "edges": [{"from": e.from_id, "to": e.to_id, "attributes": list(e.attributes)} for e in g.edges],
    }


def graph_from_dict(obj: dict, where: str, default_id: str = "g") -> AttributedGraph:
    try:
        nodes = tuple(NodeRecord(str(n["id"]), tuple(n.get("attributes", ()))) for n in obj["nodes"])
        edges = tuple(EdgeRecord(str(e["from"]), str(e["to"]), tuple(e.get("attributes", ()))) for e in obj["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed node or edge entry ({exc.__class__.__name__}: {exc})", where) from None
    d = obj.get("node_attr_dim", len(nodes[0].attributes) if nodes else 0)
    c = obj.get("edge_attr_dim", len(edges[0].attributes) if edges else 0)
    graph = AttributedGraph(str(obj.get("id", default_id)), nodes, edges, bool(obj.get("directed", False)), int(d),
                            int(c))
    problems = validate(graph)
    if problems:
        raise ParseError("; ".join(str(p) for p in problems), where)
    return graph


def record_from_dict(obj: dict, where: str) -> StreamRecord:
    if not isinstance(obj, dict):
        raise ParseError("record must be a JSON object", where)
    missing = [k for k in _REQUIRED if k not in obj]
    if missing:
        raise ParseError(f"record lacks field(s) {missing}", where)
    t, label = obj["t"], obj["label"]
    if isinstance(t, bool) or not isinstance(t, int) or t < 1:
        raise ParseError(f"t must be a positive integer, got {t!r}", where)
    if isinstance(label, bool) or not isinstance(label, int) or label < 1:
        raise ParseError(f"label must be a positive integer, got {label!r}", where)
    graph = graph_from_dict(obj, where, default_id=f"r{t}")
    return StreamRecord(t, graph, label, str(obj.get("segment_tag", "none")))


def dumps(records: Iterable[StreamRecord]) -> str:
    return "".join(json.dumps(record_to_dict(r), separators=(",", ":")) + "\n" for r in records)


def write_stream(records: Iterable[StreamRecord], path: str) -> None:
    """Write records atomically; ``t`` must increase strictly."""
    records = list(records)
    for prev, cur in zip(records, records[1:]):
        if cur.t <= prev.t:
            raise ValueError(f"t must be strictly increasing, got {prev.t} then {cur.t}")
    with atomic_write(path) as fh:
        fh.write(dumps(records))


def loads(text: str, source: str = "<stream>") -> list[StreamRecord]:
    records = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        if not line.strip():
            continue
        where = f"{source}:{lineno}"
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON ({exc.msg} at column {exc.colno})", where) from None
        record = record_from_dict(obj, where)
        if records and record.t <= records[-1].t:
            raise ParseError(f"t must be strictly increasing, got {records[-1].t} then {record.t}", where)
        records.append(record)
    return records


def read_stream(path: str) -> list[StreamRecord]:
    """Parse a stream file; an empty file yields an empty list."""
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), source=path)
