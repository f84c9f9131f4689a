"""Readers for the IAM graph repository formats.

GXL files hold one graph each; CXL files index a corpus as
``<print file="..." class="..."/>`` entries. Only the IAM subset is
supported: ``float``/``int``/``string`` attributes under ``node`` and
``edge`` elements.

Numeric attributes become attribute-vector entries in declaration order.
String attributes need an :class:`AttributeSchema` entry listing their
vocabulary and are one-hot encoded in that order.
"""

from __future__ import annotations

import math
import os
import xml.parsers.expat
from dataclasses import dataclass, field

import numpy as np

from graphstream.exceptions import ParseError
from graphstream.graph import AttributedGraph, EdgeRecord, NodeRecord, validate


@dataclass
class _Element:
    tag: str
    attrib: dict
    line: int
    children: list = field(default_factory=list)
    text: str = ""

    def find_all(self, tag):
        return [c for c in self.children if c.tag == tag]


def _parse_xml(data: bytes | str, source: str) -> _Element:
    if isinstance(data, str):
        data = data.encode("utf-8")
    parser = xml.parsers.expat.ParserCreate()
    root = _Element("#document", {}, 0)
    stack = [root]

    def start(tag, attrib):
        el = _Element(tag, dict(attrib), parser.CurrentLineNumber)
        stack[-1].children.append(el)
        stack.append(el)

    def end(tag):
        stack.pop()

    def chars(text):
        stack[-1].text += text

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = chars
    try:
        parser.Parse(data, True)
    except xml.parsers.expat.ExpatError as exc:
        raise ParseError(f"malformed XML: {xml.parsers.expat.ErrorString(exc.code)}",
                         f"{source}:{exc.lineno}:{exc.offset}") from None
    return root


@dataclass
class AttributeSchema:
    """Which GXL attributes to read and how.

    ``node_attributes``/``edge_attributes`` name the attributes in vector
    order; ``None`` takes every numeric attribute (plus every symbolic one
    with a vocabulary) in the order of the first node/edge.
    ``node_symbolic``/``edge_symbolic`` map string attribute names to their
    vocabularies.
    """

    node_attributes: list[str] | None = None
    edge_attributes: list[str] | None = None
    node_symbolic: dict[str, list[str]] = field(default_factory=dict)
    edge_symbolic: dict[str, list[str]] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict | None) -> "AttributeSchema":
        data = data or {}
        unknown = set(data) - {"node_attributes", "edge_attributes", "node_symbolic", "edge_symbolic"}
        if unknown:
            raise TypeError(f"unknown schema field(s) {sorted(unknown)}")
        return cls(data.get("node_attributes"), data.get("edge_attributes"),
                   {k: list(v) for k, v in (data.get("node_symbolic") or {}).items()},
                   {k: list(v) for k, v in (data.get("edge_symbolic") or {}).items()})


def _read_attrs(el: _Element, source: str) -> list[tuple[str, object, int]]:
    """``(name, value, line)`` for every ``attr`` child; strings stay strings."""
    out = []
    for attr in el.find_all("attr"):
        name = attr.attrib.get("name")
        if name is None:
            raise ParseError("attr element without a name", f"{source}:{attr.line}")
        values = [c for c in attr.children]
        if len(values) != 1:
            raise ParseError(f"attribute {name!r} must hold exactly one typed value", f"{source}:{attr.line}")
        typed = values[0]
        raw = typed.text.strip()
        if typed.tag not in ("float", "int", "string"):
            raise ParseError(f"unknown attribute type <{typed.tag}> for {name!r}", f"{source}:{typed.line}")
        try:
            if typed.tag == "float":
                value = float(raw)
            elif typed.tag == "int":
                value = float(int(raw))
            else:
                value = raw
        except ValueError:
            raise ParseError(f"attribute {name!r} has an invalid <{typed.tag}> value {raw!r}",
                             f"{source}:{typed.line}") from None
        if isinstance(value, float) and not math.isfinite(value):
            raise ParseError(f"attribute {name!r} is not finite", f"{source}:{typed.line}")
        out.append((name, value, typed.line))
    return out


def _vectorise(attrs, wanted, symbolic: dict, what: str, source: str, line: int) -> tuple[float, ...]:
    values = {name: (value, ln) for name, value, ln in attrs}
    vec = []
    for name in wanted:
        if name not in values:
            raise ParseError(f"{what} is missing attribute {name!r}", f"{source}:{line}")
        value, ln = values[name]
        if isinstance(value, str):
            vocab = symbolic.get(name)
            if vocab is None:
                raise ParseError(f"symbolic attribute {name!r} has no declared vocabulary", f"{source}:{ln}")
            if value not in vocab:
                raise ParseError(f"value {value!r} of {name!r} is not in its vocabulary {vocab}", f"{source}:{ln}")
            vec.extend(1.0 if value == v else 0.0 for v in vocab)
        else:
            vec.append(value)
    return tuple(vec)


def _default_names(attrs, symbolic: dict) -> list[str]:
    return [name for name, value, _ in attrs if not isinstance(value, str) or name in symbolic]


def _width(names, symbolic: dict) -> int:
    return sum(len(symbolic[n]) if n in symbolic else 1 for n in names)


def parse_gxl(data: bytes | str, schema: AttributeSchema | None = None, source: str = "<gxl>") -> AttributedGraph:
    """Parse one GXL document into an :class:`AttributedGraph`."""
    schema = schema or AttributeSchema()
    root = _parse_xml(data, source)
    gxl = root.find_all("gxl")
    if len(gxl) != 1:
        raise ParseError("expected a single <gxl> root element", f"{source}:1")
    graphs = gxl[0].find_all("graph")
    if len(graphs) != 1:
        raise ParseError(f"expected exactly one <graph>, found {len(graphs)}", f"{source}:{gxl[0].line}")
    graph_el = graphs[0]
    graph_id = graph_el.attrib.get("id") or os.path.splitext(os.path.basename(source))[0]
    mode = graph_el.attrib.get("edgemode", "undirected")
    if mode not in ("undirected", "directed"):
        raise ParseError(f"unsupported edgemode {mode!r}", f"{source}:{graph_el.line}")
    directed = mode == "directed"

    node_els = graph_el.find_all("node")
    node_attrs = [_read_attrs(el, source) for el in node_els]
    node_names = schema.node_attributes
    if node_names is None:
        node_names = _default_names(node_attrs[0], schema.node_symbolic) if node_attrs else []
    nodes = []
    for el, attrs in zip(node_els, node_attrs):
        nid = el.attrib.get("id")
        if nid is None:
            raise ParseError("node without an id", f"{source}:{el.line}")
        vec = _vectorise(attrs, node_names, schema.node_symbolic, f"node {nid!r}", source, el.line)
        nodes.append(NodeRecord(nid, vec))

    known = {n.node_id for n in nodes}
    edge_els = graph_el.find_all("edge")
    edge_attrs = [_read_attrs(el, source) for el in edge_els]
    edge_names = schema.edge_attributes
    if edge_names is None:
        edge_names = _default_names(edge_attrs[0], schema.edge_symbolic) if edge_attrs else []
    edges = []
    for el, attrs in zip(edge_els, edge_attrs):
        src, dst = el.attrib.get("from"), el.attrib.get("to")
        for end in (src, dst):
            if end is None:
                raise ParseError("edge without from/to", f"{source}:{el.line}")
            if end not in known:
                raise ParseError(f"edge endpoint {end!r} is not a declared node", f"{source}:{el.line}")
        vec = _vectorise(attrs, edge_names, schema.edge_symbolic, f"edge {src!r}-{dst!r}", source, el.line)
        edges.append(EdgeRecord(src, dst, vec))

    graph = AttributedGraph(graph_id, tuple(nodes), tuple(edges), directed,
                            _width(node_names, schema.node_symbolic), _width(edge_names, schema.edge_symbolic))
    problems = validate(graph)
    if problems:
        raise ParseError("; ".join(str(p) for p in problems), f"{source}:{graph_el.line}")
    return graph


def parse_cxl(data: bytes | str, classes: list[str] | None = None, source: str = "<cxl>") -> list[tuple[str, int]]:
    """``(filename, label)`` pairs of a CXL index.

    Labels number ``classes`` from 1 in the given order; without a filter the
    classes are numbered in order of first appearance.
    """
    root = _parse_xml(data, source)
    entries = []

    def walk(el):
        for child in el.children:
            if "file" in child.attrib and "class" in child.attrib:
                entries.append((child.attrib["file"], child.attrib["class"].strip()))
            walk(child)

    walk(root)
    present = list(dict.fromkeys(c for _, c in entries))
    if classes is None:
        classes = present
    missing = [c for c in classes if c not in present]
    if missing:
        raise ParseError(f"classes {missing} do not occur in the index (present: {present})", source)
    lookup = {c: i + 1 for i, c in enumerate(classes)}
    out = [(f, lookup[c]) for f, c in entries if c in lookup]
    if not out:
        raise ParseError("no index entries match the class filter", source)
    return out


def load_corpus(directory: str, index: str, classes: list[str] | None = None,
                schema: AttributeSchema | None = None) -> list[tuple[AttributedGraph, int]]:
    """Parse every GXL file listed in a CXL index."""
    with open(index, "rb") as fh:
        entries = parse_cxl(fh.read(), classes, source=index)
    out = []
    for filename, label in entries:
        path = os.path.join(directory, filename)
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read graph file: {exc.strerror}", path) from None
        out.append((parse_gxl(data, schema, source=path), label))
    return out


def corpus_to_stream(corpus, warm_start_count: int, seed: int = 0):
    """Split a labelled corpus into a warm-start block and a seeded, uniformly shuffled stream.

    Graphs are shuffled; the first ``warm_start_count`` of every class form the
    warm start and the rest, in shuffled order, the stream.
    """
    from graphstream.io.records import StreamRecord

    rng = np.random.default_rng(seed)
    order = rng.permutation(len(corpus))
    labels = sorted({label for _, label in corpus})
    taken = {c: 0 for c in labels}
    warm, rest = [], []
    for i in order:
        g, c = corpus[i]
        if taken[c] < warm_start_count:
            taken[c] += 1
            warm.append((g, c))
        else:
            rest.append((g, c))
    short = [c for c, n in taken.items() if n < warm_start_count]
    if short:
        raise ValueError(f"classes {short} have fewer than {warm_start_count} graphs")
    warm.sort(key=lambda item: item[1])
    warm_records = [StreamRecord(t, g, c, "warm") for t, (g, c) in enumerate(warm, start=1)]
    stream_records = [StreamRecord(t, g, c, "none") for t, (g, c) in enumerate(rest, start=1)]
    return warm_records, stream_records
