"""Seeded generator of drifting letter-like graph streams.

Each class is a template drawing (node positions in a roughly 3x3 box plus
straight strokes as undirected edges). Samples are distorted copies whose
noise level follows a list of stream segments, e.g. 300 clean graphs
followed by 450 heavily distorted ones.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from graphstream.graph import AttributedGraph, is_connected
from graphstream.io.records import StreamRecord

MAX_RETRIES = 10

LETTER_TEMPLATES = {
    "A": ([(1.5, 3.0), (0.3, 0.0), (2.7, 0.0), (0.9, 1.5), (2.1, 1.5)], [(1, 3), (3, 0), (0, 4), (4, 2), (3, 4)]),
    "E": ([(0.5, 3.0), (2.5, 3.0), (0.5, 1.5), (2.0, 1.5), (0.5, 0.0), (2.5, 0.0)],
          [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]),
    "F": ([(0.5, 3.0), (2.5, 3.0), (0.5, 1.5), (2.0, 1.5), (0.5, 0.0)], [(0, 1), (0, 2), (2, 3), (2, 4)]),
    "H": ([(0.5, 3.0), (0.5, 1.5), (0.5, 0.0), (2.5, 3.0), (2.5, 1.5), (2.5, 0.0)],
          [(0, 1), (1, 2), (3, 4), (4, 5), (1, 4)]),
    "I": ([(1.5, 3.0), (1.5, 0.0)], [(0, 1)]),
    "L": ([(0.5, 3.0), (0.5, 0.0), (2.5, 0.0)], [(0, 1), (1, 2)]),
    "T": ([(0.3, 3.0), (1.5, 3.0), (2.7, 3.0), (1.5, 0.0)], [(0, 1), (1, 2), (1, 3)]),
    "V": ([(0.3, 3.0), (1.5, 0.0), (2.7, 3.0)], [(0, 1), (1, 2)]),
    "X": ([(0.3, 3.0), (2.7, 3.0), (1.5, 1.5), (0.3, 0.0), (2.7, 0.0)], [(0, 2), (1, 2), (2, 3), (2, 4)]),
    "Z": ([(0.3, 3.0), (2.7, 3.0), (0.3, 0.0), (2.7, 0.0)], [(0, 1), (1, 2), (2, 3)]),
}


@dataclass
class DistortionLevel:
    position_noise: float = 0.0
    edge_flip: float = 0.0
    node_flip: float = 0.0

    def validate(self, name: str):
        if self.position_noise < 0:
            raise ValueError(f"distortion level {name!r}: position_noise must be >= 0")
        for attr in ("edge_flip", "node_flip"):
            p = getattr(self, attr)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"distortion level {name!r}: {attr} must lie in [0, 1], got {p}")


def default_levels() -> dict[str, DistortionLevel]:
    return {
        "none": DistortionLevel(0.0, 0.0, 0.0),
        "med": DistortionLevel(0.1, 0.1, 0.05),
        "high": DistortionLevel(0.3, 0.3, 0.15),
    }


@dataclass
class ClassTemplate:
    name: str
    positions: list[tuple[float, float]]
    edges: list[tuple[int, int]]


@dataclass
class Segment:
    count: int
    level: str


@dataclass
class SyntheticStreamSpec:
    templates: list[ClassTemplate]
    segments: list[Segment]
    levels: dict[str, DistortionLevel] = field(default_factory=default_levels)
    warm_start_count: int = 10
    seed: int = 0

    def validate(self):
        if len(self.templates) < 2:
            raise ValueError("need at least two class templates")
        if not self.segments:
            raise ValueError("need at least one segment")
        for seg in self.segments:
            if seg.count <= 0:
                raise ValueError(f"segment counts must be positive, got {seg.count}")
            if seg.level not in self.levels:
                raise ValueError(f"unknown distortion level {seg.level!r}")
        for name, level in self.levels.items():
            level.validate(name)
        if self.warm_start_count < 1:
            raise ValueError("warm_start_count must be >= 1")
        for tpl in self.templates:
            n = len(tpl.positions)
            for i, j in tpl.edges:
                if not (0 <= i < n and 0 <= j < n) or i == j:
                    raise ValueError(f"template {tpl.name!r} has an invalid edge ({i}, {j})")
        return self

    @property
    def stream_length(self) -> int:
        return sum(s.count for s in self.segments)

    @classmethod
    def letters(cls, names=("A", "I", "Z"), segments=((300, "none"), (450, "high")), warm_start_count=10,
                seed=0, levels=None) -> "SyntheticStreamSpec":
        templates = [ClassTemplate(n, *LETTER_TEMPLATES[n]) for n in names]
        return cls(templates, [Segment(c, lvl) for c, lvl in segments], levels or default_levels(),
                   warm_start_count, seed)

    @classmethod
    def from_dict(cls, data: dict) -> "SyntheticStreamSpec":
        data = dict(data)
        levels = default_levels()
        for name, lv in (data.get("levels") or {}).items():
            levels[name] = DistortionLevel(**lv)
        raw_templates = data.get("templates", ["A", "I", "Z"])
        templates = []
        for t in raw_templates:
            if isinstance(t, str):
                if t not in LETTER_TEMPLATES:
                    raise ValueError(f"unknown built-in template {t!r}; choose from {sorted(LETTER_TEMPLATES)}")
                templates.append(ClassTemplate(t, *LETTER_TEMPLATES[t]))
            else:
                templates.append(ClassTemplate(t["name"], [tuple(p) for p in t["positions"]],
                                               [tuple(e) for e in t["edges"]]))
        segments = [Segment(int(s["count"]), str(s["level"])) if isinstance(s, dict) else Segment(int(s[0]), str(s[1]))
                    for s in data.get("segments", [])]
        return cls(templates, segments, levels, int(data.get("warm_start_count", 10)), int(data.get("seed", 0)))

    def to_dict(self) -> dict:
        return {
            "templates": [{"name": t.name, "positions": [list(p) for p in t.positions],
                           "edges": [list(e) for e in t.edges]} for t in self.templates],
            "segments": [{"count": s.count, "level": s.level} for s in self.segments],
            "levels": {k: asdict(v) for k, v in self.levels.items()},
            "warm_start_count": self.warm_start_count,
            "seed": self.seed,
        }


def _coordinate_scale(templates) -> float:
    pts = np.array([p for t in templates for p in t.positions], dtype=float)
    return float(np.max(pts.max(axis=0) - pts.min(axis=0)))


def _bbox(templates):
    pts = np.array([p for t in templates for p in t.positions], dtype=float)
    return pts.min(axis=0), pts.max(axis=0)


def distort(template: ClassTemplate, level: DistortionLevel, rng: np.random.Generator, scale: float,
            bbox) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """One distorted copy of a template as (positions, edges)."""
    pos = [np.asarray(p, dtype=float) for p in template.positions]
    edges = {tuple(sorted(e)) for e in template.edges}
    n0, m0 = len(pos), len(edges)

    keep = [i for i in range(n0) if rng.random() >= level.node_flip]
    remap = {old: new for new, old in enumerate(keep)}
    pos = [pos[i] for i in keep]
    edges = {(remap[i], remap[j]) for i, j in edges if i in remap and j in remap}

    edges = {e for e in sorted(edges) if rng.random() >= level.edge_flip}
    n = len(pos)
    for _ in range(m0):
        if rng.random() < level.edge_flip and n >= 2:
            free = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
            if free:
                edges.add(free[rng.integers(len(free))])

    lo, hi = bbox
    for _ in range(n0):
        if rng.random() < level.node_flip:
            new = len(pos)
            pos.append(rng.uniform(lo, hi))
            if new > 0:
                edges.add((int(rng.integers(new)), new))

    x = np.array(pos, dtype=float).reshape(len(pos), 2)
    if level.position_noise > 0 and len(x):
        x = x + rng.normal(0.0, level.position_noise * scale, size=x.shape)
    return x.round(6), sorted(edges)


def sample_graph(template, level, rng, scale, bbox, graph_id) -> AttributedGraph:
    graph = None
    for _ in range(MAX_RETRIES):
        x, edges = distort(template, level, rng, scale, bbox)
        graph = AttributedGraph.from_arrays(graph_id, x.tolist(), edges, node_attr_dim=2)
        if graph.n_nodes > 0 and is_connected(graph):
            return graph
    return graph


def generate_synthetic(spec: SyntheticStreamSpec) -> tuple[list[StreamRecord], list[StreamRecord]]:
    """Warm-start block and stream, both fully determined by ``spec`` (including its seed).

    The warm-start block holds ``warm_start_count`` graphs per class at the
    first segment's distortion level, class-major. Stream labels are drawn
    uniformly at random within each segment.
    """
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    scale = _coordinate_scale(spec.templates)
    bbox = _bbox(spec.templates)
    first = spec.levels[spec.segments[0].level]
    warm = []
    t = 0
    for c, tpl in enumerate(spec.templates, start=1):
        for k in range(spec.warm_start_count):
            t += 1
            g = sample_graph(tpl, first, rng, scale, bbox, f"w{c}-{k:03d}")
            warm.append(StreamRecord(t, g, c, spec.segments[0].level))
    stream = []
    t = 0
    k_classes = len(spec.templates)
    for seg in spec.segments:
        level = spec.levels[seg.level]
        for _ in range(seg.count):
            t += 1
            c = int(rng.integers(k_classes)) + 1
            g = sample_graph(spec.templates[c - 1], level, rng, scale, bbox, f"s{t:06d}")
            stream.append(StreamRecord(t, g, c, seg.level))
    return warm, stream
