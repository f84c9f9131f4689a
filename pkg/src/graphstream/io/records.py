from __future__ import annotations

from dataclasses import dataclass

from graphstream.graph import AttributedGraph


@dataclass(frozen=True)
class StreamRecord:
    t: int
    graph: AttributedGraph
    label: int
    segment_tag: str = "none"
