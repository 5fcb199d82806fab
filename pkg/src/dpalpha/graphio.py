"""Edge-list ingestion and degree sequences for simple undirected graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable

import numpy as np

# A degree sequence is a length-n integer vector; entry v is the degree of node v.
DegreeSequence = np.ndarray


class EdgeListParseError(ValueError):
    """Raised when an edge-list line cannot be parsed. Carries the 1-based line number."""

    def __init__(self, line_no: int, line: str, reason: str):
        self.line_no = line_no
        self.line = line
        super().__init__(f"line {line_no}: {reason}: {line!r}")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    ``edges`` holds unordered pairs canonicalized as (u, v) with u < v.
    Every endpoint id lies in [0, n). No self-loops, no duplicates.
    """

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("node count must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")

    @property
    def num_edges(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class LoadResult:
    """A parsed graph plus bookkeeping about what the parser dropped."""

    graph: Graph
    duplicate_edges_dropped: int
    self_loops_dropped: int
    # original node id -> dense id in [0, n); kept for diagnostics only
    id_map: dict[int, int] = field(repr=False, default_factory=dict)


def load_edge_list(source: IO[str] | Iterable[str]) -> LoadResult:
    """Parse a whitespace-separated edge list into a simple undirected graph.

    Lines starting with '#' are ignored. Each remaining line must hold two
    integer node ids. Node ids are relabeled densely to [0, n) in order of
    first appearance. Duplicate edges (in either orientation) and self-loops
    are dropped and counted. Empty input yields an empty graph.
    """
    id_map: dict[int, int] = {}
    edges: set[tuple[int, int]] = set()
    duplicates = 0
    self_loops = 0

    def dense(orig: int) -> int:
        if orig not in id_map:
            id_map[orig] = len(id_map)
        return id_map[orig]

    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(line_no, line, "expected two node ids")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(line_no, line, "non-integer node id") from None
        u, v = dense(a), dense(b)
        if u == v:
            self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in edges:
            duplicates += 1
        else:
            edges.add(key)

    graph = Graph(n=len(id_map), edges=frozenset(edges))
    return LoadResult(
        graph=graph,
        duplicate_edges_dropped=duplicates,
        self_loops_dropped=self_loops,
        id_map=id_map,
    )


def degrees(g: Graph) -> DegreeSequence:
    """Per-node incident-edge counts, as an int64 vector of length g.n."""
    out = np.zeros(g.n, dtype=np.int64)
    for u, v in g.edges:
        out[u] += 1
        out[v] += 1
    return out


def write_edge_list(g: Graph, stream: IO[str]) -> None:
    """Serialize in the same format load_edge_list reads, one edge per line, sorted."""
    for u, v in sorted(g.edges):
        stream.write(f"{u} {v}\n")
