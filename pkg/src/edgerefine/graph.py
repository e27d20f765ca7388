"""Undirected simple graphs: loading, normalization and adjacency queries."""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, TextIO


class GraphFormatError(ValueError):
    """Raised for malformed or empty edge-list input."""


@dataclass(frozen=True)
class NormalizationLog:
    loops: int = 0
    duplicates: int = 0

    @property
    def empty(self) -> bool:
        return self.loops == 0 and self.duplicates == 0


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Edges are stored as ``(u, v)`` with ``u < v`` and keep the id they were
    given at construction. ``labels`` maps each compacted vertex id back to
    the identifier it had in the source file (identity when built directly).
    """

    __slots__ = ("n", "edges", "adjacency", "labels", "_edge_index")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels=None):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = []
        index = {}
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise ValueError(f"duplicate edge {key}")
            eid = len(canon)
            index[key] = eid
            canon.append(key)
            adjacency[u].append((v, eid))
            adjacency[v].append((u, eid))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(canon)
        self.adjacency = tuple(tuple(a) for a in adjacency)
        self.labels = tuple(range(n)) if labels is None else tuple(labels)
        if len(self.labels) != n:
            raise ValueError("labels must have one entry per vertex")
        self._edge_index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range 0..{self.n - 1}")

    def neighbors(self, v: int) -> tuple[tuple[int, int], ...]:
        """Return ``(neighbor, edge id)`` pairs of ``v``."""
        self._check_vertex(v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.adjacency[v])

    def edge_id(self, u: int, v: int) -> int | None:
        key = (u, v) if u < v else (v, u)
        return self._edge_index.get(key)

    def average_degree(self) -> Fraction:
        return average_degree(self)

    def dump(self, stream: TextIO | None = None) -> str | None:
        """Write the normalized edge list, one ``u v`` per line in edge-id order.

        Returns the text when no stream is given.
        """
        text = "".join(f"{u} {v}\n" for u, v in self.edges)
        if stream is None:
            return text
        stream.write(text)
        return None


def average_degree(g: Graph) -> Fraction:
    """Exact average degree ``2m/n``."""
    if g.n < 1:
        raise ValueError("average degree needs at least one vertex")
    return Fraction(2 * g.m, g.n)


def load_edge_list(stream: TextIO | str, allow_empty: bool = False) -> tuple[Graph, NormalizationLog]:
    """Parse an edge list into a normalized :class:`Graph`.

    Lines starting with ``#`` or ``%`` are comments. Each data line carries two
    integer vertex ids and an optional ignored third column. Vertex ids are
    compacted in order of first appearance among surviving edges, self-loops
    are dropped and repeated edges (either orientation) keep their first
    occurrence.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    ids: dict[int, int] = {}
    labels: list[int] = []
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    loops = dups = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) < 2 or len(tokens) > 3:
            raise GraphFormatError(f"line {lineno}: expected 'u v [w]', got {line!r}")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex id in {line!r}") from None
        if a < 0 or b < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex id in {line!r}")
        if a == b:
            loops += 1
            continue
        for raw_id in (a, b):
            if raw_id not in ids:
                ids[raw_id] = len(labels)
                labels.append(raw_id)
        u, v = ids[a], ids[b]
        key = (u, v) if u < v else (v, u)
        if key in seen:
            dups += 1
            continue
        seen.add(key)
        edges.append(key)
    if not edges and not allow_empty:
        raise GraphFormatError("edge list contains no usable edges")
    return Graph(len(labels), edges, labels=labels), NormalizationLog(loops, dups)


def read_graph(path) -> tuple[Graph, NormalizationLog]:
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh)


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        g.dump(fh)
