"""Mutable k-edge partition state with incremental replica bookkeeping.

The central quantity is ``copies``, the number of (part, vertex) pairs with
the vertex touched by at least one edge of the part. The replication factor
is ``copies / n``. Every edge move updates it in O(1).
"""

from __future__ import annotations

import io
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

from .graph import Graph


class PartitionError(ValueError):
    """Raised for invalid assignments, partition files or parameters."""


class StaleBlockError(RuntimeError):
    """Raised when a block no longer matches the current partition."""


def parse_alpha(alpha) -> Fraction:
    """Return ``alpha`` as an exact rational with at most 3 fractional digits."""
    if isinstance(alpha, Fraction):
        value = alpha
    elif isinstance(alpha, int):
        value = Fraction(alpha)
    elif isinstance(alpha, float):
        value = Fraction(repr(alpha))
    else:
        try:
            value = Fraction(str(alpha).strip())
        except ValueError:
            raise PartitionError(f"invalid alpha {alpha!r}") from None
    if (value * 1000).denominator != 1:
        raise PartitionError(f"alpha {alpha!r} has more than 3 fractional digits")
    if value < 1:
        raise PartitionError(f"alpha must be >= 1, got {alpha!r}")
    return value


def capacity(m: int, k: int, alpha) -> int:
    """Exact ``ceil(alpha * m / k)``."""
    a = parse_alpha(alpha)
    num = a.numerator * m
    den = a.denominator * k
    return -(-num // den)


@dataclass(frozen=True)
class Block:
    """Connected component of a part after deleting its adjustable edges."""

    part: int
    vertices: frozenset
    edges: frozenset

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def is_vertex_block(self) -> bool:
        return not self.edges

    @property
    def min_vertex(self) -> int:
        return min(self.vertices)

    @property
    def key(self) -> tuple:
        return (self.part, tuple(sorted(self.vertices)))


@dataclass(frozen=True)
class MoveDelta:
    edge: int
    source: int
    target: int
    copies_change: int


class Partition:
    """Edge-to-part assignment of a :class:`Graph` into ``k`` parts.

    Per-vertex maps ``part -> incident edge count`` are kept for every vertex;
    ``mult(i, v)`` reads them. A single writer is assumed.
    """

    def __init__(self, graph: Graph, k: int, alpha, assign: Sequence[int]):
        if k < 1:
            raise PartitionError(f"k must be >= 1, got {k}")
        if len(assign) != graph.m:
            raise PartitionError(
                f"assignment covers {len(assign)} edges, graph has {graph.m}"
            )
        self.graph = graph
        self.k = int(k)
        self.alpha = parse_alpha(alpha)
        self.cap = capacity(graph.m, self.k, self.alpha)
        self.assign = [int(p) for p in assign]
        bad = [(e, p) for e, p in enumerate(self.assign) if not 0 <= p < self.k]
        if bad:
            e, p = bad[0]
            raise PartitionError(f"edge {e} has part id {p} outside 0..{self.k - 1}")
        self.part_size = [0] * self.k
        self.part_edges: list[set[int]] = [set() for _ in range(self.k)]
        self.part_vcount = [0] * self.k
        self.vparts: list[dict[int, int]] = [dict() for _ in range(graph.n)]
        self.copies = 0
        for e, p in enumerate(self.assign):
            self._attach(e, p)

    # -- bookkeeping primitives ------------------------------------------

    def _attach(self, e: int, p: int) -> int:
        created = 0
        for x in self.graph.edges[e]:
            d = self.vparts[x]
            c = d.get(p, 0)
            if c == 0:
                created += 1
                self.part_vcount[p] += 1
            d[p] = c + 1
        self.copies += created
        self.part_size[p] += 1
        self.part_edges[p].add(e)
        self.assign[e] = p
        return created

    def _detach(self, e: int, p: int) -> int:
        removed = 0
        for x in self.graph.edges[e]:
            d = self.vparts[x]
            c = d[p] - 1
            if c == 0:
                del d[p]
                removed += 1
                self.part_vcount[p] -= 1
            else:
                d[p] = c
        self.copies -= removed
        self.part_size[p] -= 1
        self.part_edges[p].discard(e)
        return removed

    def move_edge(self, e: int, j: int) -> MoveDelta:
        """Move edge ``e`` to part ``j``; balance is the caller's concern."""
        if not 0 <= e < self.graph.m:
            raise IndexError(f"edge {e} out of range")
        if not 0 <= j < self.k:
            raise IndexError(f"part {j} out of range")
        i = self.assign[e]
        if i == j:
            raise PartitionError(f"edge {e} already in part {j}")
        removed = self._detach(e, i)
        created = self._attach(e, j)
        return MoveDelta(e, i, j, created - removed)

    def undo(self, delta: MoveDelta) -> None:
        if self.assign[delta.edge] != delta.target:
            raise PartitionError(f"cannot undo move of edge {delta.edge}: state diverged")
        self._detach(delta.edge, delta.target)
        self._attach(delta.edge, delta.source)

    def undo_all(self, deltas: Iterable[MoveDelta]) -> None:
        for d in reversed(list(deltas)):
            self.undo(d)

    # -- queries ----------------------------------------------------------

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def mult(self, i: int, v: int) -> int:
        return self.vparts[v].get(i, 0)

    def vertices_of(self, i: int) -> set[int]:
        edges = self.graph.edges
        out = set()
        for e in self.part_edges[i]:
            out.update(edges[e])
        return out

    def replication_factor(self) -> Fraction:
        return Fraction(self.copies, self.graph.n)

    def is_balanced(self) -> bool:
        return max(self.part_size) <= self.cap

    def violating_parts(self) -> list[int]:
        return [i for i, s in enumerate(self.part_size) if s > self.cap]

    def reachable_parts(self, e: int) -> set[int]:
        u, v = self.graph.edges[e]
        a, b = self.vparts[u], self.vparts[v]
        if len(a) > len(b):
            a, b = b, a
        return {p for p in a if p in b}

    def other_reachable(self, e: int) -> list[int]:
        """Reachable parts of ``e`` other than its own, ascending."""
        u, v = self.graph.edges[e]
        a, b = self.vparts[u], self.vparts[v]
        if len(a) > len(b):
            a, b = b, a
        own = self.assign[e]
        return sorted(p for p in a if p != own and p in b)

    def is_adjustable(self, e: int) -> bool:
        u, v = self.graph.edges[e]
        a, b = self.vparts[u], self.vparts[v]
        if len(a) > len(b):
            a, b = b, a
        own = self.assign[e]
        for p in a:
            if p != own and p in b:
                return True
        return False

    def adjustable_edges(self) -> list[int]:
        return [e for e in range(self.graph.m) if self.is_adjustable(e)]

    # -- blocks -----------------------------------------------------------

    def blocks(self, i: int) -> list[Block]:
        """Decompose part ``i`` into blocks, ordered by smallest vertex id."""
        if not 0 <= i < self.k:
            raise IndexError(f"part {i} out of range")
        edges = self.graph.edges
        parent: dict[int, int] = {}

        def find(x):
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        fixed = []
        for e in sorted(self.part_edges[i]):
            u, v = edges[e]
            parent.setdefault(u, u)
            parent.setdefault(v, v)
            if not self.is_adjustable(e):
                fixed.append(e)
                ru, rv = find(u), find(v)
                if ru != rv:
                    if ru < rv:
                        parent[rv] = ru
                    else:
                        parent[ru] = rv
        # union toward the smaller id, so every root is its component's minimum
        groups_v: dict[int, list[int]] = {}
        groups_e: dict[int, list[int]] = {}
        for x in parent:
            r = find(x)
            if r in groups_v:
                groups_v[r].append(x)
            else:
                groups_v[r] = [x]
        for e in fixed:
            r = find(edges[e][0])
            if r in groups_e:
                groups_e[r].append(e)
            else:
                groups_e[r] = [e]
        empty = frozenset()
        return [
            Block(i, frozenset(groups_v[r]), frozenset(groups_e[r]) if r in groups_e else empty)
            for r in sorted(groups_v)
        ]

    def all_blocks(self) -> list[Block]:
        return [c for i in range(self.k) for c in self.blocks(i)]

    def is_current_block(self, c: Block) -> bool:
        """Whether ``c`` is exactly a block of the current partition."""
        i = c.part
        assign = self.assign
        for e in c.edges:
            if assign[e] != i or self.is_adjustable(e):
                return False
        adjacency = self.graph.adjacency
        for v in c.vertices:
            if i not in self.vparts[v]:
                return False
            for _, e in adjacency[v]:
                if assign[e] == i and e not in c.edges and not self.is_adjustable(e):
                    return False
        return True

    def incident_adjustable(self, c: Block) -> list[int]:
        """Adjustable edges of ``c.part`` touching ``V(C)``, ascending.

        Includes adjustable chords with both endpoints in the block, so that
        together with ``E(C)`` these are all part edges incident to ``V(C)``.
        """
        i = c.part
        assign = self.assign
        adjacency = self.graph.adjacency
        out = set()
        for v in c.vertices:
            for _, e in adjacency[v]:
                if assign[e] == i and e not in c.edges:
                    out.add(e)
        return sorted(out)

    def gain(self, c: Block, j: int) -> int:
        """Number of vertex copies saved by moving block ``c`` into part ``j``."""
        if j == c.part:
            raise PartitionError("gain target must differ from the block's part")
        vparts = self.vparts
        return sum(1 for v in c.vertices if j in vparts[v])

    def gains(self, c: Block) -> dict[int, int]:
        """Positive gains of ``c`` for every other part."""
        out: Counter = Counter()
        for v in c.vertices:
            out.update(self.vparts[v].keys())
        out.pop(c.part, None)
        return dict(out)

    def block_stats(self) -> dict:
        hist: Counter = Counter()
        for i in range(self.k):
            for c in self.blocks(i):
                hist[c.size] += 1
        return {"count": sum(hist.values()), "histogram": dict(sorted(hist.items()))}

    # -- consistency ------------------------------------------------------

    def state(self) -> tuple:
        """Hashable snapshot of all bookkeeping, insensitive to dict order."""
        return (
            tuple(self.assign),
            tuple(self.part_size),
            tuple(self.part_vcount),
            self.copies,
            tuple(tuple(sorted(d.items())) for d in self.vparts),
        )

    def recompute_copies(self) -> int:
        seen = set()
        for e, p in enumerate(self.assign):
            u, v = self.graph.edges[e]
            seen.add((p, u))
            seen.add((p, v))
        return len(seen)

    def check(self) -> None:
        """Recompute every field from scratch and compare; raise on mismatch."""
        fresh = Partition(self.graph, self.k, self.alpha, self.assign)
        if fresh.state() != self.state():
            raise AssertionError("incremental partition state diverged from recomputation")
        if [set(s) for s in fresh.part_edges] != self.part_edges:
            raise AssertionError("part edge sets diverged from recomputation")

    def copy(self) -> Partition:
        return Partition(self.graph, self.k, self.alpha, self.assign)

    def __repr__(self):
        return f"Partition(k={self.k}, alpha={self.alpha}, cap={self.cap}, copies={self.copies})"


def new_partition(graph: Graph, k: int, alpha, assign: Sequence[int]) -> Partition:
    return Partition(graph, k, alpha, assign)


def replication_factor(p: Partition) -> Fraction:
    return p.replication_factor()


# -- partition files --------------------------------------------------------


def _first_offenders(items: list, limit: int = 10) -> str:
    shown = ", ".join(str(x) for x in items[:limit])
    more = f" (+{len(items) - limit} more)" if len(items) > limit else ""
    return shown + more


def load_partition(stream: TextIO | str, graph: Graph) -> tuple[list[int], int | None]:
    """Read a partition file: optional ``k=<k>`` header, then one part id per edge.

    Returns the assignment and the header ``k`` (``None`` when absent).
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    header_k = None
    assign: list[int] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        if line.startswith("k="):
            if header_k is not None or assign:
                raise PartitionError(f"line {lineno}: header must come first and only once")
            try:
                header_k = int(line[2:])
            except ValueError:
                raise PartitionError(f"line {lineno}: bad header {line!r}") from None
            continue
        try:
            assign.append(int(line))
        except ValueError:
            raise PartitionError(f"line {lineno}: expected an integer part id, got {line!r}") from None
    if len(assign) != graph.m:
        raise PartitionError(f"partition lists {len(assign)} edges, graph has {graph.m}")
    if header_k is not None:
        bad = [e for e, p in enumerate(assign) if not 0 <= p < header_k]
        if bad:
            raise PartitionError(
                f"part ids outside 0..{header_k - 1} for header k={header_k} at edges "
                + _first_offenders(bad)
            )
    return assign, header_k


def load_partition_triples(stream: TextIO | str, graph: Graph) -> list[int]:
    """Read ``u v p`` lines (original vertex ids) and match them to graph edges."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    ids = {label: v for v, label in enumerate(graph.labels)}
    assign: list[int | None] = [None] * graph.m
    unmatched = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise PartitionError(f"line {lineno}: expected 'u v p', got {line!r}")
        try:
            a, b, p = (int(t) for t in tokens)
        except ValueError:
            raise PartitionError(f"line {lineno}: non-integer token in {line!r}") from None
        u, v = ids.get(a), ids.get(b)
        e = graph.edge_id(u, v) if u is not None and v is not None else None
        if e is None or (assign[e] is not None and assign[e] != p):
            unmatched.append(f"({a},{b})@{lineno}")
            continue
        assign[e] = p
    if unmatched:
        raise PartitionError("unmatched edges: " + _first_offenders(unmatched))
    missing = [e for e, p in enumerate(assign) if p is None]
    if missing:
        labels = graph.labels
        shown = [f"({labels[graph.edges[e][0]]},{labels[graph.edges[e][1]]})" for e in missing]
        raise PartitionError("edges without a part: " + _first_offenders(shown))
    return assign  # type: ignore[return-value]


def dump_partition(assign: Sequence[int], k: int | None = None) -> str:
    head = f"k={k}\n" if k is not None else ""
    return head + "".join(f"{p}\n" for p in assign)


def read_partition(path, graph: Graph, fmt: str = "auto") -> tuple[list[int], int | None]:
    """Read a partition file in the per-edge (``lines``) or ``triples`` format."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "auto":
        fmt = "lines"
        for line in text.splitlines():
            s = line.strip()
            if s and s[0] not in "#%" and not s.startswith("k="):
                fmt = "triples" if len(s.split()) == 3 else "lines"
                break
    if fmt == "triples":
        return load_partition_triples(text, graph), None
    if fmt != "lines":
        raise PartitionError(f"unknown partition format {fmt!r}")
    return load_partition(text, graph)


def write_partition(assign: Sequence[int], path, k: int | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_partition(assign, k))
