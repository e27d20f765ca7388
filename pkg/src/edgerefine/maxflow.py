"""Integer maximum flow via Dinic's level-graph / blocking-flow scheme."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class FlowNetwork:
    """Directed network with non-negative integer arc capacities.

    Arc ``a`` is stored at residual slot ``2a`` with its reverse twin at
    ``2a + 1``.
    """

    def __init__(self, n_nodes: int, source: int, sink: int):
        if source == sink:
            raise ValueError("source and sink must differ")
        if not (0 <= source < n_nodes and 0 <= sink < n_nodes):
            raise ValueError("source/sink outside node range")
        self.n_nodes = n_nodes
        self.source = source
        self.sink = sink
        self.tails: list[int] = []
        self.heads: list[int] = []
        self.capacities: list[int] = []

    def add_node(self) -> int:
        self.n_nodes += 1
        return self.n_nodes - 1

    def add_arc(self, tail: int, head: int, cap: int) -> int:
        if not (0 <= tail < self.n_nodes and 0 <= head < self.n_nodes):
            raise ValueError(f"arc ({tail}, {head}) references an unknown node")
        if cap < 0 or int(cap) != cap:
            raise ValueError(f"capacity must be a non-negative integer, got {cap}")
        self.tails.append(tail)
        self.heads.append(head)
        self.capacities.append(int(cap))
        return len(self.tails) - 1

    @property
    def n_arcs(self) -> int:
        return len(self.tails)

    def dump(self) -> str:
        """Text form: header ``nodes N source S sink T`` then ``tail head cap`` lines."""
        lines = [f"nodes {self.n_nodes} source {self.source} sink {self.sink}"]
        lines += [f"{t} {h} {c}" for t, h, c in zip(self.tails, self.heads, self.capacities)]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> FlowNetwork:
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        head = rows[0]
        net = cls(int(head[1]), int(head[3]), int(head[5]))
        for t, h, c in rows[1:]:
            net.add_arc(int(t), int(h), int(c))
        return net


@dataclass
class FlowResult:
    value: int
    flow: list[int]


def max_flow(net: FlowNetwork) -> FlowResult:
    """Compute a maximum ``source -> sink`` flow of ``net``."""
    n = net.n_nodes
    s, t = net.source, net.sink
    m = net.n_arcs
    to = [0] * (2 * m)
    res = [0] * (2 * m)
    adj: list[list[int]] = [[] for _ in range(n)]
    for a in range(m):
        u, v, c = net.tails[a], net.heads[a], net.capacities[a]
        to[2 * a] = v
        res[2 * a] = c
        to[2 * a + 1] = u
        adj[u].append(2 * a)
        adj[v].append(2 * a + 1)

    value = 0
    while True:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for r in adj[u]:
                if res[r] > 0 and level[to[r]] < 0:
                    level[to[r]] = level[u] + 1
                    queue.append(to[r])
        if level[t] < 0:
            break
        it = [0] * n
        while True:
            # iterative DFS along the level graph; stack holds residual slots
            path: list[int] = []
            u = s
            while u != t:
                arcs = adj[u]
                while it[u] < len(arcs):
                    r = arcs[it[u]]
                    if res[r] > 0 and level[to[r]] == level[u] + 1:
                        break
                    it[u] += 1
                if it[u] == len(arcs):
                    if u == s:
                        break
                    level[u] = -1
                    r = path.pop()
                    u = to[r ^ 1]
                    it[u] += 1
                    continue
                r = arcs[it[u]]
                path.append(r)
                u = to[r]
            if u != t:
                break
            push = min(res[r] for r in path)
            for r in path:
                res[r] -= push
                res[r ^ 1] += push
            value += push
    flow = [res[2 * a + 1] for a in range(m)]
    return FlowResult(value, flow)
