"""Initial partitions, synthetic graphs and worst-case families."""

from __future__ import annotations

import bisect
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, average_degree
from .partition import Partition


@dataclass(frozen=True)
class WorstCaseInstance:
    """Graph with a 1-balanced optimal partition and an adversarial one.

    The adversarial partition has no adjustable edges and every part sits at
    capacity, so neither refiner can touch it.
    """

    graph: Graph
    k: int
    optimal: tuple[int, ...]
    adversarial: tuple[int, ...]
    rf_optimal: Fraction
    rf_adversarial: Fraction

    def partition(self, which: str = "adversarial", alpha=1) -> Partition:
        assign = self.adversarial if which == "adversarial" else self.optimal
        return Partition(self.graph, self.k, alpha, assign)


def gen_clique_worstcase(p: int) -> WorstCaseInstance:
    """``k = p(p-1)/2`` disjoint copies of ``K_p``.

    The adversarial partition sends the t-th edge (lexicographic) of every
    clique to part t, so each vertex lands in ``p - 1`` parts.
    """
    if p < 3:
        raise ValueError(f"clique worst case needs p >= 3, got {p}")
    k = p * (p - 1) // 2
    pairs = list(itertools.combinations(range(p), 2))
    edges, optimal, adversarial = [], [], []
    for c in range(k):
        base = c * p
        for t, (a, b) in enumerate(pairs):
            edges.append((base + a, base + b))
            optimal.append(c)
            adversarial.append(t)
    g = Graph(k * p, edges)
    return WorstCaseInstance(g, k, tuple(optimal), tuple(adversarial),
                             Fraction(1), Fraction(p - 1))


def gen_bipartite_worstcase(k: int) -> WorstCaseInstance:
    """``k`` disjoint ``K_{k^2,k}``; adversarially, all edges of the j-th small-side
    vertex of every component go to part j."""
    if k < 2:
        raise ValueError(f"bipartite worst case needs k >= 2, got {k}")
    big = k * k
    stride = big + k
    edges, optimal, adversarial = [], [], []
    for i in range(k):
        base = i * stride
        for j in range(k):
            hub = base + j
            for u in range(big):
                edges.append((hub, base + k + u))
                optimal.append(i)
                adversarial.append(j)
    g = Graph(k * stride, edges)
    return WorstCaseInstance(g, k, tuple(optimal), tuple(adversarial),
                             Fraction(1), Fraction(k * k + 1, k + 1))


def initial_random(g: Graph, k: int, alpha=1, seed: int = 0) -> list[int]:
    """Shuffle edges with ``seed`` and deal them round-robin into ``k`` parts."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    order = list(range(g.m))
    random.Random(seed).shuffle(order)
    assign = [0] * g.m
    for t, e in enumerate(order):
        assign[e] = t % k
    return assign


def initial_hash(g: Graph, k: int) -> list[int]:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return [e % k for e in range(g.m)]


def gen_random_powerlaw(n: int, m: int, exponent: float = 2.5, seed: int = 0) -> Graph:
    """Connected simple graph with a skewed, power-law-like degree profile.

    Vertex ``v`` gets weight ``(v + 1) ** (-1 / (exponent - 1))``. A random
    weighted tree guarantees connectivity; the remaining edges join endpoint
    pairs drawn proportionally to weight, rejecting loops and repeats.
    """
    if n < 2:
        raise ValueError("need at least 2 vertices")
    if exponent <= 1:
        raise ValueError("exponent must exceed 1")
    if m < n - 1:
        raise ValueError(f"m={m} too small to connect {n} vertices")
    if m > n * (n - 1) // 2:
        raise ValueError(f"m={m} exceeds the {n * (n - 1) // 2} possible edges on {n} vertices")
    rng = random.Random(seed)
    beta = 1.0 / (exponent - 1.0)
    weights = [(v + 1) ** -beta for v in range(n)]
    cum = list(itertools.accumulate(weights))
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for v in range(1, n):
        u = bisect.bisect_left(cum, rng.random() * cum[v - 1], 0, v)
        u = min(u, v - 1)
        edges.append((u, v))
        seen.add((u, v))
    total = cum[-1]
    attempts = 0
    limit = 200 * m + 10_000
    while len(edges) < m:
        attempts += 1
        if attempts > limit:
            raise ValueError(f"could not sample {m} distinct edges on {n} vertices")
        a = min(bisect.bisect_left(cum, rng.random() * total), n - 1)
        b = min(bisect.bisect_left(cum, rng.random() * total), n - 1)
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        if key in seen:
            continue
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


def rf_upper_bound(g: Graph, k: int) -> Fraction:
    """``min(k, 2m/n)``: no feasible partition has a larger replication factor."""
    return min(Fraction(k), average_degree(g))


@dataclass(frozen=True)
class BlockMoveDemo:
    """Four-part instance with one block whose move saves two copies.

    ``roles`` maps the names used in tests (``block``, ``e1``..``e3``, parts
    ``E1``..``E4``) to vertex sets, edge ids and part ids.
    """

    graph: Graph
    k: int
    alpha: Fraction
    assign: tuple[int, ...]
    roles: dict

    def partition(self) -> Partition:
        return Partition(self.graph, self.k, self.alpha, self.assign)


def gen_block_move_demo() -> BlockMoveDemo:
    # block C = {0, 1, 2} with edges 0-2, 2-1 in part 0; e1 = 0-3 and e3 = 0-5
    # can go to part 1, e2 = 2-4 to part 2; part 3 already holds 0 and 1.
    # 3, 4, 5 stay in part 0 through a star at 6 so no extra copies vanish.
    layout = [
        ((0, 2), 0), ((1, 2), 0),
        ((0, 3), 0), ((2, 4), 0), ((0, 5), 0),
        ((3, 6), 0), ((4, 6), 0), ((5, 6), 0),
        ((0, 7), 1), ((3, 7), 1), ((5, 7), 1),
        ((2, 8), 2), ((4, 8), 2),
        ((0, 9), 3), ((1, 9), 3),
    ]
    g = Graph(10, [e for e, _ in layout])
    assign = tuple(p for _, p in layout)
    roles = {
        "block": frozenset({0, 1, 2}),
        "block_edges": frozenset({g.edge_id(0, 2), g.edge_id(1, 2)}),
        "e1": g.edge_id(0, 3),
        "e2": g.edge_id(2, 4),
        "e3": g.edge_id(0, 5),
        "E1": 0, "E2": 1, "E3": 2, "E4": 3,
    }
    return BlockMoveDemo(g, 4, Fraction(3), assign, roles)
