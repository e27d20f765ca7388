"""Max-flow based multi-block refinement (LS-F)."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .graph import average_degree
from .maxflow import FlowNetwork, max_flow
from .partition import Block, MoveDelta, Partition
from .report import RefineReport, Snapshot

SOURCE, SINK = 0, 1


@dataclass
class FlowConfig:
    """Knobs for :func:`lsf`. ``max_rounds=None`` means ``200 * k``."""

    seed: int = 0
    max_rounds: Optional[int] = None
    stagnation_rounds: int = 50
    time_budget_secs: Optional[float] = 60.0
    assert_level: int = 0
    observer: Optional[Callable] = field(default=None, repr=False)


class BlockCache:
    """Per-part block lists, recomputed only for parts marked dirty.

    Parts that neither sent nor received edges keep their list, but a move
    elsewhere can still change which of their edges are adjustable, so
    entries must be checked with ``Partition.is_current_block`` before use.
    """

    def __init__(self, p: Partition):
        self.p = p
        self._blocks: dict[int, list[Block]] = {}
        self.recomputed = 0

    def get(self, i: int) -> list[Block]:
        blocks = self._blocks.get(i)
        if blocks is None:
            blocks = self._blocks[i] = self.p.blocks(i)
            self.recomputed += 1
        return blocks

    def invalidate(self, parts) -> None:
        for i in parts:
            self._blocks.pop(i, None)


@dataclass
class IndependentBlockSet:
    blocks: list[Block]
    destinations: dict = field(default_factory=dict)
    reserved: list[int] = field(default_factory=list)


@dataclass
class AdjustPlan:
    network: FlowNetwork
    blocks: list[Block]
    destinations: dict
    incident: dict
    source_arc: dict
    routes: list
    reserved: list[int]
    delta: list[int]
    indicator: dict = field(default_factory=dict)


@dataclass
class MFResult:
    applied: list[Block]
    reverted: list[Block]
    deltas: list[MoveDelta]
    gain: int
    copies_change: int
    flow_value: int
    changed_parts: set


def _lazy_shuffled(items, rng: random.Random):
    """Yield ``items`` in uniformly random order, drawing only as consumed."""
    idx = list(range(len(items)))
    n = len(idx)
    for t in range(n):
        r = t + rng.randrange(n - t)
        idx[t], idx[r] = idx[r], idx[t]
        yield items[idx[t]]


def select_independent_set(p: Partition, rng: random.Random,
                           cache: BlockCache | None = None) -> IndependentBlockSet:
    """Greedily pick at most one block per part, pairwise at distance >= 2."""
    cache = cache or BlockCache(p)
    adjacency = p.graph.adjacency
    order = list(range(p.k))
    rng.shuffle(order)
    forbidden: set[int] = set()
    picked: list[Block] = []
    for i in order:
        chosen = None
        for attempt in range(2):
            blocks = cache.get(i)
            stale = False
            for c in _lazy_shuffled(blocks, rng):
                if not forbidden.isdisjoint(c.vertices):
                    continue
                if not p.is_current_block(c):
                    stale = True
                    break
                chosen = c
                break
            if not stale:
                break
            if attempt:
                raise AssertionError("fresh block decomposition produced a stale block")
            cache.invalidate([i])
        if chosen is None:
            continue
        picked.append(chosen)
        for v in chosen.vertices:
            forbidden.add(v)
            forbidden.update(w for w, _ in adjacency[v])
    return IndependentBlockSet(picked)


def choose_destinations(p: Partition, s: IndependentBlockSet) -> IndependentBlockSet:
    """Assign each non-vertex block the feasible part with the best gain.

    Capacity for a destination is reserved as blocks are placed, largest
    blocks first; blocks with no positive-gain feasible part are dropped.
    """
    reserved = list(p.part_size)
    destinations: dict = {}
    kept = {c.key for c in s.blocks if c.is_vertex_block}
    ranked = sorted((c for c in s.blocks if not c.is_vertex_block),
                    key=lambda c: (-c.size, c.part, c.min_vertex))
    for c in ranked:
        need = len(c.edges)
        best = None
        best_key = None
        for j, g in p.gains(c).items():
            if reserved[j] + need > p.cap:
                continue
            key = (-g, reserved[j], j)
            if best_key is None or key < best_key:
                best, best_key = j, key
        if best is None:
            continue
        destinations[c.key] = best
        reserved[best] += need
        kept.add(c.key)
    blocks = [c for c in s.blocks if c.key in kept]
    return IndependentBlockSet(blocks, destinations, reserved)


def build_flow_network(p: Partition, s: IndependentBlockSet) -> AdjustPlan:
    """Flow network routing every incident adjustable edge to a reachable part.

    Node layout: source 0, sink 1, one node per adjustable edge, then one per
    part. Each part's sink arc carries the room left after block reservations,
    with no credit for edges that may leave the part.
    """
    reserved = s.reserved or list(p.part_size)
    incident = {c.key: p.incident_adjustable(c) for c in s.blocks}
    edge_ids = [e for c in s.blocks for e in incident[c.key]]
    n_edge = len(edge_ids)
    part_node0 = 2 + n_edge
    net = FlowNetwork(part_node0 + p.k, SOURCE, SINK)
    source_arc = {}
    routes = []
    for t, e in enumerate(edge_ids):
        source_arc[e] = net.add_arc(SOURCE, 2 + t, 1)
    for t, e in enumerate(edge_ids):
        for j in p.other_reachable(e):
            routes.append((net.add_arc(2 + t, part_node0 + j, 1), e, j))
    delta = [max(0, p.cap - reserved[j]) for j in range(p.k)]
    for j in range(p.k):
        net.add_arc(part_node0 + j, SINK, delta[j])
    return AdjustPlan(net, list(s.blocks), dict(s.destinations), incident,
                      source_arc, routes, reserved, delta)


def mf(p: Partition, plan: AdjustPlan) -> MFResult:
    """Solve the plan's flow and commit every block whose edges all got routed."""
    res = max_flow(plan.network)
    flow = res.flow
    target = {}
    for a, e, j in plan.routes:
        if flow[a]:
            target[e] = j
    applied, reverted = [], []
    for c in plan.blocks:
        ok = all(flow[plan.source_arc[e]] == 1 for e in plan.incident[c.key])
        plan.indicator[c.key] = int(ok)
        (applied if ok else reverted).append(c)
    before = p.copies
    deltas: list[MoveDelta] = []
    changed: set[int] = set()
    gain = 0
    for c in applied:
        for e in plan.incident[c.key]:
            deltas.append(p.move_edge(e, target[e]))
            changed.add(target[e])
        changed.add(c.part)
    for c in applied:
        dest = plan.destinations.get(c.key)
        if dest is None:
            gain += 1
            continue
        gain += p.gain(c, dest)
        for e in sorted(c.edges):
            deltas.append(p.move_edge(e, dest))
        changed.add(dest)
    return MFResult(applied, reverted, deltas, gain, p.copies - before,
                    res.value, changed)


def _check_round(p: Partition, s: IndependentBlockSet, level: int) -> None:
    if level < 1:
        return
    seen_v: set[int] = set()
    seen_e: set[int] = set()
    parts = set()
    for c in s.blocks:
        if c.part in parts:
            raise AssertionError("two blocks selected from one part")
        parts.add(c.part)
        if not seen_v.isdisjoint(c.vertices):
            raise AssertionError("selected blocks share vertices")
        seen_v |= c.vertices
        inc = set(p.incident_adjustable(c))
        if not seen_e.isdisjoint(inc):
            raise AssertionError("selected blocks share incident adjustable edges")
        seen_e |= inc


def lsf(p: Partition, config: FlowConfig | None = None) -> RefineReport:
    """Refine ``p`` in place with repeated max-flow adjustments."""
    config = config or FlowConfig()
    if not p.is_balanced():
        raise ValueError(f"input partition is not balanced: parts {p.violating_parts()}")
    rng = random.Random(config.seed)
    max_rounds = config.max_rounds if config.max_rounds is not None else 200 * p.k
    start = time.perf_counter()
    before = Snapshot.of(p)
    cache = BlockCache(p)
    rounds = successes = failures = idle = 0
    stop = "max-rounds"
    while rounds < max_rounds:
        if config.time_budget_secs is not None and time.perf_counter() - start > config.time_budget_secs:
            stop = "time-budget"
            break
        rounds += 1
        chosen = choose_destinations(p, select_independent_set(p, rng, cache))
        _check_round(p, chosen, config.assert_level)
        copies = p.copies
        result = None
        if chosen.blocks:
            plan = build_flow_network(p, chosen)
            result = mf(p, plan)
            cache.invalidate(result.changed_parts)
            successes += len(result.applied)
            failures += len(result.reverted)
            if config.assert_level >= 1:
                if not p.is_balanced():
                    raise AssertionError(f"partition unbalanced: parts {p.violating_parts()}")
                if p.copies > copies - result.gain:
                    raise AssertionError("flow adjustment did not realize its gain")
            if config.assert_level >= 2:
                p.check()
        if p.copies < copies:
            idle = 0
            if config.observer is not None:
                config.observer("mf", p)
        else:
            if idle == 0:
                # untouched parts may hold lists missing newly formed blocks
                cache.invalidate(range(p.k))
            idle += 1
            if idle >= config.stagnation_rounds:
                stop = "stagnation"
                break
    after = Snapshot.of(p)
    return RefineReport(
        algo="lsf", n=p.n, m=p.m, avg_degree=average_degree(p.graph), k=p.k,
        alpha=p.alpha, cap=p.cap, seed=config.seed, before=before, after=after,
        successes=successes, failures=failures, rounds=rounds, stop_reason=stop,
        wall_time=time.perf_counter() - start,
        rf_upper_bound=min(average_degree(p.graph), p.k),
    )
