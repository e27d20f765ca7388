"""Greedy block-by-block refinement (LS-G)."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .graph import average_degree
from .partition import Block, MoveDelta, Partition, StaleBlockError
from .report import RefineReport, Snapshot

CAPACITY_RULES = ("edges", "vertices")


@dataclass
class GreedyConfig:
    """Knobs for :func:`lsg`.

    ``capacity_rule`` selects the destination test for a block: ``"edges"``
    requires room for all ``|E(C)|`` block edges; ``"vertices"`` applies the
    stricter-looking ``|E_j| <= cap - |V(C)|`` test on top of that.
    ``assert_level`` 1 checks balance after each adjustment attempt, 2 also
    recomputes all bookkeeping from scratch. ``observer(event, partition)``
    is called after each committed adjustment.
    """

    seed: int = 0
    assert_level: int = 0
    capacity_rule: str = "edges"
    observer: Optional[Callable] = field(default=None, repr=False)

    def __post_init__(self):
        if self.capacity_rule not in CAPACITY_RULES:
            raise ValueError(f"capacity_rule must be one of {CAPACITY_RULES}")


@dataclass
class RAResult:
    moved: bool
    deltas: list[MoveDelta]
    destination: Optional[int] = None
    gain: int = 0
    changed_parts: frozenset = frozenset()


def _pick_destination(p: Partition, c: Block, capacity_rule: str) -> Optional[int]:
    need = len(c.edges)
    limit = p.cap - need
    if capacity_rule == "vertices":
        limit = min(limit, p.cap - len(c.vertices))
    best = None
    best_key = None
    for j, g in p.gains(c).items():
        if p.part_size[j] > limit:
            continue
        key = (-g, p.part_size[j], j)
        if best_key is None or key < best_key:
            best, best_key = j, key
    return best


def _pick_edge_target(p: Partition, e: int) -> Optional[int]:
    best = None
    for j in p.other_reachable(e):
        if p.part_size[j] < p.cap and (best is None or p.part_size[j] < p.part_size[best]):
            best = j
    return best


def ra(p: Partition, c: Block, rng: random.Random | None = None,
       capacity_rule: str = "edges", validate: bool = True) -> RAResult:
    """Try to relocate block ``c`` and its incident adjustable edges.

    Non-vertex blocks first go, as a whole, to the feasible part sharing the
    most vertices with them; every incident adjustable edge then moves to a
    reachable part with spare room. On any failure all moves are undone.
    """
    if validate and not p.is_current_block(c):
        raise StaleBlockError(f"block {c.key} is not a block of the current partition")
    if rng is None:
        rng = random.Random(0)
    i = c.part
    incident = p.incident_adjustable(c)
    deltas: list[MoveDelta] = []
    touched = {i}
    dest = None
    gain = 1
    if not c.is_vertex_block:
        dest = _pick_destination(p, c, capacity_rule)
        if dest is None:
            return RAResult(False, [])
        gain = p.gain(c, dest)
        touched.add(dest)
        for e in sorted(c.edges):
            deltas.append(p.move_edge(e, dest))
    order = list(incident)
    rng.shuffle(order)
    for e in order:
        j = _pick_edge_target(p, e)
        if j is None:
            p.undo_all(deltas)
            return RAResult(False, [])
        deltas.append(p.move_edge(e, j))
        touched.add(j)
    return RAResult(True, deltas, dest, gain, frozenset(touched))


def _check(p: Partition, level: int) -> None:
    if level >= 1 and not p.is_balanced():
        raise AssertionError(f"partition unbalanced: parts {p.violating_parts()}")
    if level >= 2:
        p.check()


def lsg(p: Partition, config: GreedyConfig | None = None) -> RefineReport:
    """Refine ``p`` in place with the greedy scan and return a report."""
    config = config or GreedyConfig()
    if not p.is_balanced():
        raise ValueError(f"input partition is not balanced: parts {p.violating_parts()}")
    rng = random.Random(config.seed)
    start = time.perf_counter()
    before = Snapshot.of(p)
    marked = [True] * p.k
    successes = failures = passes = 0
    while True:
        i = next((q for q in range(p.k) if marked[q]), None)
        if i is None:
            break
        marked[i] = False
        passes += 1
        blocks = sorted(p.blocks(i), key=lambda c: (c.size, c.min_vertex))
        for c in blocks:
            # earlier moves in this part may have vacated a vertex block
            if not p.is_current_block(c):
                continue
            copies = p.copies
            res = ra(p, c, rng, config.capacity_rule, validate=False)
            _check(p, config.assert_level)
            if res.moved:
                successes += 1
                if config.assert_level >= 1 and p.copies > copies - res.gain:
                    raise AssertionError("adjustment did not realize its gain")
                for q in res.changed_parts:
                    marked[q] = True
                if config.observer is not None:
                    config.observer("ra", p)
            else:
                failures += 1
    after = Snapshot.of(p)
    return RefineReport(
        algo="lsg", n=p.n, m=p.m, avg_degree=average_degree(p.graph), k=p.k,
        alpha=p.alpha, cap=p.cap, seed=config.seed, before=before, after=after,
        successes=successes, failures=failures, rounds=passes, stop_reason="no-marked-parts",
        wall_time=time.perf_counter() - start,
        rf_upper_bound=min(average_degree(p.graph), p.k),
    )
