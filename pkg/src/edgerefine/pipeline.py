"""Run one refiner or the greedy-then-flow composition on a partition."""

from __future__ import annotations

from .flow import FlowConfig, lsf
from .greedy import GreedyConfig, lsg
from .partition import Partition
from .report import RefineReport

ALGORITHMS = ("lsg", "lsf", "lsg+lsf")


def refine(p: Partition, algo: str = "lsg", seed: int = 0, *, max_rounds=None,
           stagnation_rounds: int = 50, time_budget_secs=60.0, capacity_rule: str = "edges",
           assert_level: int = 0, observer=None) -> RefineReport:
    """Refine ``p`` in place with ``algo`` and return the combined report."""
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}; choose from {ALGORITHMS}")
    greedy = GreedyConfig(seed=seed, assert_level=assert_level,
                          capacity_rule=capacity_rule, observer=observer)
    flow = FlowConfig(seed=seed, max_rounds=max_rounds, stagnation_rounds=stagnation_rounds,
                      time_budget_secs=time_budget_secs, assert_level=assert_level,
                      observer=observer)
    if algo == "lsg":
        return lsg(p, greedy)
    if algo == "lsf":
        return lsf(p, flow)
    first = lsg(p, greedy)
    second = lsf(p, flow)
    return RefineReport(
        algo=algo, n=p.n, m=p.m, avg_degree=first.avg_degree, k=p.k, alpha=p.alpha,
        cap=p.cap, seed=seed, before=first.before, after=second.after,
        successes=first.successes + second.successes,
        failures=first.failures + second.failures,
        rounds=first.rounds + second.rounds, stop_reason=second.stop_reason,
        wall_time=first.wall_time + second.wall_time,
        rf_upper_bound=first.rf_upper_bound, stages=[first, second],
    )
