"""Refinement reports: before/after quality and block statistics."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .partition import Partition


@dataclass
class Snapshot:
    copies: int
    rf: Fraction
    balanced: bool
    part_sizes: list[int]
    block_count: int
    block_histogram: dict[int, int]

    @classmethod
    def of(cls, p: Partition, with_blocks: bool = True) -> Snapshot:
        stats = p.block_stats() if with_blocks else {"count": 0, "histogram": {}}
        return cls(
            copies=p.copies,
            rf=p.replication_factor(),
            balanced=p.is_balanced(),
            part_sizes=list(p.part_size),
            block_count=stats["count"],
            block_histogram=stats["histogram"],
        )


@dataclass
class RefineReport:
    algo: str
    n: int
    m: int
    avg_degree: Fraction
    k: int
    alpha: Fraction
    cap: int
    seed: int
    before: Snapshot
    after: Snapshot
    successes: int = 0
    failures: int = 0
    rounds: int = 0
    stop_reason: str = ""
    wall_time: float = 0.0
    rf_upper_bound: Fraction = Fraction(0)
    stages: list = field(default_factory=list)

    @property
    def improvement(self) -> Fraction:
        if self.before.rf == 0:
            return Fraction(0)
        return (self.before.rf - self.after.rf) / self.before.rf

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "algo": self.algo,
            "n": self.n,
            "m": self.m,
            "avg_degree": float(self.avg_degree),
            "k": self.k,
            "alpha": str(self.alpha) if self.alpha.denominator == 1 else f"{float(self.alpha):g}",
            "cap": self.cap,
            "seed": self.seed,
            "rf_before": float(self.before.rf),
            "rf_after": float(self.after.rf),
            "copies_before": self.before.copies,
            "copies_after": self.after.copies,
            "improvement_pct": float(self.improvement * 100),
            "balanced_before": self.before.balanced,
            "balanced_after": self.after.balanced,
            "blocks_before": self.before.block_count,
            "blocks_after": self.after.block_count,
            "block_histogram_before": {str(s): c for s, c in self.before.block_histogram.items()},
            "block_histogram_after": {str(s): c for s, c in self.after.block_histogram.items()},
            "successes": self.successes,
            "failures": self.failures,
            "rounds": self.rounds,
            "stop_reason": self.stop_reason,
            "rf_upper_bound": float(self.rf_upper_bound),
        }
        if self.stages:
            out["stages"] = [s.to_dict(timing=timing) for s in self.stages]
        if timing:
            out["wall_time_secs"] = self.wall_time
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing=timing), indent=2, sort_keys=False) + "\n"

    CSV_FIELDS = (
        "algo", "n", "m", "k", "alpha", "cap", "seed", "rf_before", "rf_after",
        "copies_before", "copies_after", "improvement_pct", "balanced_after",
        "blocks_before", "blocks_after", "successes", "failures", "rounds", "stop_reason",
    )

    def to_csv(self, header: bool = True, timing: bool = False) -> str:
        row = self.to_dict(timing=timing)
        fields = list(self.CSV_FIELDS) + (["wall_time_secs"] if timing else [])
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
        if header:
            writer.writeheader()
        writer.writerow(row)
        return buf.getvalue()

