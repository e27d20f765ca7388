"""Command-line front end: gen, partition, refine, eval, sweep.

Exit codes: 0 success, 1 runtime or validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .graph import GraphFormatError, average_degree, read_graph, write_graph
from .instances import (
    gen_bipartite_worstcase,
    gen_clique_worstcase,
    gen_random_powerlaw,
    initial_hash,
    initial_random,
    rf_upper_bound,
)
from .partition import Partition, PartitionError, parse_alpha, read_partition, write_partition
from .pipeline import ALGORITHMS, refine
from .report import RefineReport

REPORT_DIR_ENV = "EDGEREFINE_REPORT_DIR"
DEFAULT_K = 64
DEFAULT_ALPHA = "1.1"


class CLIError(Exception):
    pass


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _write_report(text: str, args, default_name: str) -> None:
    target = getattr(args, "report_out", None)
    if target is None and os.environ.get(REPORT_DIR_ENV):
        target = Path(os.environ[REPORT_DIR_ENV]) / default_name
    if target is None:
        sys.stdout.write(text)
        return
    target = Path(target)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")


def _load(args, k_flag):
    g, _ = read_graph(args.graph)
    assign, header_k = read_partition(args.partition, g, fmt=args.format)
    if header_k is not None and k_flag is not None and header_k != k_flag:
        raise CLIError(f"--k {k_flag} disagrees with partition header k={header_k}")
    k = k_flag if k_flag is not None else header_k
    if k is None:
        k = max(assign) + 1
    bad = [e for e, p in enumerate(assign) if not 0 <= p < k]
    if bad:
        raise CLIError(f"part ids outside 0..{k - 1} at edges {bad[:10]}")
    return g, Partition(g, k, args.alpha, assign)


# -- subcommands --------------------------------------------------------------


def cmd_gen(args) -> int:
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    if args.family == "powerlaw":
        g = gen_random_powerlaw(args.n, args.m, args.exponent, args.seed)
        write_graph(g, out)
        print(f"wrote {out} (n={g.n}, m={g.m})")
        return 0
    inst = gen_clique_worstcase(args.p) if args.family == "clique-worstcase" \
        else gen_bipartite_worstcase(args.k)
    write_graph(inst.graph, out)
    for name, assign in (("optimal", inst.optimal), ("adversarial", inst.adversarial)):
        write_partition(assign, f"{out}.{name}.part", inst.k)
    print(f"wrote {out} (n={inst.graph.n}, m={inst.graph.m}, k={inst.k}) "
          f"and {out}.optimal.part, {out}.adversarial.part")
    return 0


def cmd_partition(args) -> int:
    g, _ = read_graph(args.graph)
    if args.k < 1:
        raise CLIError(f"k must be >= 1, got {args.k}")
    if args.method == "random":
        assign = initial_random(g, args.k, args.alpha, args.seed)
    else:
        assign = initial_hash(g, args.k)
    p = Partition(g, args.k, args.alpha, assign)
    if not p.is_balanced():
        raise CLIError(f"generated partition unbalanced in parts {p.violating_parts()}")
    write_partition(assign, args.out, args.k)
    print(f"wrote {args.out} (k={args.k}, rf={float(p.replication_factor()):.6f})")
    return 0


def cmd_refine(args) -> int:
    g, p = _load(args, args.k)
    if not p.is_balanced():
        first = p.violating_parts()[0]
        raise CLIError(f"input partition not {p.alpha}-balanced: part {first} has "
                       f"{p.part_size[first]} edges > cap {p.cap}")
    report = refine(p, args.algo, args.seed, max_rounds=args.max_rounds,
                    stagnation_rounds=args.stagnation_rounds,
                    time_budget_secs=args.time_budget or None, capacity_rule=args.capacity_rule)
    out = args.out or f"{args.partition}.{args.algo.replace('+', '_')}.part"
    write_partition(p.assign, out, p.k)
    text = report.to_json(args.timing) if args.report == "json" else report.to_csv(timing=args.timing)
    _write_report(text, args, f"{Path(out).name}.report.{args.report}")
    return 0


def evaluate(p: Partition) -> dict:
    stats = p.block_stats()
    return {
        "n": p.n,
        "m": p.m,
        "k": p.k,
        "alpha": str(p.alpha) if p.alpha.denominator == 1 else f"{float(p.alpha):g}",
        "cap": p.cap,
        "copies": p.copies,
        "rf": float(p.replication_factor()),
        "rf_exact": f"{p.copies}/{p.n}",
        "balanced": p.is_balanced(),
        "max_part_size": max(p.part_size),
        "adjustable_edges": len(p.adjustable_edges()),
        "blocks": stats["count"],
        "block_histogram": {str(s): c for s, c in stats["histogram"].items()},
        "avg_degree": float(average_degree(p.graph)),
        "rf_upper_bound": float(rf_upper_bound(p.graph, p.k)),
    }


def cmd_eval(args) -> int:
    _, p = _load(args, args.k)
    row = evaluate(p)
    if args.report == "json":
        text = json.dumps(row, indent=2) + "\n"
    else:
        flat = {key: v for key, v in row.items() if key != "block_histogram"}
        text = ",".join(flat) + "\n" + ",".join(str(v) for v in flat.values()) + "\n"
    _write_report(text, args, f"{Path(args.partition).name}.eval.{args.report}")
    return 0


def _sweep_one(job):
    graph_path, k, alpha, algo, method, seed, max_rounds, stagnation, budget = job
    g, _ = read_graph(graph_path)
    assign = initial_random(g, k, alpha, seed) if method == "random" else initial_hash(g, k)
    p = Partition(g, k, alpha, assign)
    report = refine(p, algo, seed, max_rounds=max_rounds, stagnation_rounds=stagnation,
                    time_budget_secs=budget)
    return report.to_csv(header=False)


def cmd_sweep(args) -> int:
    jobs = [(args.graph, k, args.alpha, args.algo, args.method, args.seed,
             args.max_rounds, args.stagnation_rounds, args.time_budget or None) for k in args.k]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_one, jobs))
    else:
        rows = [_sweep_one(j) for j in jobs]
    header = ",".join(RefineReport.CSV_FIELDS) + "\n"
    _write_report(header + "".join(rows), args, f"{Path(args.graph).name}.sweep.csv")
    return 0


# -- parser -------------------------------------------------------------------


def _add_refine_opts(sp):
    sp.add_argument("--algo", choices=ALGORITHMS, default="lsg")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-rounds", type=_positive_int, default=None)
    sp.add_argument("--stagnation-rounds", type=_positive_int, default=50)
    sp.add_argument("--time-budget", type=float, default=60.0,
                    help="seconds for the flow refiner; 0 disables the limit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgerefine", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate graphs and worst-case partitions")
    gsub = gen.add_subparsers(dest="family", required=True)
    g1 = gsub.add_parser("clique-worstcase")
    g1.add_argument("--p", type=int, required=True)
    g2 = gsub.add_parser("bipartite-worstcase")
    g2.add_argument("--k", type=int, required=True)
    g3 = gsub.add_parser("powerlaw")
    g3.add_argument("--n", type=int, required=True)
    g3.add_argument("--m", type=int, required=True)
    g3.add_argument("--exponent", type=float, default=2.5)
    g3.add_argument("--seed", type=int, default=0)
    for g in (g1, g2, g3):
        g.add_argument("--out", required=True, help="edge-list path")
        g.set_defaults(func=cmd_gen)

    part = sub.add_parser("partition", help="build an initial partition")
    part.add_argument("graph")
    part.add_argument("--k", type=int, default=DEFAULT_K)
    part.add_argument("--alpha", type=parse_alpha, default=DEFAULT_ALPHA)
    part.add_argument("--method", choices=("random", "hash"), default="random")
    part.add_argument("--seed", type=int, default=0)
    part.add_argument("--out", required=True)
    part.set_defaults(func=cmd_partition)

    ref = sub.add_parser("refine", help="refine a partition with LS-G and/or LS-F")
    ref.add_argument("graph")
    ref.add_argument("partition")
    ref.add_argument("--k", type=_positive_int, default=None)
    ref.add_argument("--alpha", type=parse_alpha, default=DEFAULT_ALPHA)
    _add_refine_opts(ref)
    ref.add_argument("--capacity-rule", choices=("edges", "vertices"), default="edges")
    ref.add_argument("--out", default=None, help="refined partition path")
    ref.add_argument("--report", choices=("json", "csv"), default="json")
    ref.add_argument("--report-out", default=None)
    ref.add_argument("--timing", action="store_true", help="include wall time in the report")
    ref.add_argument("--format", choices=("auto", "lines", "triples"), default="auto")
    ref.set_defaults(func=cmd_refine)

    ev = sub.add_parser("eval", help="report RF, balance and blocks of a partition")
    ev.add_argument("graph")
    ev.add_argument("partition")
    ev.add_argument("--k", type=_positive_int, default=None)
    ev.add_argument("--alpha", type=parse_alpha, default=DEFAULT_ALPHA)
    ev.add_argument("--report", choices=("json", "csv"), default="json")
    ev.add_argument("--report-out", default=None)
    ev.add_argument("--format", choices=("auto", "lines", "triples"), default="auto")
    ev.set_defaults(func=cmd_eval)

    sw = sub.add_parser("sweep", help="CSV rows over several k values")
    sw.add_argument("graph")
    sw.add_argument("--k", type=_positive_int, nargs="+", default=[DEFAULT_K])
    sw.add_argument("--alpha", type=parse_alpha, default=DEFAULT_ALPHA)
    sw.add_argument("--method", choices=("random", "hash"), default="random")
    sw.add_argument("--jobs", type=_positive_int, default=1)
    sw.add_argument("--report-out", default=None)
    _add_refine_opts(sw)
    sw.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CLIError, PartitionError, GraphFormatError, ValueError, OSError) as exc:
        print(f"edgerefine: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
