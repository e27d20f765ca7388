"""Local-search refinement of balanced k-edge partitions.

Two refiners lower the replication factor of an existing vertex-cut
partition without breaking the balance bound: a greedy block-by-block
adjuster (:func:`lsg`) and a max-flow based multi-block adjuster
(:func:`lsf`).
"""

from .estimator import EdgePartitionRefiner, HashEdgePartitioner, RandomEdgePartitioner
from .flow import FlowConfig, lsf
from .graph import Graph, NormalizationLog, average_degree, load_edge_list, read_graph, write_graph
from .greedy import GreedyConfig, lsg, ra
from .instances import (
    gen_bipartite_worstcase,
    gen_block_move_demo,
    gen_clique_worstcase,
    gen_random_powerlaw,
    initial_hash,
    initial_random,
    rf_upper_bound,
)
from .maxflow import FlowNetwork, FlowResult, max_flow
from .partition import Block, MoveDelta, Partition, PartitionError, new_partition, replication_factor
from .pipeline import refine
from .report import RefineReport

__all__ = [
    "Block", "EdgePartitionRefiner", "FlowConfig", "FlowNetwork", "FlowResult", "Graph",
    "GreedyConfig", "HashEdgePartitioner", "MoveDelta", "NormalizationLog", "Partition",
    "PartitionError", "RandomEdgePartitioner", "RefineReport", "average_degree",
    "gen_bipartite_worstcase", "gen_block_move_demo", "gen_clique_worstcase",
    "gen_random_powerlaw", "initial_hash", "initial_random", "rf_upper_bound", "load_edge_list",
    "lsf", "lsg", "max_flow", "new_partition", "ra", "read_graph", "refine",
    "replication_factor", "write_graph",
]
