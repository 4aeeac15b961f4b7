"""Exact k-leaf spanning tree solving by a measure-driven bounded search tree."""

from .graph import Graph, complete_graph, cycle_graph, path_graph, petersen_graph, star_graph
from .oracle import OracleResult, max_leaf_bruteforce, min_cds_bruteforce
from .search import SearchStats, Verdict, find_max_leaf, solve

__all__ = [
    "Graph",
    "OracleResult",
    "SearchStats",
    "Verdict",
    "complete_graph",
    "cycle_graph",
    "find_max_leaf",
    "max_leaf_bruteforce",
    "min_cds_bruteforce",
    "path_graph",
    "petersen_graph",
    "solve",
    "star_graph",
]
