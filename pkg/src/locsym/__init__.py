"""Local and global symmetry of graphs, degree-sequence metrics and
Monte Carlo experiments on Erdős-Rényi random graphs."""

__version__ = "0.1.0"

from .canonical import CanonicalCode, RootedGraph, canonical_code, rooted_isomorphic
from .degree import degree_function, degree_mismatch_count, dsed, min_mismatch_bruteforce
from .errors import BudgetExceeded
from .graph import Graph, closed_k_neighborhood, from_edge_list, induced, open_k_neighborhood
from .symmetry import (
    GLOBAL,
    graph_globally_symmetric,
    graph_k_locally_symmetric,
    k_locally_symmetric,
    symmetry_partition,
)

__all__ = [
    "BudgetExceeded",
    "CanonicalCode",
    "GLOBAL",
    "Graph",
    "RootedGraph",
    "canonical_code",
    "closed_k_neighborhood",
    "degree_function",
    "degree_mismatch_count",
    "dsed",
    "from_edge_list",
    "graph_globally_symmetric",
    "graph_k_locally_symmetric",
    "induced",
    "k_locally_symmetric",
    "min_mismatch_bruteforce",
    "open_k_neighborhood",
    "rooted_isomorphic",
    "symmetry_partition",
]
