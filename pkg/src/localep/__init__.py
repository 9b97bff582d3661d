"""Localized Erdős–Pósa certificates for H-subdivisions."""

from localep.errors import (
    BudgetExceeded,
    InvariantError,
    MalformedInput,
    NoDangerousPath,
    UnsupportedPattern,
    WrongBranch,
)
from localep.graph import Graph, Separation, build_graph, delete_vertices, induced_subgraph, is_path_in

__all__ = [
    "BudgetExceeded",
    "Graph",
    "InvariantError",
    "MalformedInput",
    "NoDangerousPath",
    "Separation",
    "UnsupportedPattern",
    "WrongBranch",
    "build_graph",
    "delete_vertices",
    "induced_subgraph",
    "is_path_in",
]

__version__ = "0.1.0"
