"""Classical baselines: DSATUR colouring and k-SAT backtracking."""

from .backend import BACKEND, get_kernels
from .search import (
    ColouringResult,
    TreeStats,
    dsatur,
    dsatur_simplified,
    greedy_clique,
    is_proper_colouring,
    sat_backtrack,
    variable_order,
)

__all__ = [
    "BACKEND",
    "ColouringResult",
    "TreeStats",
    "dsatur",
    "dsatur_simplified",
    "get_kernels",
    "greedy_clique",
    "is_proper_colouring",
    "sat_backtrack",
    "variable_order",
]
