"""Solvers for maximum disjoint uni-color path problems on edge-colored graphs."""

from .errors import (
    EnumerationOverflow,
    GraphError,
    ParseError,
    PreconditionError,
    ReductionError,
    SizeLimitError,
    SolverError,
)
from .graph import (
    EdgeColoredGraph,
    Mode,
    PathSolution,
    ProblemInstance,
    UniColorPath,
    instance_digest,
    parse_instance,
    remove_vertices,
    restrict_colors,
    serialize_instance,
    solution,
    validate_instance,
    validate_solution,
)
from .oracle import (
    ConflictGraph,
    enumerate_unicolor_paths,
    solve_exact,
    solve_is_bruteforce,
    solve_thresholdset_bruteforce,
)

__version__ = "0.1.0"

__all__ = [
    "EdgeColoredGraph",
    "Mode",
    "PathSolution",
    "ProblemInstance",
    "UniColorPath",
    "ConflictGraph",
    "SolverError",
    "GraphError",
    "ParseError",
    "PreconditionError",
    "EnumerationOverflow",
    "SizeLimitError",
    "ReductionError",
    "parse_instance",
    "serialize_instance",
    "instance_digest",
    "validate_instance",
    "validate_solution",
    "remove_vertices",
    "restrict_colors",
    "solution",
    "enumerate_unicolor_paths",
    "solve_exact",
    "solve_is_bruteforce",
    "solve_thresholdset_bruteforce",
    "__version__",
]
