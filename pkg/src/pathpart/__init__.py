"""Solvers, verifiers and hardness-reduction generators for partitioning and
covering graph vertex sets with unrestricted, induced, or shortest paths."""

from .checker import Kind, Mode, PathSystem, Variant, Verdict, verify
from .graph import Graph, UNREACHABLE

__all__ = [
    "Graph",
    "Kind",
    "Mode",
    "PathSystem",
    "UNREACHABLE",
    "Variant",
    "Verdict",
    "verify",
]

__version__ = "0.1.0"
