"""Minimum unrestricted path partition of a DAG via bipartite matching.

Split every vertex into a left copy (as arc tail) and a right copy (as arc
head); a maximum matching picks a set of arcs in which every vertex has at
most one matched successor and one matched predecessor, i.e. a set of
vertex-disjoint paths.  n - |matching| paths result, which is optimal.
"""

from .checker import Kind, Mode, PathSystem, Variant, verify
from .graph import topological_order
from .matching import BipartiteGraph, max_cardinality_matching


class NotADag(Exception):
    pass


def solve_dagpp(g):
    """Minimum UNRESTRICTED/PARTITION system for a directed acyclic graph."""
    if not g.directed or topological_order(g) is None:
        raise NotADag("solve_dagpp needs a directed acyclic graph")
    bg = BipartiteGraph(g.n, g.n, [(u, v) for u, v in g.edges()])
    matching = max_cardinality_matching(bg)
    succ = {}
    has_pred = set()
    for u, v in matching:
        succ[u] = v
        has_pred.add(v)
    paths = []
    for v in range(g.n):
        if v in has_pred:
            continue
        seq = [v]
        while seq[-1] in succ:
            seq.append(succ[seq[-1]])
        paths.append(seq)
    assert len(paths) == g.n - len(matching)
    system = PathSystem(sorted(paths), Variant(Kind.UNRESTRICTED, Mode.PARTITION))
    assert verify(g, system).valid
    return system
