"""Exhaustive exact solver for all nine variants on small instances.

Ground truth for every other solver and for the reduction equivalence checks.
Deliberately exponential: it enumerates every kind-valid path of the graph
up front (as vertex bitmasks) and then runs a branch-and-bound cover search
over that pool.
"""

from dataclasses import dataclass

from .checker import Kind, Mode, PathSystem, verify
from .graph import all_pairs_distances, connected_components, induced_subgraph


@dataclass
class OracleBudget:
    """Caps on instance size and search effort.

    ``node_limit`` counts both pool-enumeration steps and search nodes.
    """

    max_vertices: int
    node_limit: int = 5_000_000

    @staticmethod
    def default_for(mode):
        return OracleBudget(max_vertices=14 if mode is Mode.PARTITION else 10)


class BudgetExceeded(Exception):
    pass


def _extension_ok(g, kind, dist, seq, w, seen):
    """May ``seq`` (kind-valid) be extended by appending ``w``?"""
    if w in seen:
        return False
    if kind is Kind.SHORTEST:
        return dist[seq[0]][w] == len(seq)
    if kind is Kind.INDUCED:
        for u in seq[:-1]:
            if g.has_edge(u, w) or (g.directed and g.has_edge(w, u)):
                return False
    return True


def enumerate_valid_paths(g, kind, start, dist=None):
    """All kind-valid paths beginning at ``start``, by pruned DFS extension.

    Prefix pruning is sound because every prefix of a shortest (induced,
    unrestricted) path is itself shortest (induced, unrestricted).
    """
    if kind is Kind.SHORTEST and dist is None:
        dist = all_pairs_distances(g)
    out = []
    seq = [start]
    seen = {start}

    def extend():
        out.append(list(seq))
        for w in g.adj[seq[-1]]:
            if _extension_ok(g, kind, dist, seq, w, seen):
                seq.append(w)
                seen.add(w)
                extend()
                seq.pop()
                seen.remove(w)

    extend()
    return out


def _prependable(g, kind, dist, seq):
    """Vertices w such that [w] + seq stays kind-valid."""
    first = seq[0]
    seen = set(seq)
    nbrs = g.pred[first] if g.directed else g.adj[first]
    out = []
    for w in nbrs:
        if w in seen:
            continue
        if kind is Kind.SHORTEST and dist[w][seq[-1]] != len(seq):
            continue
        if kind is Kind.INDUCED:
            bad = False
            for u in seq[1:]:
                if g.has_edge(u, w) or (g.directed and g.has_edge(w, u)):
                    bad = True
                    break
            if bad:
                continue
        out.append(w)
    return out


def _appendable(g, kind, dist, seq):
    seen = set(seq)
    return [w for w in g.adj[seq[-1]] if _extension_ok(g, kind, dist, seq, w, seen)]


class _Pool:
    """Every kind-valid path of g as (vertex mask, sequence, edge mask)."""

    def __init__(self, g, kind, dist, counter, node_limit):
        edge_index = {e: i for i, e in enumerate(g.edges())}

        def emask(seq):
            bits = 0
            for u, v in zip(seq, seq[1:]):
                key = (u, v) if g.directed else (min(u, v), max(u, v))
                bits |= 1 << edge_index[key]
            return bits

        paths = []
        for s in range(g.n):
            for seq in enumerate_valid_paths(g, kind, s, dist):
                counter[0] += 1
                if counter[0] > node_limit:
                    raise BudgetExceeded("path pool exceeds node limit")
                if not g.directed and len(seq) > 1 and seq[0] > seq[-1]:
                    continue  # each undirected path once
                paths.append(tuple(seq))
        # Longer paths first so good incumbents appear early; ties broken
        # lexicographically for reproducible output.
        paths.sort(key=lambda p: (-len(p), p))
        self.seqs = paths
        self.masks = []
        self.emasks = []
        for seq in paths:
            mask = 0
            for v in seq:
                mask |= 1 << v
            self.masks.append(mask)
            self.emasks.append(emask(seq))
        self.longest = max((len(p) for p in paths), default=1)
        self.maximal = []
        for seq in paths:
            self.maximal.append(
                not _appendable(g, kind, dist, list(seq))
                and not _prependable(g, kind, dist, list(seq))
            )
        self.by_vertex = [[] for _ in range(g.n)]
        self.maximal_by_vertex = [[] for _ in range(g.n)]
        for i, mask in enumerate(self.masks):
            for v in range(g.n):
                if mask >> v & 1:
                    self.by_vertex[v].append(i)
                    if self.maximal[i]:
                        self.maximal_by_vertex[v].append(i)


def _lowest_bit_index(mask):
    return (mask & -mask).bit_length() - 1


def _search(g, variant, pool, cap, counter, node_limit):
    """Best system of at most ``cap`` paths, or None.  Exact within the cap."""
    full = (1 << g.n) - 1
    longest = pool.longest
    best_count = cap + 1
    best_sys = None
    acc = []

    def bound(uncovered_count, used):
        return used + -(-uncovered_count // longest)

    if variant.mode is Mode.PARTITION:

        def rec(uncovered, count):
            nonlocal best_count, best_sys
            counter[0] += 1
            if counter[0] > node_limit:
                raise BudgetExceeded("search exceeds node limit")
            if uncovered == 0:
                if count < best_count:
                    best_count = count
                    best_sys = acc.copy()
                return
            if bound(bin(uncovered).count("1"), count) >= best_count:
                return
            v = _lowest_bit_index(uncovered)
            for pi in pool.by_vertex[v]:
                mask = pool.masks[pi]
                if mask & uncovered == mask:
                    acc.append(pi)
                    rec(uncovered & ~mask, count + 1)
                    acc.pop()

        rec(full, 0)

    elif variant.mode is Mode.COVER:
        # Any cover can be turned into one using only maximal paths, so the
        # search may branch over maximal paths through the lowest uncovered
        # vertex without losing optimality.

        def rec(uncovered, count):
            nonlocal best_count, best_sys
            counter[0] += 1
            if counter[0] > node_limit:
                raise BudgetExceeded("search exceeds node limit")
            if uncovered == 0:
                if count < best_count:
                    best_count = count
                    best_sys = acc.copy()
                return
            if bound(bin(uncovered).count("1"), count) >= best_count:
                return
            v = _lowest_bit_index(uncovered)
            for pi in pool.maximal_by_vertex[v]:
                acc.append(pi)
                rec(uncovered & ~pool.masks[pi], count + 1)
                acc.pop()

        rec(full, 0)

    else:  # EDGE_DISJOINT_COVER

        def rec(uncovered, used_edges, count):
            nonlocal best_count, best_sys
            counter[0] += 1
            if counter[0] > node_limit:
                raise BudgetExceeded("search exceeds node limit")
            if uncovered == 0:
                if count < best_count:
                    best_count = count
                    best_sys = acc.copy()
                return
            if bound(bin(uncovered).count("1"), count) >= best_count:
                return
            v = _lowest_bit_index(uncovered)
            for pi in pool.by_vertex[v]:
                em = pool.emasks[pi]
                if em & used_edges:
                    continue
                acc.append(pi)
                rec(uncovered & ~pool.masks[pi], used_edges | em, count + 1)
                acc.pop()

        rec(full, 0, 0)

    if best_sys is None:
        return None
    return [list(pool.seqs[pi]) for pi in best_sys]


def _canonical(g, paths):
    out = []
    for seq in paths:
        if not g.directed and seq[::-1] < seq:
            seq = seq[::-1]
        out.append(seq)
    out.sort()
    return out


def _solve_capped(g, variant, budget, cap):
    """Optimum over the whole graph if it is at most ``cap``, else None."""
    counter = [0]
    comps = connected_components(g)
    total_paths = []
    used = 0
    for idx, comp in enumerate(comps):
        sub, old = induced_subgraph(g, comp)
        remaining = len(comps) - idx - 1
        comp_cap = cap - used - remaining
        if comp_cap < 1:
            return None
        dist = all_pairs_distances(sub)
        pool = _Pool(sub, variant.kind, dist, counter, budget.node_limit)
        found = _search(sub, variant, pool, comp_cap, counter, budget.node_limit)
        if found is None:
            return None
        used += len(found)
        total_paths.extend([old[v] for v in seq] for seq in found)
    return _canonical(g, total_paths)


def solve_exact(g, variant, budget=None):
    """Minimum-size valid PathSystem, by branch and bound over the path pool."""
    if budget is None:
        budget = OracleBudget.default_for(variant.mode)
    if g.n > budget.max_vertices:
        raise BudgetExceeded(f"{g.n} vertices exceeds budget {budget.max_vertices}")
    paths = _solve_capped(g, variant, budget, g.n)
    assert paths is not None  # singleton paths are always a valid system
    system = PathSystem(paths, variant)
    assert verify(g, system).valid
    return system


def decide(g, variant, k, budget=None):
    """YES: a valid system with at most k paths (None means NO)."""
    if budget is None:
        budget = OracleBudget.default_for(variant.mode)
    if g.n > budget.max_vertices:
        raise BudgetExceeded(f"{g.n} vertices exceeds budget {budget.max_vertices}")
    if k < 1:
        return None
    paths = _solve_capped(g, variant, budget, k)
    if paths is None:
        return None
    system = PathSystem(paths, variant)
    assert verify(g, system).valid
    return system
