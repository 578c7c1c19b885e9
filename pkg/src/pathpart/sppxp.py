"""XP-style shortest-path-partition solver for undirected graphs and DAGs.

A graph has a partition into k shortest paths iff some terminal pairs
(s_1,t_1)..(s_k,t_k) with sum of d(s_i,t_i) equal to n-k admit vertex-disjoint
shortest connecting paths; the solver enumerates candidate terminal sets and
searches for the disjoint paths by backtracking restricted to each pair's
shortest-path DAG.
"""

from concurrent.futures import ThreadPoolExecutor
from itertools import islice

from .checker import Kind, Mode, PathSystem, Variant, verify
from .graph import all_pairs_distances, connected_components, induced_subgraph, topological_order


class UnsupportedInput(Exception):
    pass


def _pair_pool(g, dist):
    """All candidate (s,t) pairs with finite distance, heaviest first.

    Undirected pairs are normalized s <= t; digraph pairs stay ordered.
    "Weight" of a pair is the vertex count d+1 of a connecting shortest path.
    """
    pairs = []
    for s in range(g.n):
        for t in range(g.n):
            if not g.directed and t < s:
                continue
            d = dist[s][t]
            if d is not None:
                pairs.append((s, t, d + 1))
    pairs.sort(key=lambda p: (-p[2], p[0], p[1]))
    return pairs


def enumerate_terminal_sets(g, dist, k, require_sum_identity=True):
    """Yield every canonical multiset of k pairs whose path sizes sum to n.

    Canonical form: the pair list sorted by (s, t).  With
    ``require_sum_identity=False`` the size-sum filter is dropped and every
    multiset of finite-distance pairs is produced (testing hook).
    """
    pool = _pair_pool(g, dist)
    if not pool:
        return
    target = g.n
    chosen = []

    def rec(idx, slots, total):
        if slots == 0:
            if not require_sum_identity or total == target:
                yield tuple(sorted((s, t) for s, t, _ in chosen))
            return
        min_w = pool[-1][2]
        for i in range(idx, len(pool)):
            w = pool[i][2]
            if require_sum_identity:
                if total + slots * w < target:
                    break  # weights only shrink from here
                if total + w + (slots - 1) * min_w > target:
                    continue
            chosen.append(pool[i])
            yield from rec(i, slots - 1, total + w)
            chosen.pop()

    yield from rec(0, k, 0)


def _shortest_dag_cover_ok(g, dist, terminals):
    """Necessary condition: every vertex lies on some pair's shortest-path DAG."""
    covered = set()
    for s, t in terminals:
        d = dist[s][t]
        for v in range(g.n):
            a, b = dist[s][v], dist[v][t]
            if a is not None and b is not None and a + b == d:
                covered.add(v)
    return len(covered) == g.n


def disjoint_shortest_paths(g, dist, terminals):
    """Vertex-disjoint shortest s_i-t_i paths covering all of V, or None.

    Pairs are processed by decreasing distance (fail fast on the most
    constrained paths); a partial path is only extended to neighbors that
    stay on the pair's shortest-path DAG.
    """
    endpoints = set()
    for s, t in terminals:
        if dist[s][t] is None:
            return None
        for v in {s, t}:
            if v in endpoints:
                return None  # some vertex would lie on two paths
            endpoints.add(v)
    if not _shortest_dag_cover_ok(g, dist, terminals):
        return None

    order = sorted(terminals, key=lambda p: -dist[p[0]][p[1]])
    position = {pair: i for i, pair in enumerate(order)}
    used = [False] * g.n
    paths = [None] * len(order)

    def place(i):
        if i == len(order):
            return all(used)
        s, t = order[i]
        d = dist[s][t]
        seq = [s]
        used[s] = True

        def extend():
            if len(seq) == d + 1:
                if place(i + 1):
                    return True
                return False
            here = len(seq)
            for w in g.adj[seq[-1]]:
                if used[w]:
                    continue
                a, b = dist[s][w], dist[w][t]
                if a == here and b is not None and a + b == d:
                    seq.append(w)
                    used[w] = True
                    if extend():
                        return True
                    used[w] = False
                    seq.pop()
            return False

        paths[i] = seq
        ok = extend()
        if not ok:
            used[s] = False
        return ok

    if not place(0):
        return None
    # Report paths in the order the terminals were given.
    out = [list(paths[position[pair]]) for pair in terminals]
    assert sum(len(p) for p in out) == g.n
    return out


def _filtered_sets(g, dist, k, require_sum_identity):
    """Terminal-set stream with sound pre-filters fused in.

    In digraphs every in-degree-0 vertex must start a path and every
    out-degree-0 vertex must end one, since the sum identity forces every
    vertex onto a path.
    """
    sources = sinks = None
    if g.directed:
        sources = {v for v in range(g.n) if not g.pred[v]}
        sinks = {v for v in range(g.n) if not g.adj[v]}
    for terms in enumerate_terminal_sets(g, dist, k, require_sum_identity):
        if g.directed and require_sum_identity:
            starts = {s for s, _ in terms}
            ends = {t for _, t in terms}
            if not (sources <= starts and sinks <= ends):
                continue
        yield terms


def _component_optimum(g, dist, cap, require_sum_identity, threads):
    """Smallest k' <= cap with a shortest-path partition, with certificate."""
    for kp in range(1, cap + 1):
        stream = _filtered_sets(g, dist, kp, require_sum_identity)
        if threads <= 1:
            for terms in stream:
                res = disjoint_shortest_paths(g, dist, terms)
                if res is not None:
                    return res
        else:
            chunk_size = 64 * threads
            with ThreadPoolExecutor(max_workers=threads) as pool:
                while True:
                    chunk = list(islice(stream, chunk_size))
                    if not chunk:
                        break
                    results = list(
                        pool.map(lambda t: disjoint_shortest_paths(g, dist, t), chunk)
                    )
                    for res in results:  # first hit in stream order wins
                        if res is not None:
                            return res
    return None


def solve_spp_xp(g, k, require_sum_identity=True, threads=1):
    """A SHORTEST/PARTITION system with at most k paths, or None.

    Supports undirected graphs and DAGs; general digraphs are rejected.
    """
    if g.directed and topological_order(g) is None:
        raise UnsupportedInput("general digraphs are not supported")
    if k < 1:
        return None
    comps = connected_components(g)
    all_paths = []
    used = 0
    for idx, comp in enumerate(comps):
        remaining = len(comps) - idx - 1
        cap = k - used - remaining
        if cap < 1:
            return None
        sub, old = induced_subgraph(g, comp)
        dist = all_pairs_distances(sub)
        found = _component_optimum(sub, dist, cap, require_sum_identity, threads)
        if found is None:
            return None
        used += len(found)
        all_paths.extend([old[v] for v in seq] for seq in found)
    for seq in all_paths:
        if not g.directed and seq[::-1] < seq:
            seq.reverse()
    system = PathSystem(sorted(all_paths), Variant(Kind.SHORTEST, Mode.PARTITION))
    assert verify(g, system).valid
    return system
