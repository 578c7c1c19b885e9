"""Vertex-cover parameterized machinery for unrestricted path partition.

The main solver guesses, for a minimum vertex cover C, the order pi in which
one path after another walks through C and a bitvector saying where that
order is cut into separate paths; a maximum-weight matching then integrates
as many independent-set vertices as possible.  Also hosts the kernel rule
(types of the independent set larger than 2*vc force singleton paths) and
the dual-parameterization driver for all three kinds.
"""

from dataclasses import dataclass
from itertools import permutations, product

from .checker import Kind, Mode, PathSystem, Variant, verify
from .graph import connected_components, induced_subgraph, underlying_undirected
from .matching import BipartiteGraph, greedy_maximal_matching, max_weight_matching, matching_weight
from .ndsolver import UnsupportedVariant, solve_nd


class MalformedMatching(Exception):
    """The guessed bitvector cannot be realized by the matching."""


def min_vertex_cover(g):
    """Minimum vertex cover by branching on a maximum-degree vertex.

    Either the vertex or its whole neighborhood is in the cover; components
    of maximum degree <= 2 (paths and cycles) are covered directly.
    """
    if g.directed:
        raise ValueError("min_vertex_cover needs an undirected graph")
    best = [sorted(v for v in range(g.n) if g.adj[v])]

    def cover_deg2(adj):
        chosen = []
        seen = set()
        for s in adj:
            if s in seen or not adj[s]:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            ends = [v for v in comp if len(adj[v]) == 1]
            if ends:  # path component: every second vertex from an end
                walk = [min(ends)]
                prev = None
                while True:
                    nxt = [w for w in adj[walk[-1]] if w != prev]
                    if not nxt:
                        break
                    prev = walk[-1]
                    walk.append(nxt[0])
                chosen.extend(walk[1::2])
            else:  # cycle component
                walk = [min(comp)]
                prev = None
                while len(walk) < len(comp):
                    nxt = [w for w in adj[walk[-1]] if w != prev]
                    prev = walk[-1]
                    walk.append(nxt[0])
                chosen.extend(walk[1::2])
                if len(comp) % 2 == 1:
                    chosen.append(walk[0])
        return chosen

    def solve(adj, chosen):
        if len(chosen) >= len(best[0]):
            return
        alive = [v for v in adj if adj[v]]
        if not alive:
            if len(chosen) < len(best[0]):
                best[0] = sorted(chosen)
            return
        v = max(alive, key=lambda u: (len(adj[u]), -u))
        if len(adj[v]) <= 2:
            full = chosen + cover_deg2(adj)
            if len(full) < len(best[0]):
                best[0] = sorted(full)
            return

        def without(drop):
            nxt = {u: s - drop for u, s in adj.items() if u not in drop}
            return nxt

        solve(without({v}), chosen + [v])
        nbrs = set(adj[v])
        solve(without(nbrs), chosen + sorted(nbrs))

    solve({v: set(g.adj[v]) for v in range(g.n)}, [])
    return best[0]


@dataclass
class KernelResult:
    graph: object
    removed: int        # forced singleton paths
    kept_ids: list      # new id -> old id
    removed_ids: list


def kernelize_vc(g, kind):
    """Shrink independent-set types to at most 2*vc members each.

    Any type with more members forces single-vertex paths in some optimum
    (each cover vertex can host at most two path neighbors), so
    optimum(original) = optimum(reduced) + removed.  The rule is identical
    for all three path kinds.
    """
    del kind  # the rule does not depend on the path kind
    cover = set(min_vertex_cover(g))
    limit = 2 * len(cover)
    groups = {}
    for v in range(g.n):
        if v not in cover:
            groups.setdefault(frozenset(g.adj[v]), []).append(v)
    removed = []
    for members in groups.values():
        removed.extend(sorted(members)[limit:])
    kept = sorted(set(range(g.n)) - set(removed))
    sub, old = induced_subgraph(g, kept)
    return KernelResult(sub, len(removed), old, sorted(removed))


@dataclass
class AuxMatchGraph:
    """The weighted bipartite graph one (pi, bits) guess is scored with.

    Left side: cover vertices, plus a primed copy wherever a path may begin
    (ahead of pi[0] and after every 0-bit).  Right side: the independent
    set, plus a placeholder per 1-bit whose cover pair is joined by a real
    edge (matching the placeholder connects the two cover vertices
    directly).  Every edge carries a provenance rule tag.
    """

    bg: BipartiteGraph
    left_labels: list   # ("v", vertex) | ("v'", vertex)
    right_labels: list  # ("w", vertex) | ("u", 1-based position)
    rules: dict         # (left, right) -> "insert"|"join"|"end"|"start"
    pi: tuple
    bits: tuple
    indep: list

    def left_index(self, label):
        return self.left_labels.index(label)

    def right_index(self, label):
        return self.right_labels.index(label)

    def edge_set(self):
        """{(left label, right label): weight} for structural comparisons."""
        return {
            (self.left_labels[l], self.right_labels[r]): w
            for l, r, w in self.bg.edges
        }


def build_aux_graph(g, cover, pi, bits):
    """Build the auxiliary graph for one permutation/bitvector guess."""
    cover = sorted(cover)
    cover_set = set(cover)
    r = len(cover)
    if sorted(pi) != cover or len(bits) != max(r - 1, 0):
        raise ValueError("pi must permute the cover; bits needs length |C|-1")
    for u, v in g.edges():
        if u not in cover_set and v not in cover_set:
            raise ValueError("cover argument is not a vertex cover")
    indep = sorted(set(range(g.n)) - set(cover))
    in_i = set(indep)

    left_labels = [("v", v) for v in pi]
    left_labels.append(("v'", pi[0]))
    for i in range(r - 1):
        if bits[i] == 0:
            left_labels.append(("v'", pi[i + 1]))
    right_labels = [("w", w) for w in indep]
    for i in range(r - 1):
        if bits[i] == 1 and g.has_edge(pi[i], pi[i + 1]):
            right_labels.append(("u", i + 1))
    lidx = {lab: i for i, lab in enumerate(left_labels)}
    ridx = {lab: i for i, lab in enumerate(right_labels)}

    edges = []
    rules = {}

    def add(llab, rlab, w, rule):
        edges.append((lidx[llab], ridx[rlab], w))
        rules[(lidx[llab], ridx[rlab])] = rule

    for i in range(r - 1):
        a, b = pi[i], pi[i + 1]
        if bits[i] == 1:
            for x in g.adj[a]:
                if x in in_i and g.has_edge(b, x):
                    add(("v", a), ("w", x), 2, "insert")
            if g.has_edge(a, b):
                add(("v", a), ("u", i + 1), 1, "join")
        else:
            for x in g.adj[a]:
                if x in in_i:
                    add(("v", a), ("w", x), 1, "end")
            for x in g.adj[b]:
                if x in in_i:
                    add(("v'", b), ("w", x), 1, "start")
    for x in g.adj[pi[r - 1]]:
        if x in in_i:
            add(("v", pi[r - 1]), ("w", x), 1, "end")
    for x in g.adj[pi[0]]:
        if x in in_i:
            add(("v'", pi[0]), ("w", x), 1, "start")

    bg = BipartiteGraph(len(left_labels), len(right_labels), edges)
    return AuxMatchGraph(bg, left_labels, right_labels, rules, tuple(pi), tuple(bits), indep)


def passes_skip_tests(g, aux, matching):
    """Reject guesses whose matching proves a strictly better bitvector exists.

    If the path guessed to start at pi[i+1] begins with an x adjacent to
    pi[i] (or the first path begins with an x adjacent to pi[r-1]), the two
    paths could be joined, and the joined guess is met elsewhere in the loop.
    The wrap-around test needs the first and last cover paths to be distinct
    blocks; with an all-ones bitvector the "join" would close a cycle and no
    better guess exists, so it must not fire.
    """
    match_of_left = {l: r for l, r in matching}
    pi, bits = aux.pi, aux.bits
    r = len(pi)
    for i in range(r - 1):
        if bits[i] == 0:
            m = match_of_left.get(aux.left_index(("v'", pi[i + 1])))
            if m is not None:
                x = aux.right_labels[m][1]
                if g.has_edge(pi[i], x):
                    return False
    if 0 in bits:
        m = match_of_left.get(aux.left_index(("v'", pi[0])))
        if m is not None:
            x = aux.right_labels[m][1]
            if g.has_edge(pi[r - 1], x):
                return False
    return True


def reconstruct_pp_from_matching(g, aux, matching):
    """The deterministic walk turning an aux matching into a path partition.

    A matched primed vertex prepends a start vertex, a weight-2 match puts
    the independent vertex between consecutive cover vertices, a matched
    placeholder joins them directly, a matched end edge appends a terminal
    vertex, and unmatched independent vertices become singletons.
    """
    match_of_left = {l: r for l, r in matching}
    matched_right = {r for _, r in matching}
    pi, bits = aux.pi, aux.bits
    r = len(pi)
    paths = []
    seq = None
    for pos in range(r):
        if pos == 0 or bits[pos - 1] == 0:  # a new path begins here
            if seq is not None:
                paths.append(seq)
            seq = []
            m = match_of_left.get(aux.left_index(("v'", pi[pos])))
            if m is not None:
                seq.append(aux.right_labels[m][1])
        seq.append(pi[pos])
        m = match_of_left.get(aux.left_index(("v", pi[pos])))
        if pos < r - 1 and bits[pos] == 1:
            if m is None:
                raise MalformedMatching(f"bit {pos + 1} set but {pi[pos]} unmatched")
            kind, val = aux.right_labels[m]
            if kind == "w":
                seq.append(val)  # weight-2 edge: x sits between the pair
            # placeholder: the cover pair is joined directly
        elif m is not None:
            kind, val = aux.right_labels[m]
            if kind == "w":
                seq.append(val)  # path ends on an independent vertex
    if seq is not None:
        paths.append(seq)
    for j, lab in enumerate(aux.right_labels):
        if lab[0] == "w" and j not in matched_right:
            paths.append([lab[1]])
    return paths


def _connectable(g, indep_set):
    """Cover pairs that may sit consecutively on one path."""

    def check(a, b):
        if g.has_edge(a, b):
            return True
        return any(x in indep_set and g.has_edge(b, x) for x in g.adj[a])

    return check


def _candidate(g, pi, bits):
    """Evaluate one (pi, bits) guess; None when skipped or malformed."""
    aux = build_aux_graph(g, sorted(pi), pi, bits)
    matching = max_weight_matching(aux.bg)
    if not passes_skip_tests(g, aux, matching):
        return None
    try:
        paths = reconstruct_pp_from_matching(g, aux, matching)
    except MalformedMatching:
        return None
    weight = matching_weight(aux.bg, matching)
    assert len(paths) == g.n - weight  # candidate-size law
    return paths, weight


def _chunk_best(g, chunk, r, n_i, connectable, init_len):
    """Earliest smallest candidate over a chunk of (rank, pi) pairs.

    Returns (size, (pi rank, bits value), paths) with paths None when the
    chunk never beats ``init_len``.  The pruning bound never skips a strict
    improvement, so chunked and sequential runs pick the same winner.
    """
    best = (init_len, None, None)
    for pi_rank, pi in chunk:
        free = [i for i in range(r - 1) if connectable(pi[i], pi[i + 1])]
        for assignment in product((0, 1), repeat=len(free)):
            bits = [0] * (r - 1)
            for pos, b in zip(free, assignment):
                bits[pos] = b
            zeros = bits.count(0)
            # Each guess yields zeros+1 paths through the cover and can
            # integrate at most r + zeros + 1 independent vertices.
            bound = (zeros + 1) + max(0, n_i - (r + zeros + 1))
            if bound >= best[0]:
                continue
            got = _candidate(g, pi, tuple(bits))
            if got is not None and len(got[0]) < best[0]:
                value = 0
                for b in bits:
                    value = value * 2 + b
                best = (len(got[0]), (pi_rank, value), got[0])
    return best


def _component_upp(g, threads=1):
    """Best partition of one connected component (full pi/bits loop)."""
    cover = min_vertex_cover(g)
    r = len(cover)
    singletons = [[v] for v in range(g.n)]
    if r == 0:
        return singletons
    indep = sorted(set(range(g.n)) - set(cover))
    n_i = len(indep)
    connectable = _connectable(g, set(indep))
    ranked = list(enumerate(permutations(cover)))
    if threads <= 1:
        best = _chunk_best(g, ranked, r, n_i, connectable, g.n)
    else:
        from concurrent.futures import ThreadPoolExecutor

        step = -(-len(ranked) // threads)
        chunks = [ranked[i : i + step] for i in range(0, len(ranked), step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(
                    lambda ch: _chunk_best(g, ch, r, n_i, connectable, g.n), chunks
                )
            )
        best = min(results, key=lambda t: (t[0], t[1] if t[1] is not None else ()))
    return best[2] if best[2] is not None else singletons


def iter_candidates(g):
    """Yield every surviving (pi, bits) candidate; diagnostic surface.

    Items are (component size, paths, matching weight); guesses whose
    1-bits are unrealizable are omitted (their matching is always
    malformed).
    """
    for comp in connected_components(g):
        sub, old = induced_subgraph(g, comp)
        cover = min_vertex_cover(sub)
        r = len(cover)
        if r == 0:
            continue
        indep = sorted(set(range(sub.n)) - set(cover))
        connectable = _connectable(sub, set(indep))
        for pi in permutations(cover):
            free = [i for i in range(r - 1) if connectable(pi[i], pi[i + 1])]
            for assignment in product((0, 1), repeat=len(free)):
                bits = [0] * (r - 1)
                for pos, b in zip(free, assignment):
                    bits[pos] = b
                got = _candidate(sub, pi, tuple(bits))
                if got is not None:
                    yield sub.n, got[0], got[1]


def solve_upp_vc(g, threads=1):
    """Minimum UNRESTRICTED/PARTITION system, per connected component.

    ``threads`` splits the permutation loop across workers; the winner is
    reduced deterministically, so results are identical for any N.
    """
    if g.directed:
        raise ValueError("solve_upp_vc needs an undirected graph")
    all_paths = []
    for comp in connected_components(g):
        sub, old = induced_subgraph(g, comp)
        found = _component_upp(sub, threads=threads)
        all_paths.extend([old[v] for v in seq] for seq in found)
    for seq in all_paths:
        if seq[::-1] < seq:
            seq.reverse()
    system = PathSystem(sorted(all_paths), Variant(Kind.UNRESTRICTED, Mode.PARTITION))
    assert verify(g, system).valid
    return system


def solve_dual(g, k_dual, variant):
    """Decide a partition into at most n - k_dual paths, with certificate.

    A maximal matching with k_dual edges settles it immediately (edge paths
    plus singletons); otherwise the vertex cover number is below 2*k_dual
    and the exact cover/diversity solvers finish the bounded instance.
    Directed unrestricted inputs are rejected (open problem).
    """
    if variant.mode is not Mode.PARTITION:
        raise UnsupportedVariant("dual parameterization is defined for partitions")
    if g.directed and variant.kind is Kind.UNRESTRICTED:
        raise UnsupportedVariant("directed unrestricted dual is open")
    if k_dual < 0 or k_dual > g.n:
        raise ValueError("need 0 <= k_dual <= n")
    budget = g.n - k_dual

    base = underlying_undirected(g) if g.directed else g
    matching = greedy_maximal_matching(base)
    if len(matching) >= k_dual:
        used = set()
        paths = []
        for u, v in matching[:k_dual]:
            if g.directed and not g.has_edge(u, v):
                u, v = v, u
            paths.append([u, v])
            used.update((u, v))
        paths.extend([v] for v in range(g.n) if v not in used)
        assert len(paths) == budget
        system = PathSystem(sorted(paths), Variant(variant.kind, Mode.PARTITION))
        assert verify(g, system).valid
        return system

    if variant.kind is Kind.UNRESTRICTED:
        system = solve_upp_vc(g)
    elif not g.directed:
        kernel = kernelize_vc(g, variant.kind)
        reduced = solve_nd(kernel.graph, variant)
        paths = [[kernel.kept_ids[v] for v in seq] for seq in reduced.paths]
        paths.extend([v] for v in kernel.removed_ids)
        system = PathSystem(sorted(paths), variant)
        assert verify(g, system).valid
    else:
        system = solve_nd(g, variant)
    return system if len(system.paths) <= budget else None
