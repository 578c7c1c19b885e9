"""Neighborhood-diversity solvers for induced and shortest path variants.

Vertices of the same type (identical neighborhoods up to each other) are
interchangeable on paths, so shortest/induced paths fall into few
equivalence classes described by per-type vertex counts.  Minimizing the
number of paths then becomes a small integer program over those classes,
and a solution is materialized by drawing concrete vertices per type.
Works for undirected graphs (nd types) and digraphs (dnd types).
"""

from dataclasses import dataclass
from enum import Enum

from .checker import Kind, Mode, PathSystem, verify
from .graph import all_pairs_distances, connected_components, induced_subgraph


class ClassKind(Enum):
    CLIQUE = "clique"
    INDEPENDENT = "independent"
    BIDIRECTED_CLIQUE = "bidirected-clique"


class UnsupportedVariant(Exception):
    pass


class ReconstructionFailed(Exception):
    pass


@dataclass
class NdClassification:
    """Type classes, their internal kind, and the all-or-nothing quotient.

    ``adjacency[i][j]`` says whether all edges (arcs, for digraphs) from
    class i to class j are present; the type structure makes this
    all-or-nothing, so one representative pair decides it.
    """

    classes: list
    kinds: list
    adjacency: list
    class_of: list
    directed: bool

    @property
    def width(self):
        return len(self.classes)


def nd_classes(g):
    """Partition an undirected graph into neighborhood-diversity types."""
    if g.directed:
        raise ValueError("nd_classes needs an undirected graph (use dnd_classes)")
    nbr = [set(g.adj[v]) for v in range(g.n)]
    classes = []
    for v in range(g.n):
        for cl in classes:
            u = cl[0]
            if nbr[u] - {v} == nbr[v] - {u}:
                cl.append(v)
                break
        else:
            classes.append([v])
    return _finish_classification(g, classes, directed=False)


def dnd_classes(g):
    """Partition a digraph into directed neighborhood-diversity types.

    u ~ v iff in- and out-neighborhoods agree up to each other and the arcs
    between u and v are mutual or absent.
    """
    if not g.directed:
        raise ValueError("dnd_classes needs a directed graph")
    nin = [set(g.pred[v]) for v in range(g.n)]
    nout = [set(g.adj[v]) for v in range(g.n)]
    classes = []
    for v in range(g.n):
        for cl in classes:
            u = cl[0]
            if (
                nin[u] - {v} == nin[v] - {u}
                and nout[u] - {v} == nout[v] - {u}
                and g.has_edge(u, v) == g.has_edge(v, u)
            ):
                cl.append(v)
                break
        else:
            classes.append([v])
    return _finish_classification(g, classes, directed=True)


def _finish_classification(g, classes, directed):
    classes = [sorted(cl) for cl in classes]
    d = len(classes)
    class_of = [0] * g.n
    for i, cl in enumerate(classes):
        for v in cl:
            class_of[v] = i
    kinds = []
    for cl in classes:
        if len(cl) >= 2 and g.has_edge(cl[0], cl[1]):
            kinds.append(ClassKind.BIDIRECTED_CLIQUE if directed else ClassKind.CLIQUE)
        else:
            kinds.append(ClassKind.INDEPENDENT)
    adjacency = [[False] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            if i != j:
                adjacency[i][j] = g.has_edge(classes[i][0], classes[j][0])
    return NdClassification(classes, kinds, adjacency, class_of, directed)


@dataclass(frozen=True)
class ClassPathVector:
    """A realizable path-equivalence class.

    ``counts[j]`` is how many path vertices come from class j, ``sequence``
    one class visiting order realizing it, ``edge_counts`` how many path
    edges join each class pair (unordered pairs for undirected graphs,
    ordered for digraphs, including within-class pairs).
    """

    counts: tuple
    sequence: tuple
    edge_counts: tuple
    kind: Kind

    @property
    def length(self):
        return len(self.sequence) - 1


def _edge_profile(seq, directed):
    prof = {}
    for a, b in zip(seq, seq[1:]):
        key = (a, b) if directed else (min(a, b), max(a, b))
        prof[key] = prof.get(key, 0) + 1
    return tuple(sorted(prof.items()))


def enumerate_path_classes(g, cls, kind):
    """All realizable shortest/induced path classes as ClassPathVectors.

    Class sequences are walked over the quotient; a sequence may repeat one
    class, and only as both endpoints (two and three vertex paths in the
    undirected case, any length for directed shortest paths).  Shortest-kind
    realizability is decided once per sequence on representative vertices,
    which same-type interchangeability makes legitimate.
    """
    if kind not in (Kind.SHORTEST, Kind.INDUCED):
        raise UnsupportedVariant("path classes exist for induced/shortest kinds only")
    d = cls.width
    dist = all_pairs_distances(g) if kind is Kind.SHORTEST else None
    arc = cls.adjacency
    out = {}

    def rep(i, which=0):
        return cls.classes[i][which]

    def emit(seq):
        counts = [0] * d
        for c in seq:
            counts[c] += 1
        key = (tuple(counts), _edge_profile(seq, cls.directed))
        if key not in out:
            out[key] = ClassPathVector(key[0], tuple(seq), key[1], kind)

    def closable(seq):
        """May ``seq`` be closed by appending its first class as endpoint?"""
        i = seq[0]
        if cls.kinds[i] is not ClassKind.INDEPENDENT or len(cls.classes[i]) < 2:
            return False
        if not arc[seq[-1]][i]:
            return False
        if kind is Kind.INDUCED:
            # Longer closings always chord: the closing vertex shares the
            # first vertex's adjacency to the second class.
            return len(seq) == 2
        return dist[rep(i, 0)][rep(i, 1)] == len(seq)

    for i in range(d):
        emit((i,))
        big_clique = len(cls.classes[i]) >= 2 and cls.kinds[i] in (
            ClassKind.CLIQUE,
            ClassKind.BIDIRECTED_CLIQUE,
        )
        if big_clique:
            emit((i, i))

    seq = []

    def dfs():
        if len(seq) >= 2:
            if kind is Kind.INDUCED:
                emit(seq)
            elif dist[rep(seq[0])][rep(seq[-1])] == len(seq) - 1:
                emit(seq)
            if closable(seq):
                emit(seq + [seq[0]])
        if len(seq) == d:
            return
        for c in range(d):
            if c in seq:
                continue
            if seq:
                if not arc[seq[-1]][c]:
                    continue
                if kind is Kind.INDUCED and any(
                    arc[s][c] or arc[c][s] for s in seq[:-1]
                ):
                    continue
                if kind is Kind.SHORTEST and dist[rep(seq[0])][rep(c)] != len(seq):
                    continue
            seq.append(c)
            dfs()
            seq.pop()

    dfs()
    return sorted(out.values(), key=lambda v: (v.counts, v.edge_counts))


@dataclass
class IlpInstance:
    """minimize sum(z) subject to integer rows ``coeffs . z (op) rhs``."""

    num_vars: int
    rows: list  # (coeffs: tuple, op: '=' | '>=' | '<=', rhs: int)


def _class_edge_budgets(g, cls):
    budgets = {}
    for u, v in g.edges():
        a, b = cls.class_of[u], cls.class_of[v]
        key = (a, b) if cls.directed else (min(a, b), max(a, b))
        budgets[key] = budgets.get(key, 0) + 1
    return budgets


def build_ilp(g, cls, vectors, variant):
    """Covering/partition ILP over path classes, plus edge rows for ED."""
    rows = []
    op = "=" if variant.mode is Mode.PARTITION else ">="
    for j in range(cls.width):
        coeffs = tuple(vec.counts[j] for vec in vectors)
        rows.append((coeffs, op, len(cls.classes[j])))
    if variant.mode is Mode.EDGE_DISJOINT_COVER:
        budgets = _class_edge_budgets(g, cls)
        keys = sorted({key for vec in vectors for key, _ in vec.edge_counts})
        for key in keys:
            coeffs = tuple(dict(vec.edge_counts).get(key, 0) for vec in vectors)
            rows.append((coeffs, "<=", budgets.get(key, 0)))
    return IlpInstance(len(vectors), rows)


def serialize_ilp(ilp):
    """Plain-text dump: objective row, then one constraint per line."""
    lines = ["min " + " ".join(["1"] * ilp.num_vars)]
    for coeffs, op, rhs in ilp.rows:
        lines.append(" ".join(str(c) for c in coeffs) + f" {op} {rhs}")
    return "\n".join(lines) + "\n"


def solve_ilp(ilp, node_limit=10_000_000):
    """Integer optimum by depth-first branch and bound, or None if infeasible.

    Variables are tried in order of decreasing covering power with a greedy
    fractional bound (largest remaining demand over the best remaining
    coefficient); exact at the instance sizes this library produces.
    """
    nv = ilp.num_vars
    eq_rows = [(r[0], r[2]) for r in ilp.rows if r[1] == "="]
    ge_rows = [(r[0], r[2]) for r in ilp.rows if r[1] == ">="]
    le_rows = [(r[0], r[2]) for r in ilp.rows if r[1] == "<="]
    demand_rows = eq_rows + ge_rows
    cover_weight = [
        sum(coeffs[v] for coeffs, _ in demand_rows) for v in range(nv)
    ]
    order = sorted(range(nv), key=lambda v: (-cover_weight[v], v))

    # suffix maxima of each demand row's coefficients along the trial order
    suffmax = []
    for coeffs, _ in demand_rows:
        sm = [0] * (nv + 1)
        for pos in range(nv - 1, -1, -1):
            sm[pos] = max(sm[pos + 1], coeffs[order[pos]])
        suffmax.append(sm)

    eq_rem = [rhs for _, rhs in eq_rows]
    ge_rem = [rhs for _, rhs in ge_rows]
    le_slack = [rhs for _, rhs in le_rows]
    n_eq = len(eq_rows)
    best = [None, None]  # count, assignment
    assign = [0] * nv
    nodes = [0]

    def lower_bound(pos):
        lb = 0
        for ri in range(len(demand_rows)):
            rem = eq_rem[ri] if ri < n_eq else ge_rem[ri - n_eq]
            if rem > 0:
                top = suffmax[ri][pos]
                if top == 0:
                    return None  # demand can no longer be met
                lb = max(lb, -(-rem // top))
        return lb

    def rec(pos, count):
        nodes[0] += 1
        if nodes[0] > node_limit:
            raise RuntimeError("ILP search exceeded node limit")
        if all(r == 0 for r in eq_rem) and all(r <= 0 for r in ge_rem):
            if best[0] is None or count < best[0]:
                best[0] = count
                best[1] = assign.copy()
            return
        if pos == nv:
            return
        lb = lower_bound(pos)
        if lb is None:
            return
        if best[0] is not None and count + lb >= best[0]:
            return
        v = order[pos]
        hard = None  # exact/edge rows cap z outright
        for ri, (coeffs, _) in enumerate(eq_rows):
            if coeffs[v] > 0:
                cap = eq_rem[ri] // coeffs[v]
                hard = cap if hard is None else min(hard, cap)
        for ri, (coeffs, _) in enumerate(le_rows):
            if coeffs[v] > 0:
                cap = le_slack[ri] // coeffs[v]
                hard = cap if hard is None else min(hard, cap)
        useful = 0  # beyond this, every demand the variable touches is met
        for ri in range(len(demand_rows)):
            coeffs = demand_rows[ri][0]
            rem = eq_rem[ri] if ri < n_eq else ge_rem[ri - n_eq]
            if coeffs[v] > 0 and rem > 0:
                useful = max(useful, -(-rem // coeffs[v]))
        zmax = useful if hard is None else min(hard, useful)
        if best[0] is not None:
            zmax = min(zmax, best[0] - count - 1)
        for z in range(zmax, -1, -1):
            if z:
                assign[v] = z
                for ri, (coeffs, _) in enumerate(eq_rows):
                    eq_rem[ri] -= z * coeffs[v]
                for ri, (coeffs, _) in enumerate(ge_rows):
                    ge_rem[ri] -= z * coeffs[v]
                for ri, (coeffs, _) in enumerate(le_rows):
                    le_slack[ri] -= z * coeffs[v]
            rec(pos + 1, count + z)
            if z:
                assign[v] = 0
                for ri, (coeffs, _) in enumerate(eq_rows):
                    eq_rem[ri] += z * coeffs[v]
                for ri, (coeffs, _) in enumerate(ge_rows):
                    ge_rem[ri] += z * coeffs[v]
                for ri, (coeffs, _) in enumerate(le_rows):
                    le_slack[ri] += z * coeffs[v]

    rec(0, 0)
    return best[1]


def _draw_round_robin(cls, pointers, c, exclude):
    members = cls.classes[c]
    size = len(members)
    for off in range(size):
        v = members[(pointers[c] + off) % size]
        if v not in exclude:
            pointers[c] = (pointers[c] + off + 1) % size
            return v
    return None


def reconstruct(g, cls, assignment, vectors, variant):
    """Materialize an ILP assignment into concrete paths.

    PARTITION consumes unused class members; COVER and ED cycle through the
    members round-robin, ED additionally keeping path edges distinct (with a
    full backtracking fallback when the greedy choice cannot; a fallback
    failure is surfaced as ReconstructionFailed, never silently dropped).
    """
    jobs = []  # one class sequence per concrete path
    for idx, z in enumerate(assignment):
        jobs.extend([vectors[idx].sequence] * z)

    if variant.mode is Mode.PARTITION:
        avail = [list(cl) for cl in cls.classes]
        paths = []
        for seq in jobs:
            paths.append([avail[c].pop(0) for c in seq])
        return paths

    if variant.mode is Mode.COVER:
        pointers = [0] * cls.width
        paths = []
        for seq in jobs:
            path = []
            for c in seq:
                v = _draw_round_robin(cls, pointers, c, set(path))
                assert v is not None  # repeats only hit classes of size >= 2
                path.append(v)
            paths.append(path)
        return paths

    # EDGE_DISJOINT_COVER: greedy round-robin with edge bookkeeping.
    def edge_key(u, v):
        return (u, v) if g.directed else (min(u, v), max(u, v))

    pointers = [0] * cls.width
    used_edges = set()
    paths = []
    ok = True
    for seq in jobs:
        path = []
        for c in seq:
            members = cls.classes[c]
            size = len(members)
            pick = None
            for off in range(size):
                v = members[(pointers[c] + off) % size]
                if v in path:
                    continue
                if path and edge_key(path[-1], v) in used_edges:
                    continue
                pick = v
                pointers[c] = (pointers[c] + off + 1) % size
                break
            if pick is None:
                ok = False
                break
            if path:
                used_edges.add(edge_key(path[-1], pick))
            path.append(pick)
        if not ok:
            break
        paths.append(path)
    if ok and _covers_all(g, paths):
        return paths
    return _ed_backtrack(g, cls, jobs, edge_key)


def _covers_all(g, paths):
    covered = set()
    for p in paths:
        covered.update(p)
    return len(covered) == g.n


def _ed_backtrack(g, cls, jobs, edge_key):
    """Exhaustive vertex assignment for ED reconstruction."""
    slots = [(pi, pos, c) for pi, seq in enumerate(jobs) for pos, c in enumerate(seq)]
    paths = [[] for _ in jobs]
    used_edges = set()
    remaining_draws = [0] * cls.width
    for _, _, c in slots:
        remaining_draws[c] += 1
    uncovered = [set(cl) for cl in cls.classes]

    def rec(si):
        if si == len(slots):
            return all(not u for u in uncovered)
        pi, pos, c = slots[si]
        # Coverage is impossible if a class has fewer draws left than
        # uncovered members.
        for j in range(cls.width):
            if remaining_draws[j] < len(uncovered[j]):
                return False
        prev = paths[pi][-1] if pos else None
        remaining_draws[c] -= 1
        for v in cls.classes[c]:
            if v in paths[pi]:
                continue
            key = edge_key(prev, v) if prev is not None else None
            if key is not None and key in used_edges:
                continue
            paths[pi].append(v)
            if key is not None:
                used_edges.add(key)
            was_uncovered = v in uncovered[c]
            if was_uncovered:
                uncovered[c].discard(v)
            if rec(si + 1):
                return True
            if was_uncovered:
                uncovered[c].add(v)
            if key is not None:
                used_edges.discard(key)
            paths[pi].pop()
        remaining_draws[c] += 1
        return False

    if not rec(0):
        raise ReconstructionFailed("no edge-disjoint realization of the ILP solution")
    return paths


def solve_nd(g, variant):
    """Per-component driver: classify, enumerate, solve the ILP, reconstruct."""
    if variant.kind is Kind.UNRESTRICTED:
        raise UnsupportedVariant("unrestricted kind is served by other solvers")
    all_paths = []
    for comp in connected_components(g):
        sub, old = induced_subgraph(g, comp)
        cls = dnd_classes(sub) if g.directed else nd_classes(sub)
        vectors = enumerate_path_classes(sub, cls, variant.kind)
        ilp = build_ilp(sub, cls, vectors, variant)
        assignment = solve_ilp(ilp)
        assert assignment is not None  # singleton classes always feasible
        paths = reconstruct(sub, cls, assignment, vectors, variant)
        all_paths.extend([old[v] for v in seq] for seq in paths)
    for seq in all_paths:
        if not g.directed and seq[::-1] < seq:
            seq.reverse()
    system = PathSystem(sorted(all_paths), variant)
    assert verify(g, system).valid
    return system
