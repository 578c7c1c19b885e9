"""Executable NP-hardness reductions with structural verifiers.

Three generators: exact-cover instances to DAG shortest/induced path
partition, clique to DAG shortest path partition (the parameterized one),
and induced-P4 partition to shortest path partition on bipartite graphs.
Each emits labelled vertices so gadget soup stays auditable, and
``verify_reduction`` turns the constructions' structural guarantees into
executable checks.
"""

from dataclasses import dataclass, field

from .checker import Kind, Mode, Variant
from .graph import (
    Graph,
    bipartition,
    degeneracy,
    diameter,
    topological_order,
    underlying_undirected,
)


class MalformedInstance(Exception):
    pass


class BadK(Exception):
    pass


class NotBipartite(Exception):
    pass


class BadOrder(Exception):
    pass


@dataclass
class ThreeDmInstance:
    """Three side sets of size p (indices 0..p-1 each) and distinct triples.

    ``triples`` holds (x, y, z) per-side indices; every element may occur in
    at most three triples.
    """

    p: int
    triples: list

    def __post_init__(self):
        if self.p < 1 or not self.triples:
            raise MalformedInstance("need p >= 1 and at least one triple")
        seen = set()
        occur = {}
        for t in self.triples:
            if len(t) != 3 or any(not 0 <= e < self.p for e in t):
                raise MalformedInstance(f"triple {t} out of range")
            if tuple(t) in seen:
                raise MalformedInstance(f"duplicate triple {t}")
            seen.add(tuple(t))
            for side, e in enumerate(t):
                occur[(side, e)] = occur.get((side, e), 0) + 1
                if occur[(side, e)] > 3:
                    raise MalformedInstance("element occurs in more than 3 triples")

    @property
    def q(self):
        return len(self.triples)


@dataclass
class ReductionOutput:
    graph: Graph
    k_target: int
    variant: Variant
    vertex_labels: dict
    family: str
    meta: dict = field(default_factory=dict)

    def by_label(self, label):
        for v, lab in self.vertex_labels.items():
            if lab == label:
                return v
        raise KeyError(label)


# 3-dimensional matching -> DAG shortest/induced path partition -------------

CW = "cw"
CCW = "ccw"

# Arcs inside one 9-vertex triple gadget, by local wire/level name.
_GADGET_ARCS = [
    ("l11", "l12"), ("l12", "l13"), ("l13", "l23"), ("l11", "l23"),
    ("l21", "l22"), ("l22", "l23"), ("l21", "l33"), ("l23", "l33"),
    ("l31", "l32"), ("l32", "l33"),
]


def gen_3dm_to_dagspp(inst, order_flags=None, kind=Kind.SHORTEST):
    """DAG on 3p + 9q vertices solvable with p + 3q paths iff inst is.

    Each triple becomes a nine-vertex gadget partitionable into three paths
    avoiding the elements, or four paths that also swallow its x, y, z.  The
    per-triple flag picks which middle vertex feeds which element (both
    orientations are sound; the flag exists for planarity-respecting
    callers).
    """
    if kind not in (Kind.SHORTEST, Kind.INDUCED):
        raise ValueError("kind must be shortest or induced")
    p, q = inst.p, inst.q
    if order_flags is None:
        order_flags = [CW] * q
    if len(order_flags) != q or any(f not in (CW, CCW) for f in order_flags):
        raise MalformedInstance("need one cw/ccw flag per triple")

    labels = {}
    ids = {}
    nxt = 0

    def new(name):
        nonlocal nxt
        ids[name] = nxt
        labels[nxt] = name
        nxt += 1
        return ids[name]

    for i in range(q):
        for jk in ("l11", "l12", "l13", "l21", "l22", "l23", "l31", "l32", "l33"):
            new(f"{jk}^{i}")
    for side, count in (("x", p), ("y", p), ("z", p)):
        for e in range(p):
            new(f"{side}_{e}")

    arcs = []
    for i, (x, y, z) in enumerate(inst.triples):
        for a, b in _GADGET_ARCS:
            arcs.append((ids[f"{a}^{i}"], ids[f"{b}^{i}"]))
        xe, ye, ze = ids[f"x_{x}"], ids[f"y_{y}"], ids[f"z_{z}"]
        if order_flags[i] == CW:
            feeds = [(f"l12^{i}", xe), (f"l22^{i}", ze), (f"l32^{i}", ye)]
        else:
            feeds = [(f"l12^{i}", xe), (f"l22^{i}", ye), (f"l32^{i}", ze)]
        arcs.extend((ids[a], b) for a, b in feeds)

    g = Graph(nxt, arcs, directed=True)
    return ReductionOutput(
        graph=g,
        k_target=p + 3 * q,
        variant=Variant(kind, Mode.PARTITION),
        vertex_labels=labels,
        family="3dm",
        meta={"p": p, "q": q},
    )


def threedm_solution_paths(out, chosen):
    """The intended partition for a set of triple indices covering all elements."""
    ids = {lab: v for v, lab in out.vertex_labels.items()}
    chosen = set(chosen)
    paths = []
    for i in range(out.meta["q"]):
        if i in chosen:
            for wire in ("l1", "l2", "l3"):
                head, mid = ids[f"{wire}1^{i}"], ids[f"{wire}2^{i}"]
                feed = next(
                    w
                    for w in out.graph.adj[mid]
                    if not out.vertex_labels[w].startswith("l")
                )
                paths.append([head, mid, feed])
            paths.append([ids[f"l13^{i}"], ids[f"l23^{i}"], ids[f"l33^{i}"]])
        else:
            for wire in ("l1", "l2", "l3"):
                paths.append([ids[f"{wire}1^{i}"], ids[f"{wire}2^{i}"], ids[f"{wire}3^{i}"]])
    return paths


# Clique -> DAG shortest path partition (parameterized) ----------------------


def gen_clique_to_dagspp(g, k):
    """k x n gadget array whose DAG has a k(k-1)/2 + 3k shortest path
    partition iff g has a k-clique.

    Rows select one gadget (vertex) each via a path that skips it; column
    pairs are certified by paths routed through the skipped gadgets, which
    cross rows only along arcs that encode edges of g.
    """
    if g.directed:
        raise ValueError("clique reduction expects an undirected base graph")
    if k < 2 or k > g.n:
        raise BadK(f"need 2 <= k <= {g.n}")
    n = g.n
    rows = range(1, k + 1)
    labels = {}
    ids = {}
    nxt = 0

    def new(name):
        nonlocal nxt
        ids[name] = nxt
        labels[nxt] = name
        nxt += 1
        return ids[name]

    def wires(i):
        return [r for r in range(1, k + 1) if r != i]

    # Gadget levels as vertex-name lists, per row, per column 0..n+1.
    top = {}
    bot = {}
    for i in rows:
        new(f"s_{i}")
        new(f"s'_{i}")
        for j in range(i + 1, k + 1):
            new(f"s_{i},{j}")
            new(f"s'_{i},{j}")
        top[(i, 0)] = [new(f"a_1^{i},0"), new(f"a_2^{i},0")]
        bot[(i, 0)] = [new(f"b_1^{i},0"), new(f"b_2^{i},0")]
        for u in range(1, n + 1):
            top[(i, u)] = [new(f"a_{r}^{i},{u}") for r in wires(i)]
            bot[(i, u)] = [new(f"b_{r}^{i},{u}") for r in wires(i)]
        top[(i, n + 1)] = [new(f"a_{j}^{i},{n + 1}") for j in range(1, k + 3)]
        bot[(i, n + 1)] = [new(f"b_1^{i},{n + 1}"), new(f"b_2^{i},{n + 1}")]
        for j in range(1, i):
            new(f"t'_{j},{i}")
            new(f"t_{j},{i}")
        new(f"t'_{i}")
        new(f"t_{i}")

    arcs = set()

    def arc(a, b):
        arcs.add((a, b))

    pairs = [(i, j) for i in rows for j in rows if i < j]
    for i in rows:
        arc(ids[f"s_{i}"], ids[f"s'_{i}"])
        arc(ids[f"t'_{i}"], ids[f"t_{i}"])
        for l in range(i + 1, k + 1):
            for s in (f"s_{i}", f"s'_{i}"):
                arc(ids[s], ids[f"t_{l}"])
                arc(ids[s], ids[f"t'_{l}"])
        for j in range(1, i):
            arc(ids[f"t'_{j},{i}"], ids[f"t_{j},{i}"])
        # levels: within-gadget chains plus gadget-to-gadget links
        for u in range(0, n + 2):
            for lvl in (top, bot):
                seq = lvl[(i, u)]
                for a, b in zip(seq, seq[1:]):
                    arc(a, b)
                if u > 0:
                    arc(lvl[(i, u - 1)][-1], seq[0])
        # wires
        for u in range(1, n + 1):
            for pos, r in enumerate(wires(i)):
                arc(top[(i, u)][pos], bot[(i, u)][pos])
        # selector plumbing and skipping arcs
        arc(ids[f"s'_{i}"], top[(i, 0)][0])
        arc(bot[(i, n + 1)][-1], ids[f"t'_{i}"])
        for u in range(1, n + 1):
            arc(top[(i, u - 1)][-1], bot[(i, u + 1)][0])
        # dummy-gadget enforcement arcs
        for b in bot[(i, 0)]:
            for m in range(i, k + 1):
                arc(b, ids[f"t_{m}"])
                arc(b, ids[f"t'_{m}"])
            for (m, h) in pairs:
                if h >= i:
                    arc(b, ids[f"t_{m},{h}"])

    # column start terminals: wire entries, exits, and enforcement arcs
    for (i, j) in pairs:
        arc(ids[f"s_{i},{j}"], ids[f"s'_{i},{j}"])
        for s in (f"s_{i},{j}", f"s'_{i},{j}"):
            sid = ids[s]
            for l in range(i, k + 1):
                arc(sid, ids[f"t_{l}"])
                arc(sid, ids[f"t'_{l}"])
            for (p_, m) in pairs:
                if (p_, m) != (i, j) and m >= i:
                    arc(sid, ids[f"t_{p_},{m}"])
                    arc(sid, ids[f"t'_{p_},{m}"])
        for u in range(1, n + 1):
            arc(ids[f"s'_{i},{j}"], ids[f"a_{j}^{i},{u}"])
            arc(ids[f"b_{i}^{j},{u}"], ids[f"t'_{i},{j}"])

    # cross-row wire arcs, one per base edge and orientation
    for (i, j) in pairs:
        for u, v in g.edges():
            for a, b in ((u + 1, v + 1), (v + 1, u + 1)):
                arc(ids[f"b_{j}^{i},{a}"], ids[f"a_{i}^{j},{b}"])

    # shortest path enforcers into every row's terminal chain
    for i in rows:
        chain = top[(i, n + 1)]
        sources = []
        for l in rows:
            if l < i:
                for u in range(0, n + 1):
                    sources.extend(top[(l, u)])
                    sources.extend(bot[(l, u)])
            if l <= i:
                sources.append(ids[f"s_{l}"])
                sources.append(ids[f"s'_{l}"])
        for (l, m) in pairs:
            if l <= i:
                sources.append(ids[f"s_{l},{m}"])
                sources.append(ids[f"s'_{l},{m}"])
        for src in sources:
            for c in chain:
                arc(src, c)

    dag = Graph(nxt, sorted(arcs), directed=True)
    return ReductionOutput(
        graph=dag,
        k_target=k * (k - 1) // 2 + 3 * k,
        variant=Variant(Kind.SHORTEST, Mode.PARTITION),
        vertex_labels=labels,
        family="clique",
        meta={"k": k, "base_n": n},
    )


def clique_solution_paths(out, clique):
    """The intended shortest path partition for a k-clique of the base graph."""
    ids = {lab: v for v, lab in out.vertex_labels.items()}
    k = out.meta["k"]
    n = out.meta["base_n"]
    skip = {i + 1: u + 1 for i, u in enumerate(sorted(clique))}

    def wires(i):
        return [r for r in range(1, k + 1) if r != i]

    def top(i, u):
        if u == 0:
            return [ids[f"a_1^{i},0"], ids[f"a_2^{i},0"]]
        if u == n + 1:
            return [ids[f"a_{j}^{i},{n + 1}"] for j in range(1, k + 3)]
        return [ids[f"a_{r}^{i},{u}"] for r in wires(i)]

    def bot(i, u):
        if u == 0:
            return [ids[f"b_1^{i},0"], ids[f"b_2^{i},0"]]
        if u == n + 1:
            return [ids[f"b_1^{i},{n + 1}"], ids[f"b_2^{i},{n + 1}"]]
        return [ids[f"b_{r}^{i},{u}"] for r in wires(i)]

    paths = []
    for i in range(1, k + 1):
        u = skip[i]
        selector = [ids[f"s_{i}"], ids[f"s'_{i}"]]
        for c in range(0, u):
            selector.extend(top(i, c))
        for c in range(u + 1, n + 2):
            selector.extend(bot(i, c))
        selector.extend([ids[f"t'_{i}"], ids[f"t_{i}"]])
        paths.append(selector)
        left = []
        for c in range(0, u):
            left.extend(bot(i, c))
        paths.append(left)
        right = []
        for c in range(u + 1, n + 2):
            right.extend(top(i, c))
        paths.append(right)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            paths.append(
                [
                    ids[f"s_{i},{j}"],
                    ids[f"s'_{i},{j}"],
                    ids[f"a_{j}^{i},{skip[i]}"],
                    ids[f"b_{j}^{i},{skip[i]}"],
                    ids[f"a_{i}^{j},{skip[j]}"],
                    ids[f"b_{i}^{j},{skip[j]}"],
                    ids[f"t'_{i},{j}"],
                    ids[f"t_{i},{j}"],
                ]
            )
    return paths


# Induced-P4 partition -> shortest path partition on bipartite graphs -------


def gen_4uipp_to_uspp(g, parts=None):
    """Attach two five-vertex spines that pin distances of the base graph.

    The output on |V| + 10 vertices has a shortest path partition of size
    |V|/4 + 2 iff the bipartite, max-degree-3 base graph splits into induced
    four-vertex paths.
    """
    if g.directed:
        raise NotBipartite("base graph must be undirected")
    if g.n % 4 != 0 or g.n == 0:
        raise BadOrder("base order must be a positive multiple of 4")
    if any(len(g.adj[v]) > 3 for v in range(g.n)):
        raise BadOrder("base maximum degree must be 3")
    if parts is None:
        colors = bipartition(g)
        if colors is None:
            raise NotBipartite("base graph has an odd cycle")
        side_a = [v for v in range(g.n) if colors[v] == 0]
        side_b = [v for v in range(g.n) if colors[v] == 1]
    else:
        side_a, side_b = (sorted(parts[0]), sorted(parts[1]))
        if sorted(side_a + side_b) != list(range(g.n)) or any(
            (u in set(side_a)) == (v in set(side_a)) for u, v in g.edges()
        ):
            raise NotBipartite("supplied bipartition is not proper")

    labels = {v: f"base_{v}" for v in range(g.n)}
    x = {}
    y = {}
    nxt = g.n
    for idx in range(1, 6):
        x[idx] = nxt
        labels[nxt] = f"x{idx}"
        nxt += 1
    for idx in range(1, 6):
        y[idx] = nxt
        labels[nxt] = f"y{idx}"
        nxt += 1

    edges = list(g.edges())
    for i in range(1, 5):
        edges.append((x[i], x[i + 1]))
        edges.append((y[i], y[i + 1]))
    for hub in (x[2], x[4]):
        for b in side_b:
            edges.append((hub, b))
        edges.append((hub, y[2]))
        edges.append((hub, y[4]))
    for hub in (y[2], y[4]):
        for a in side_a:
            edges.append((hub, a))

    out = Graph(nxt, edges, directed=False)
    return ReductionOutput(
        graph=out,
        k_target=g.n // 4 + 2,
        variant=Variant(Kind.SHORTEST, Mode.PARTITION),
        vertex_labels=labels,
        family="4uipp",
        meta={"base_n": g.n, "side_a": side_a, "side_b": side_b},
    )


def fouruipp_solution_paths(out, base_partition):
    """Lift a base induced-P4 partition: add the two five-vertex spines."""
    ids = {lab: v for v, lab in out.vertex_labels.items()}
    paths = [list(p) for p in base_partition]
    paths.append([ids[f"x{i}"] for i in range(1, 6)])
    paths.append([ids[f"y{i}"] for i in range(1, 6)])
    return paths


# Structural verifiers -------------------------------------------------------


def verify_reduction(out):
    """Run the structural checks appropriate to the reduction family."""
    g = out.graph
    report = {}
    if out.family == "3dm":
        report["is_dag"] = g.directed and topological_order(g) is not None
        report["underlying_bipartite"] = bipartition(underlying_undirected(g)) is not None
        report["max_degree_4"] = all(g.degree(v) <= 4 for v in range(g.n))
        report["vertex_count"] = g.n == 3 * out.meta["p"] + 9 * out.meta["q"]
    elif out.family == "clique":
        report["is_dag"] = g.directed and topological_order(g) is not None
        boundary = out.k_target - out.meta["k"]
        report["in_degree_zero_count"] = (
            sum(1 for v in range(g.n) if not g.pred[v]) == boundary
        )
        report["out_degree_zero_count"] = (
            sum(1 for v in range(g.n) if not g.adj[v]) == boundary
        )
    elif out.family == "4uipp":
        report["bipartite"] = bipartition(g) is not None
        report["degenerate_5"] = degeneracy(g)[0] <= 5
        report["diameter_4"] = diameter(g) <= 4
        report["vertex_count"] = g.n == out.meta["base_n"] + 10
    else:
        raise ValueError(f"unknown reduction family {out.family!r}")
    return report
