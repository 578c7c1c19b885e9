"""Immutable graph type and the structural primitives shared by all solvers.

Vertices are dense integers 0..n-1.  Undirected graphs and digraphs share one
type; each solver branches on ``directed`` where it matters.  Unreachable
distances are reported as ``UNREACHABLE`` (None), never as a large finite
number, so accidental arithmetic on them fails loudly.
"""

from collections import deque

UNREACHABLE = None


class Graph:
    """Simple graph (no loops, no parallel edges) with sorted adjacency lists.

    For undirected graphs every edge is stored in both endpoint lists.  For
    digraphs ``adj`` holds successors and ``pred`` holds predecessors.
    Instances are immutable after construction and safe to share.
    """

    __slots__ = ("n", "m", "directed", "adj", "pred", "_edge_set")

    def __init__(self, n, edges=(), directed=False):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self.directed = directed
        succ = [[] for _ in range(n)]
        pred = [[] for _ in range(n)] if directed else None
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            key = (u, v) if directed else (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add(key)
            if directed:
                succ[u].append(v)
                pred[v].append(u)
            else:
                succ[u].append(v)
                succ[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in succ)
        self.pred = tuple(tuple(sorted(p)) for p in pred) if directed else None
        self.m = len(seen)
        self._edge_set = frozenset(seen)

    def has_edge(self, u, v):
        """Arc u->v in digraphs, edge {u,v} in undirected graphs."""
        if self.directed:
            return (u, v) in self._edge_set
        return (min(u, v), max(u, v)) in self._edge_set

    def edges(self):
        """Sorted edge list; arcs (u,v) for digraphs, pairs u<v otherwise."""
        return sorted(self._edge_set)

    def degree(self, v):
        """Total degree (in+out for digraphs)."""
        if self.directed:
            return len(self.adj[v]) + len(self.pred[v])
        return len(self.adj[v])

    def __repr__(self):
        kind = "digraph" if self.directed else "graph"
        return f"Graph({kind}, n={self.n}, m={self.m})"


def bfs_distances(g, source):
    """Hop distances from ``source`` along arcs; UNREACHABLE where no walk exists."""
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        for w in g.adj[v]:
            if dist[w] is UNREACHABLE:
                dist[w] = d
                queue.append(w)
    return dist


def all_pairs_distances(g):
    """n x n distance matrix built from one BFS per source."""
    return [bfs_distances(g, s) for s in range(g.n)]


def diameter(g, dist=None):
    """Largest finite entry of the distance matrix (0 for edgeless graphs)."""
    if dist is None:
        dist = all_pairs_distances(g)
    best = 0
    for row in dist:
        for d in row:
            if d is not UNREACHABLE and d > best:
                best = d
    return best


def topological_order(g):
    """A topological ordering of a digraph, or None if it has a directed cycle."""
    if not g.directed:
        raise ValueError("topological_order needs a directed graph")
    indeg = [len(g.pred[v]) for v in range(g.n)]
    queue = deque(v for v in range(g.n) if indeg[v] == 0)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in g.adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return order if len(order) == g.n else None


def underlying_undirected(g):
    """Forget arc directions: edge {u,v} iff (u,v) or (v,u) is an arc."""
    if not g.directed:
        return g
    edges = {(min(u, v), max(u, v)) for u, v in g.edges()}
    return Graph(g.n, sorted(edges), directed=False)


def bipartition(g):
    """A proper 2-coloring (list of 0/1) of an undirected graph, or None."""
    if g.directed:
        raise ValueError("bipartition needs an undirected graph")
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def degeneracy(g):
    """Return (d, elimination order) by repeated minimum-degree removal."""
    if g.directed:
        raise ValueError("degeneracy needs an undirected graph")
    deg = [len(g.adj[v]) for v in range(g.n)]
    removed = [False] * g.n
    order = []
    best = 0
    for _ in range(g.n):
        v = min((u for u in range(g.n) if not removed[u]), key=lambda u: (deg[u], u))
        best = max(best, deg[v])
        removed[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
    return best, order


def connected_components(g):
    """Partition into maximal weakly connected vertex sets (sorted lists)."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            nbrs = g.adj[v] if not g.directed else g.adj[v] + g.pred[v]
            for w in nbrs:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def induced_subgraph(g, vertices):
    """Induced subgraph on ``vertices`` plus the old-id list (new id = position)."""
    verts = sorted(vertices)
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for u, v in g.edges():
        if u in index and v in index:
            edges.append((index[u], index[v]))
    return Graph(len(verts), edges, directed=g.directed), verts
