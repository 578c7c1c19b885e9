"""Bipartite matching engines backing the DAG solver, the vertex-cover
algorithm and the dual-parameter shortcut."""

from collections import deque
from dataclasses import dataclass, field

INF = float("inf")


@dataclass
class BipartiteGraph:
    """Bipartite graph with left side 0..n_left-1, right side 0..n_right-1.

    Edges are (left, right, weight) triples; weights default to 1.
    """

    n_left: int
    n_right: int
    edges: list = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        norm = []
        for e in self.edges:
            if len(e) == 2:
                l, r, w = e[0], e[1], 1
            else:
                l, r, w = e
            if not (0 <= l < self.n_left and 0 <= r < self.n_right):
                raise ValueError(f"edge ({l},{r}) out of range")
            if (l, r) in seen:
                raise ValueError(f"duplicate edge ({l},{r})")
            if w <= 0:
                raise ValueError("weights must be positive integers")
            seen.add((l, r))
            norm.append((l, r, w))
        self.edges = norm


def max_cardinality_matching(bg):
    """Maximum-cardinality matching via Hopcroft-Karp layering.

    Weights are ignored.  Returns a set of (left, right) pairs.
    """
    adj = [[] for _ in range(bg.n_left)]
    for l, r, _ in bg.edges:
        adj[l].append(r)
    match_l = [-1] * bg.n_left
    match_r = [-1] * bg.n_right
    dist = [0] * bg.n_left

    def bfs():
        queue = deque()
        for l in range(bg.n_left):
            if match_l[l] == -1:
                dist[l] = 0
                queue.append(l)
            else:
                dist[l] = -1
        found = False
        while queue:
            l = queue.popleft()
            for r in adj[l]:
                nxt = match_r[r]
                if nxt == -1:
                    found = True
                elif dist[nxt] == -1:
                    dist[nxt] = dist[l] + 1
                    queue.append(nxt)
        return found

    def dfs(l):
        for r in adj[l]:
            nxt = match_r[r]
            if nxt == -1 or (dist[nxt] == dist[l] + 1 and dfs(nxt)):
                match_l[l] = r
                match_r[r] = l
                return True
        dist[l] = -1
        return False

    while bfs():
        for l in range(bg.n_left):
            if match_l[l] == -1:
                dfs(l)
    return {(l, match_l[l]) for l in range(bg.n_left) if match_l[l] != -1}


def max_weight_matching(bg):
    """Matching maximizing total weight (not necessarily maximum cardinality).

    Successive shortest augmenting paths on the assignment network: augment
    one unit at a time along the cheapest source-sink path (costs are the
    negated weights) and stop as soon as the cheapest path stops paying.
    Bellman-Ford is fine at the sizes this library deals with.
    """
    n = bg.n_left + bg.n_right + 2
    source = bg.n_left + bg.n_right
    sink = source + 1
    # arc lists: to, capacity, cost, index of reverse arc
    graph = [[] for _ in range(n)]

    def add_arc(u, v, cap, cost):
        graph[u].append([v, cap, cost, len(graph[v])])
        graph[v].append([u, 0, -cost, len(graph[u]) - 1])

    for l in range(bg.n_left):
        add_arc(source, l, 1, 0)
    for r in range(bg.n_right):
        add_arc(bg.n_left + r, sink, 1, 0)
    for l, r, w in bg.edges:
        add_arc(l, bg.n_left + r, 1, -w)

    while True:
        dist = [INF] * n
        in_queue = [False] * n
        prev = [None] * n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            in_queue[u] = False
            for i, (v, cap, cost, _) in enumerate(graph[u]):
                if cap > 0 and dist[u] + cost < dist[v]:
                    dist[v] = dist[u] + cost
                    prev[v] = (u, i)
                    if not in_queue[v]:
                        in_queue[v] = True
                        queue.append(v)
        if dist[sink] >= 0:
            break
        v = sink
        while v != source:
            u, i = prev[v]
            graph[u][i][1] -= 1
            rev = graph[u][i][3]
            graph[v][rev][1] += 1
            v = u

    matching = set()
    for l in range(bg.n_left):
        for v, cap, _, _ in graph[l]:
            if v != source and cap == 0:  # used edge arc
                matching.add((l, v - bg.n_left))
    return matching


def matching_weight(bg, matching):
    """Total weight of a set of (left, right) pairs under bg's weights."""
    weights = {(l, r): w for l, r, w in bg.edges}
    return sum(weights[e] for e in matching)


def greedy_maximal_matching(g):
    """Maximal (inextensible) matching by scanning edges in lexicographic order."""
    if g.directed:
        raise ValueError("greedy_maximal_matching needs an undirected graph")
    used = set()
    matching = []
    for u, v in g.edges():
        if u not in used and v not in used:
            matching.append((u, v))
            used.add(u)
            used.add(v)
    return matching
