import pytest

from pathpart.graph import (
    Graph,
    UNREACHABLE,
    all_pairs_distances,
    bfs_distances,
    bipartition,
    connected_components,
    degeneracy,
    diameter,
    induced_subgraph,
    topological_order,
    underlying_undirected,
)
from conftest import complete_graph, cycle_graph, path_graph, random_digraph, random_graph


def test_construction_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])  # duplicate undirected edge
    with pytest.raises(ValueError):
        Graph(2, [(0, 5)])
    # opposite arcs are fine in digraphs
    g = Graph(2, [(0, 1), (1, 0)], directed=True)
    assert g.m == 2


def test_bfs_distances_directed_path():
    g = Graph(3, [(0, 1), (1, 2)], directed=True)
    assert bfs_distances(g, 0) == [0, 1, 2]
    assert bfs_distances(g, 2) == [UNREACHABLE, UNREACHABLE, 0]


def test_bfs_distances_c5():
    assert bfs_distances(cycle_graph(5), 0) == [0, 1, 2, 2, 1]


def test_all_pairs_small():
    assert all_pairs_distances(Graph(1)) == [[0]]
    k3 = complete_graph(3)
    dist = all_pairs_distances(k3)
    assert all(dist[u][v] == 1 for u in range(3) for v in range(3) if u != v)


def test_all_pairs_matches_floyd_warshall(rng):
    for _ in range(40):
        n = rng.randint(1, 12)
        g = random_graph(rng, n, 0.3) if rng.random() < 0.5 else random_digraph(rng, n, 0.3)
        dist = all_pairs_distances(g)
        big = 10 ** 6
        fw = [[0 if u == v else (1 if g.has_edge(u, v) else big) for v in range(n)] for u in range(n)]
        for k in range(n):
            for u in range(n):
                for v in range(n):
                    if fw[u][k] + fw[k][v] < fw[u][v]:
                        fw[u][v] = fw[u][k] + fw[k][v]
        for u in range(n):
            for v in range(n):
                expect = UNREACHABLE if fw[u][v] >= big else fw[u][v]
                assert dist[u][v] == expect


def test_bfs_symmetry_undirected(rng):
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 10), 0.4)
        dist = all_pairs_distances(g)
        for u in range(g.n):
            for v in range(g.n):
                assert dist[u][v] == dist[v][u]


def test_topological_order():
    g = Graph(3, [(0, 1), (1, 2)], directed=True)
    assert topological_order(g) == [0, 1, 2]
    cyc = Graph(2, [(0, 1), (1, 0)], directed=True)
    assert topological_order(cyc) is None


def test_topological_matches_cycle_search(rng):
    def has_directed_cycle(g):
        color = [0] * g.n

        def dfs(v):
            color[v] = 1
            for w in g.adj[v]:
                if color[w] == 1 or (color[w] == 0 and dfs(w)):
                    return True
            color[v] = 2
            return False

        return any(color[v] == 0 and dfs(v) for v in range(g.n))

    for _ in range(60):
        g = random_digraph(rng, rng.randint(1, 8), 0.3)
        assert (topological_order(g) is None) == has_directed_cycle(g)


def test_degeneracy():
    assert degeneracy(path_graph(5))[0] == 1
    assert degeneracy(complete_graph(4))[0] == 3


def test_degeneracy_bounds(rng):
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 10), 0.5)
        d, order = degeneracy(g)
        assert d <= max(len(g.adj[v]) for v in range(g.n))
        assert sorted(order) == list(range(g.n))
    assert degeneracy(complete_graph(6))[0] == 5


def test_bipartition():
    assert bipartition(cycle_graph(4)) in ([0, 1, 0, 1], [1, 0, 1, 0])
    assert bipartition(cycle_graph(3)) is None


def test_underlying_undirected():
    g = Graph(2, [(0, 1), (1, 0)], directed=True)
    assert underlying_undirected(g).edges() == [(0, 1)]
    tri = Graph(3, [(0, 1), (0, 2), (1, 2)], directed=True)
    assert underlying_undirected(tri).m == 3


def test_underlying_of_tournament(rng):
    from conftest import tournament

    for n in range(2, 7):
        t = tournament(rng, n)
        u = underlying_undirected(t)
        assert u.m == n * (n - 1) // 2


def test_connected_components():
    two_edges = Graph(4, [(0, 1), (2, 3)])
    assert connected_components(two_edges) == [[0, 1], [2, 3]]
    assert connected_components(cycle_graph(5)) == [[0, 1, 2, 3, 4]]
    assert connected_components(Graph(4)) == [[0], [1], [2], [3]]


def test_induced_subgraph():
    g = cycle_graph(5)
    sub, old = induced_subgraph(g, [0, 1, 2])
    assert old == [0, 1, 2]
    assert sub.edges() == [(0, 1), (1, 2)]


def test_diameter():
    assert diameter(path_graph(6)) == 5
    assert diameter(Graph(3)) == 0
