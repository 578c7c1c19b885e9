import pytest

from pathpart.checker import (
    EDGE_REUSED,
    GLOBAL,
    Kind,
    Mode,
    NOT_A_PATH,
    NOT_SHORTEST,
    PathSystem,
    UNCOVERED_VERTEX,
    VERTEX_REUSED,
    Variant,
    is_induced_path,
    is_path,
    is_shortest_path,
    verify,
)
from pathpart.graph import Graph, all_pairs_distances
from conftest import cycle_graph, path_graph, random_bipartite, random_dag, random_graph

P3 = path_graph(3)


def test_is_path():
    assert is_path(P3, [0, 1, 2])
    assert not is_path(P3, [0, 2])
    assert is_path(P3, [0])
    assert not is_path(P3, [])
    assert not is_path(P3, [0, 1, 0])


def test_is_path_respects_arc_direction():
    g = Graph(3, [(0, 1), (1, 2)], directed=True)
    assert is_path(g, [0, 1, 2])
    assert not is_path(g, [2, 1, 0])


def test_is_induced_path():
    assert not is_induced_path(cycle_graph(3), [0, 1, 2])
    assert is_induced_path(path_graph(4), [0, 1, 2, 3])
    # directed triangle: the backward arc between the endpoints chords it
    tri = Graph(3, [(0, 1), (1, 2), (2, 0)], directed=True)
    assert is_path(tri, [0, 1, 2])
    assert not is_induced_path(tri, [0, 1, 2])


def test_backward_arc_between_consecutive_is_allowed():
    g = Graph(2, [(0, 1), (1, 0)], directed=True)
    assert is_induced_path(g, [0, 1])


def test_is_shortest_path():
    c5 = cycle_graph(5)
    dist = all_pairs_distances(c5)
    assert is_shortest_path(c5, dist, [0, 1, 2])
    assert not is_shortest_path(c5, dist, [0, 1, 2, 3])


def test_verify_partition():
    ok = verify(P3, PathSystem([[0, 1, 2]], Variant(Kind.SHORTEST, Mode.PARTITION)))
    assert ok.valid
    bad = verify(P3, PathSystem([[0, 1], [1, 2]], Variant(Kind.UNRESTRICTED, Mode.PARTITION)))
    assert not bad.valid
    assert (1, VERTEX_REUSED) in bad.failures


def test_verify_edge_disjoint():
    ok = verify(P3, PathSystem([[0, 1], [1, 2]], Variant(Kind.UNRESTRICTED, Mode.EDGE_DISJOINT_COVER)))
    assert ok.valid
    bad = verify(P3, PathSystem([[0, 1, 2], [1, 0]], Variant(Kind.UNRESTRICTED, Mode.EDGE_DISJOINT_COVER)))
    assert (1, EDGE_REUSED) in bad.failures


def test_verify_reports_all_failures():
    v = verify(P3, PathSystem([[0, 2], [1, 1]], Variant(Kind.SHORTEST, Mode.PARTITION)))
    reasons = {r for _, r in v.failures}
    assert NOT_A_PATH in reasons and UNCOVERED_VERTEX in reasons


def test_uncovered_vertex_token():
    v = verify(P3, PathSystem([[0, 1]], Variant(Kind.UNRESTRICTED, Mode.COVER)))
    assert v.failures == [(GLOBAL, UNCOVERED_VERTEX)]


def test_not_shortest_token():
    c5 = cycle_graph(5)
    v = verify(c5, PathSystem([[0, 1, 2, 3], [4]], Variant(Kind.SHORTEST, Mode.PARTITION)))
    assert (0, NOT_SHORTEST) in v.failures


@pytest.mark.parametrize("mode", list(Mode))
def test_kind_implication_chain(rng, mode):
    """shortest-valid => induced-valid => path-valid, on UGs and DAGs."""
    from pathpart.oracle import solve_exact

    for _ in range(25):
        n = rng.randint(1, 7)
        g = random_dag(rng, n, 0.4) if rng.random() < 0.5 else random_graph(rng, n, 0.4)
        best = solve_exact(g, Variant(Kind.SHORTEST, mode))
        for kind in (Kind.INDUCED, Kind.UNRESTRICTED):
            assert verify(g, PathSystem(best.paths, Variant(kind, mode))).valid
        ind = solve_exact(g, Variant(Kind.INDUCED, mode))
        assert verify(g, PathSystem(ind.paths, Variant(Kind.UNRESTRICTED, mode))).valid


def test_mode_implication_chain(rng):
    """partition-valid => ed-cover-valid => cover-valid, same paths."""
    from pathpart.oracle import solve_exact

    for _ in range(25):
        n = rng.randint(1, 7)
        g = random_graph(rng, n, 0.4)
        for kind in Kind:
            best = solve_exact(g, Variant(kind, Mode.PARTITION))
            for mode in (Mode.EDGE_DISJOINT_COVER, Mode.COVER):
                assert verify(g, PathSystem(best.paths, Variant(kind, mode))).valid


def test_short_induced_paths_are_shortest(rng):
    """Induced paths on at most 3 vertices are shortest; on bipartite graphs
    induced 4-vertex paths are shortest too."""
    from pathpart.oracle import enumerate_valid_paths

    for _ in range(20):
        g = random_graph(rng, rng.randint(2, 8), 0.4)
        dist = all_pairs_distances(g)
        for s in range(g.n):
            for seq in enumerate_valid_paths(g, Kind.INDUCED, s):
                if len(seq) <= 3:
                    assert is_shortest_path(g, dist, seq)
    for _ in range(20):
        g = random_bipartite(rng, rng.randint(2, 10), 0.4)
        dist = all_pairs_distances(g)
        for s in range(g.n):
            for seq in enumerate_valid_paths(g, Kind.INDUCED, s):
                if len(seq) <= 4:
                    assert is_shortest_path(g, dist, seq)
