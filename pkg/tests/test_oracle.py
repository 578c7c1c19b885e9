import pytest

from pathpart.checker import Kind, Mode, PathSystem, Variant, verify
from pathpart.graph import Graph
from pathpart.oracle import (
    BudgetExceeded,
    OracleBudget,
    decide,
    enumerate_valid_paths,
    solve_exact,
)
from conftest import complete_graph, cycle_graph, path_graph, random_dag, random_graph


def test_enumerate_valid_paths_examples():
    k3 = complete_graph(3)
    got = {tuple(p) for p in enumerate_valid_paths(k3, Kind.INDUCED, 0)}
    assert got == {(0,), (0, 1), (0, 2)}
    p3 = path_graph(3)
    got = {tuple(p) for p in enumerate_valid_paths(p3, Kind.SHORTEST, 0)}
    assert got == {(0,), (0, 1), (0, 1, 2)}
    c4 = cycle_graph(4)
    got = {tuple(p) for p in enumerate_valid_paths(c4, Kind.SHORTEST, 0)}
    assert got == {(0,), (0, 1), (0, 3), (0, 1, 2), (0, 3, 2)}


@pytest.mark.parametrize("kind", list(Kind))
def test_path_graph_needs_one_path(kind):
    g = path_graph(6)
    assert len(solve_exact(g, Variant(kind, Mode.PARTITION)).paths) == 1


def test_solve_exact_examples():
    assert len(solve_exact(complete_graph(4), Variant(Kind.INDUCED, Mode.PARTITION)).paths) == 2
    assert len(solve_exact(cycle_graph(6), Variant(Kind.SHORTEST, Mode.PARTITION)).paths) == 2


def test_decide_examples():
    assert decide(path_graph(3), Variant(Kind.SHORTEST, Mode.PARTITION), 1) is not None
    assert decide(complete_graph(3), Variant(Kind.INDUCED, Mode.PARTITION), 1) is None
    assert decide(cycle_graph(6), Variant(Kind.SHORTEST, Mode.PARTITION), 2) is not None


def test_budget_enforced():
    g = path_graph(16)
    with pytest.raises(BudgetExceeded):
        solve_exact(g, Variant(Kind.UNRESTRICTED, Mode.PARTITION))
    ok = solve_exact(g, Variant(Kind.UNRESTRICTED, Mode.PARTITION), OracleBudget(max_vertices=16))
    assert len(ok.paths) == 1


def test_node_limit():
    g = complete_graph(10)
    budget = OracleBudget(max_vertices=10, node_limit=50)
    with pytest.raises(BudgetExceeded):
        solve_exact(g, Variant(Kind.UNRESTRICTED, Mode.PARTITION), budget)


def test_every_output_verifies(rng):
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 7), 0.4)
        for kind in Kind:
            for mode in Mode:
                system = solve_exact(g, Variant(kind, mode))
                assert verify(g, system).valid


def test_kind_monotonicity(rng):
    """optimum(shortest) >= optimum(induced) >= optimum(unrestricted), on
    undirected graphs and DAGs (the directed triangle breaks it elsewhere)."""
    for _ in range(25):
        n = rng.randint(1, 7)
        g = random_dag(rng, n, 0.4) if rng.random() < 0.5 else random_graph(rng, n, 0.4)
        for mode in Mode:
            opts = [len(solve_exact(g, Variant(k, mode)).paths)
                    for k in (Kind.SHORTEST, Kind.INDUCED, Kind.UNRESTRICTED)]
            assert opts[0] >= opts[1] >= opts[2]


def test_mode_monotonicity(rng):
    for _ in range(25):
        g = random_graph(rng, rng.randint(1, 7), 0.4)
        for kind in Kind:
            opts = [len(solve_exact(g, Variant(kind, m)).paths)
                    for m in (Mode.PARTITION, Mode.EDGE_DISJOINT_COVER, Mode.COVER)]
            assert opts[0] >= opts[1] >= opts[2]


def test_directed_triangle_shortest_beats_induced():
    """On general digraphs a shortest path need not be induced."""
    tri = Graph(3, [(0, 1), (1, 2), (2, 0)], directed=True)
    spp = solve_exact(tri, Variant(Kind.SHORTEST, Mode.PARTITION))
    ipp = solve_exact(tri, Variant(Kind.INDUCED, Mode.PARTITION))
    assert len(spp.paths) == 1 and len(ipp.paths) == 2


def test_pruning_soundness_regression(rng):
    """Removing the lower-bound pruning must not change optima (n <= 7)."""
    import pathpart.oracle as om

    class _NoBound:
        def __init__(self):
            self.orig = om._search

        def __enter__(self):
            orig = self.orig

            def patched(g, variant, pool, cap, counter, node_limit):
                # bound degenerates to the plain incumbent check
                pool.longest = 10 ** 9
                return orig(g, variant, pool, cap, counter, node_limit)

            om._search = patched

        def __exit__(self, *exc):
            om._search = self.orig

    for _ in range(12):
        g = random_graph(rng, rng.randint(1, 7), 0.4)
        for kind in Kind:
            for mode in Mode:
                with_bound = len(solve_exact(g, Variant(kind, mode)).paths)
                with _NoBound():
                    without = len(solve_exact(g, Variant(kind, mode)).paths)
                assert with_bound == without


def test_deterministic_output(rng):
    for _ in range(10):
        g = random_graph(rng, rng.randint(1, 7), 0.5)
        a = solve_exact(g, Variant(Kind.INDUCED, Mode.COVER))
        b = solve_exact(g, Variant(Kind.INDUCED, Mode.COVER))
        assert a.paths == b.paths
