import itertools

import pytest

from pathpart.matching import (
    BipartiteGraph,
    greedy_maximal_matching,
    matching_weight,
    max_cardinality_matching,
    max_weight_matching,
)
from conftest import complete_graph, cycle_graph, path_graph


def brute_force_best_weight(bg):
    best = 0
    for size in range(len(bg.edges) + 1):
        for combo in itertools.combinations(bg.edges, size):
            lefts = [l for l, _, _ in combo]
            rights = [r for _, r, _ in combo]
            if len(set(lefts)) == len(combo) == len(set(rights)):
                best = max(best, sum(w for _, _, w in combo))
    return best


def test_bipartite_graph_validation():
    with pytest.raises(ValueError):
        BipartiteGraph(2, 2, [(0, 0), (0, 0)])
    with pytest.raises(ValueError):
        BipartiteGraph(1, 1, [(0, 3)])
    with pytest.raises(ValueError):
        BipartiteGraph(1, 1, [(0, 0, 0)])


def test_max_cardinality_examples():
    full = BipartiteGraph(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    assert len(max_cardinality_matching(full)) == 2
    star = BipartiteGraph(1, 3, [(0, 0), (0, 1), (0, 2)])
    assert len(max_cardinality_matching(star)) == 1
    tri = BipartiteGraph(3, 3, [(0, 0), (0, 1), (1, 1), (2, 2)])
    assert len(max_cardinality_matching(tri)) == 3


def test_max_weight_examples():
    single = BipartiteGraph(1, 1, [(0, 0, 2)])
    m = max_weight_matching(single)
    assert matching_weight(single, m) == 2
    contested = BipartiteGraph(2, 1, [(0, 0, 1), (1, 0, 2)])
    m = max_weight_matching(contested)
    assert m == {(1, 0)}


def test_max_weight_prefers_weight_over_cardinality():
    # one heavy edge blocking two light ones: weight 3 at cardinality 1
    # beats the cardinality-2 matching of weight 2
    bg = BipartiteGraph(2, 2, [(0, 0, 3), (0, 1, 1), (1, 0, 1)])
    m = max_weight_matching(bg)
    assert matching_weight(bg, m) == 3 == brute_force_best_weight(bg)


def test_max_weight_equals_brute_force(rng):
    for _ in range(60):
        nl = rng.randint(1, 5)
        nr = rng.randint(1, 5)
        edges = [
            (l, r, rng.choice([1, 2]))
            for l in range(nl)
            for r in range(nr)
            if rng.random() < 0.5
        ]
        bg = BipartiteGraph(nl, nr, edges)
        m = max_weight_matching(bg)
        lefts = [l for l, _ in m]
        rights = [r for _, r in m]
        assert len(set(lefts)) == len(m) == len(set(rights))
        assert matching_weight(bg, m) == brute_force_best_weight(bg)


def test_cardinality_equals_weight_when_unit(rng):
    for _ in range(30):
        nl, nr = rng.randint(1, 6), rng.randint(1, 6)
        edges = [(l, r) for l in range(nl) for r in range(nr) if rng.random() < 0.4]
        bg = BipartiteGraph(nl, nr, edges)
        assert len(max_cardinality_matching(bg)) == matching_weight(
            bg, max_weight_matching(bg)
        )


def test_greedy_maximal_examples():
    assert len(greedy_maximal_matching(path_graph(4))) == 2
    assert len(greedy_maximal_matching(complete_graph(3))) == 1
    assert len(greedy_maximal_matching(cycle_graph(6))) == 3


def test_greedy_is_maximal(rng):
    from conftest import random_graph

    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 9), 0.4)
        matching = greedy_maximal_matching(g)
        used = {v for e in matching for v in e}
        for u, v in g.edges():
            assert u in used or v in used
