"""Shared graph builders and seeded random instance generators."""

import random

import pytest

from pathpart.graph import Graph


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(leaves):
    return Graph(leaves + 1, [(0, i + 1) for i in range(leaves)])


def directed_path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)], directed=True)


def random_graph(rng, n, p):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_dag(rng, n, p):
    order = list(range(n))
    rng.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    edges = [
        (u, v) if pos[u] < pos[v] else (v, u)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    return Graph(n, edges, directed=True)


def random_digraph(rng, n, p):
    edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return Graph(n, edges, directed=True)


def random_bipartite(rng, n, p):
    colors = [rng.randint(0, 1) for _ in range(n)]
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if colors[u] != colors[v] and rng.random() < p
    ]
    return Graph(n, edges)


def tournament(rng, n):
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            edges.append((u, v) if rng.random() < 0.5 else (v, u))
    return Graph(n, edges, directed=True)


def example_graph_17():
    """The 17-vertex worked example: cover v1..v7 -> 0..6, w1..w10 -> 7..16."""
    cover_edges = [(1, 2), (3, 5), (4, 5), (5, 6)]
    cross_edges = [
        (0, 7), (0, 8),
        (1, 9), (1, 10),
        (2, 11),
        (3, 12), (3, 13),
        (4, 14), (4, 15), (4, 16),
        (5, 8), (5, 15), (5, 16),
        (6, 16),
    ]
    return Graph(17, cover_edges + cross_edges)


@pytest.fixture
def rng():
    return random.Random(20240817)
