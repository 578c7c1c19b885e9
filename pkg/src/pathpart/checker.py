"""Validation of candidate paths and full solutions for every problem variant.

This is the single source of truth: every solver's output and every test
fixture is judged by ``verify``.
"""

from dataclasses import dataclass, field
from enum import Enum

from .graph import all_pairs_distances


class Kind(Enum):
    UNRESTRICTED = "unrestricted"
    INDUCED = "induced"
    SHORTEST = "shortest"


class Mode(Enum):
    PARTITION = "partition"
    COVER = "cover"
    EDGE_DISJOINT_COVER = "ed-cover"


@dataclass(frozen=True)
class Variant:
    kind: Kind
    mode: Mode


# Failure reason tokens.
NOT_A_PATH = "NOT_A_PATH"
NOT_INDUCED = "NOT_INDUCED"
NOT_SHORTEST = "NOT_SHORTEST"
VERTEX_REUSED = "VERTEX_REUSED"
EDGE_REUSED = "EDGE_REUSED"
UNCOVERED_VERTEX = "UNCOVERED_VERTEX"

# Path index used for failures that are not attributable to a single path.
GLOBAL = -1


@dataclass
class PathSystem:
    """An ordered collection of vertex sequences plus the variant they claim."""

    paths: list
    variant: Variant


@dataclass
class Verdict:
    valid: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.valid


def is_path(g, seq):
    """True iff seq is nonempty, repetition-free and consecutive-adjacent.

    In digraphs consecutive vertices need the forward arc.
    """
    if len(seq) == 0 or len(set(seq)) != len(seq):
        return False
    if any(not 0 <= v < g.n for v in seq):
        return False
    return all(g.has_edge(u, v) for u, v in zip(seq, seq[1:]))


def is_induced_path(g, seq):
    """True iff seq is a path with no extra adjacency between its vertices.

    Undirected: no chord.  Directed: no arc in either direction between
    non-consecutive vertices; extra backward arcs between consecutive
    vertices are permitted (only the forward arc is required).
    """
    if not is_path(g, seq):
        return False
    for i, u in enumerate(seq):
        for j in range(i + 2, len(seq)):
            v = seq[j]
            if g.has_edge(u, v) or (g.directed and g.has_edge(v, u)):
                return False
    return True


def is_shortest_path(g, dist, seq):
    """True iff seq is a path whose length equals the endpoint distance."""
    if not is_path(g, seq):
        return False
    return dist[seq[0]][seq[-1]] == len(seq) - 1


def verify(g, system, dist=None):
    """Check a PathSystem against its variant; all failures are reported."""
    kind = system.variant.kind
    mode = system.variant.mode
    if kind is Kind.SHORTEST and dist is None:
        dist = all_pairs_distances(g)
    failures = []

    for idx, seq in enumerate(system.paths):
        if not is_path(g, seq):
            failures.append((idx, NOT_A_PATH))
            continue
        if kind is Kind.INDUCED and not is_induced_path(g, seq):
            failures.append((idx, NOT_INDUCED))
        elif kind is Kind.SHORTEST and not is_shortest_path(g, dist, seq):
            failures.append((idx, NOT_SHORTEST))

    covered = set()
    for idx, seq in enumerate(system.paths):
        if mode is Mode.PARTITION and any(v in covered for v in set(seq)):
            failures.append((idx, VERTEX_REUSED))
        covered.update(seq)
    for v in range(g.n):
        if v not in covered:
            failures.append((GLOBAL, UNCOVERED_VERTEX))
            break

    if mode is Mode.EDGE_DISJOINT_COVER:
        used = set()
        for idx, seq in enumerate(system.paths):
            reused = False
            for u, v in zip(seq, seq[1:]):
                key = (u, v) if g.directed else (min(u, v), max(u, v))
                if key in used:
                    reused = True
                used.add(key)
            if reused:
                failures.append((idx, EDGE_REUSED))

    return Verdict(valid=not failures, failures=failures)
