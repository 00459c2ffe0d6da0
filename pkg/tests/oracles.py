"""Brute-force reference implementations used only by the tests.

Each one is written directly from the definition, with no pruning and no
shared code with the package, so agreement is meaningful.
"""

from __future__ import annotations

import itertools


def scan_edges(R, S_members) -> list[tuple[int, int]]:
    """Relative non-commuting graph edges straight from the definition."""
    S = set(S_members)
    mul = R.mul
    verts = [x for x in range(R.order) if any(mul[x][s] != mul[s][x] for s in S)]
    return [
        (a, b) for a, b in itertools.combinations(verts, 2)
        if (a in S or b in S) and mul[a][b] != mul[b][a]
    ]


def brute_mds(vertices, adjacency) -> tuple[int, ...]:
    """Lexicographically first smallest dominating set by scanning subsets by size."""
    for k in range(len(vertices) + 1):
        for D in itertools.combinations(vertices, k):
            Ds = set(D)
            if all(v in Ds or adjacency[v] & Ds for v in vertices):
                return D
    raise AssertionError("unreachable: the full vertex set dominates")


def naive_colorable(edges, k: int) -> bool:
    """Fixed-order backtracking with no pruning beyond incidence conflicts."""
    edges = list(edges)
    color: dict[tuple[int, int], int] = {}

    def ok(e, c):
        return all(color.get(f) != c for f in edges if f != e and set(f) & set(e))

    def go(i):
        if i == len(edges):
            return True
        for c in range(k):
            if ok(edges[i], c):
                color[edges[i]] = c
                if go(i + 1):
                    return True
                del color[edges[i]]
        return False

    return go(0)
