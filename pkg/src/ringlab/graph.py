"""Exact invariants of small simple graphs.

Everything here is exhaustive: distances by BFS from every vertex, minimum
dominating sets by branch and bound, chromatic index by backtracking, and
isomorphism by pruned backtracking. No heuristic ever decides an answer.
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import NotASubset, SizeLimitExceeded

INF = math.inf

DEFAULT_MDS_CAP = 32
DEFAULT_EDGE_COLOR_CAP = 64
DEFAULT_EDGE_COLOR_TIMEOUT_MS = 20_000
DEFAULT_ISO_CAP = 64


@dataclass(frozen=True, eq=False)
class NCGraph:
    """Simple undirected graph on integer vertex labels."""

    vertices: tuple[int, ...]
    adjacency: Mapping[int, frozenset[int]]

    def __post_init__(self) -> None:
        vs = tuple(sorted(self.vertices))
        if len(set(vs)) != len(vs):
            raise ValueError("vertex labels must be unique")
        vset = set(vs)
        adj = {v: frozenset(self.adjacency.get(v, ())) for v in vs}
        for v, nbrs in adj.items():
            if v in nbrs:
                raise ValueError(f"loop at {v}")
            for w in nbrs:
                if w not in vset:
                    raise ValueError(f"edge {v}-{w} leaves the vertex set")
                if v not in adj[w]:
                    raise ValueError(f"adjacency not symmetric at {v}-{w}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> "NCGraph":
        adj: dict[int, set[int]] = {v: set() for v in vertices}
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop at {a}")
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        return cls(tuple(adj), {v: frozenset(n) for v, n in adj.items()})

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((v, w) for v in self.vertices for w in sorted(self.adjacency[v]) if v < w)

    @property
    def order(self) -> int:
        return len(self.vertices)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"NCGraph(|V|={self.order}, |E|={len(self.edges)})"


@dataclass(frozen=True)
class GraphMetrics:
    degree_map: dict[int, int]
    connected: bool
    diameter: float  # int, or INF when disconnected or empty
    girth: float  # int, or INF when acyclic
    max_degree: int


def _bfs(G: NCGraph, root: int) -> dict[int, int]:
    dist = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in G.adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _girth(G: NCGraph) -> float:
    # A BFS from r sees a non-tree edge (u, w) closing a closed walk of length
    # d(u) + d(w) + 1 through r; the minimum over all roots is exactly the girth.
    best = INF
    for r in G.vertices:
        dist = {r: 0}
        parent = {r: None}
        queue = deque([r])
        while queue:
            v = queue.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for w in G.adjacency[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def metrics(G: NCGraph) -> GraphMetrics:
    degrees = {v: G.degree(v) for v in G.vertices}
    if not G.vertices:
        return GraphMetrics(degrees, False, INF, INF, 0)
    ecc = 0
    connected = True
    for v in G.vertices:
        dist = _bfs(G, v)
        if len(dist) < G.order:
            connected = False
            break
        ecc = max(ecc, max(dist.values()))
    return GraphMetrics(
        degree_map=degrees,
        connected=connected,
        diameter=ecc if connected else INF,
        girth=_girth(G),
        max_degree=max(degrees.values()),
    )


@dataclass(frozen=True)
class GraphClass:
    bipartite: bool
    complete: bool
    star: bool
    regular: int | None
    empty_edges: bool


def is_bipartite(G: NCGraph) -> bool:
    side: dict[int, int] = {}
    for root in G.vertices:
        if root in side:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in G.adjacency[v]:
                if w not in side:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return False
    return True


def classify(G: NCGraph) -> GraphClass:
    n, m = G.order, len(G.edges)
    degs = sorted(G.degree(v) for v in G.vertices)
    connected = n > 0 and len(_bfs(G, G.vertices[0])) == n
    star = n >= 2 and connected and m == n - 1 and degs[-1] == n - 1 and all(d == 1 for d in degs[:-1])
    return GraphClass(
        bipartite=is_bipartite(G),
        complete=n >= 1 and m == n * (n - 1) // 2,
        star=star,
        regular=degs[0] if n and degs[0] == degs[-1] else None,
        empty_edges=m == 0,
    )


# -- domination -------------------------------------------------------------

def is_dominating(G: NCGraph, D: Iterable[int]) -> bool:
    D = set(D)
    if not D <= set(G.vertices):
        raise NotASubset(f"{sorted(D - set(G.vertices))} are not vertices")
    return all(v in D or G.adjacency[v] & D for v in G.vertices)


def minimum_dominating_set(G: NCGraph, max_vertices: int = DEFAULT_MDS_CAP) -> tuple[int, ...]:
    """Lexicographically first dominating set of minimum size."""
    n = G.order
    if n > max_vertices:
        raise SizeLimitExceeded(f"minimum dominating set capped at {max_vertices} vertices, graph has {n}")
    if n == 0:
        return ()
    index = {v: i for i, v in enumerate(G.vertices)}
    closed = [1 << i for i in range(n)]
    for v, i in index.items():
        for w in G.adjacency[v]:
            closed[i] |= 1 << index[w]
    full = (1 << n) - 1
    cover_size = max(bin(c).count("1") for c in closed)
    # highest index that can still dominate vertex i
    last_dominator = [max(j for j in range(n) if closed[j] >> i & 1) for i in range(n)]

    def search(start: int, covered: int, left: int, chosen: list[int]) -> list[int] | None:
        if covered == full:
            return chosen
        if left == 0:
            return None
        missing = full & ~covered
        if bin(missing).count("1") > left * cover_size:
            return None
        for i in range(n):
            if missing >> i & 1 and last_dominator[i] < start:
                return None
        for j in range(start, n):
            found = search(j + 1, covered | closed[j], left - 1, chosen + [j])
            if found is not None:
                return found
        return None

    for k in range(max(1, -(-n // cover_size)), n + 1):
        found = search(0, 0, k, [])
        if found is not None:
            return tuple(G.vertices[i] for i in found)
    raise AssertionError("the whole vertex set always dominates")


# -- edge colouring ---------------------------------------------------------

@dataclass(frozen=True)
class EdgeColoring:
    """Outcome of the exact chromatic-index search.

    ``vizing_class`` is 1, 2, or ``"indeterminate"`` when the search ran out
    of time; ``coloring`` is always a proper colouring (Delta colours for
    class 1, otherwise the Delta + 1 certificate).
    """

    chi_prime: int | None
    vizing_class: int | str
    max_degree: int
    coloring: dict[tuple[int, int], int] = field(repr=False)
    nodes: int = 0


class _Timeout(Exception):
    pass


def is_proper_edge_coloring(G: NCGraph, coloring: Mapping[tuple[int, int], int]) -> bool:
    if set(coloring) != set(G.edges):
        return False
    seen: dict[int, set[int]] = {v: set() for v in G.vertices}
    for (a, b), c in coloring.items():
        if c in seen[a] or c in seen[b]:
            return False
        seen[a].add(c)
        seen[b].add(c)
    return True


def vizing_coloring(G: NCGraph) -> dict[tuple[int, int], int]:
    """A proper edge colouring with at most Delta + 1 colours (Misra-Gries)."""
    if not G.edges:
        return {}
    delta = max(G.degree(v) for v in G.vertices)
    ncolors = delta + 1
    # color_at[v][c] = neighbour joined to v by an edge of colour c
    color_at: dict[int, dict[int, int]] = {v: {} for v in G.vertices}
    col: dict[frozenset, int] = {}

    def free(v: int) -> int:
        for c in range(ncolors):
            if c not in color_at[v]:
                return c
        raise AssertionError("vertex has no free colour")

    def is_free(v: int, c: int) -> bool:
        return c not in color_at[v]

    def set_color(a: int, b: int, c: int | None) -> None:
        key = frozenset((a, b))
        old = col.pop(key, None)
        if old is not None:
            del color_at[a][old]
            del color_at[b][old]
        if c is not None:
            col[key] = c
            color_at[a][c] = b
            color_at[b][c] = a

    for u, v in G.edges:
        fan = [v]
        in_fan = {v}
        grown = True
        while grown:
            grown = False
            for c, w in sorted(color_at[u].items()):
                if w not in in_fan and is_free(fan[-1], c):
                    fan.append(w)
                    in_fan.add(w)
                    grown = True
                    break
        c = free(u)
        d = free(fan[-1])
        # invert the cd-path starting at u
        path = [u]
        x, want = u, d
        while want in color_at[x]:
            y = color_at[x][want]
            path.append(y)
            x, want = y, (c if want == d else d)
        if len(path) > 1:
            edges = list(zip(path, path[1:]))
            olds = [col[frozenset(e)] for e in edges]
            for e in edges:
                set_color(*e, None)
            for e, old in zip(edges, olds):
                set_color(*e, c if old == d else d)
        # w: first fan vertex with d free whose prefix is still a fan
        k = 0
        while not is_free(fan[k], d):
            nxt = col.get(frozenset((u, fan[k + 1])))
            if nxt is None or not is_free(fan[k], nxt):
                raise AssertionError("fan prefix broken after path inversion")
            k += 1
        for i in range(k):
            nxt_color = col[frozenset((u, fan[i + 1]))]
            set_color(u, fan[i + 1], None)
            set_color(u, fan[i], nxt_color)
        set_color(u, fan[k], d)

    out = {tuple(sorted(e)): c for e, c in col.items()}
    assert is_proper_edge_coloring(G, out)
    return out


def _delta_colorable(G: NCGraph, delta: int, deadline: float | None, stats: dict) -> dict | None:
    edges = list(G.edges)
    m = len(edges)
    index = {v: i for i, v in enumerate(G.vertices)}
    n = len(index)
    ends = [(index[a], index[b]) for a, b in edges]
    incident: list[list[int]] = [[] for _ in range(n)]
    for e, (a, b) in enumerate(ends):
        incident[a].append(e)
        incident[b].append(e)
    full = (1 << delta) - 1
    used = [0] * n
    color = [-1] * m
    uncolored_at = [len(incident[v]) for v in range(n)]
    degsum = [len(incident[a]) + len(incident[b]) for a, b in ends]

    def assign(e: int, c: int) -> None:
        a, b = ends[e]
        color[e] = c
        used[a] |= 1 << c
        used[b] |= 1 << c
        uncolored_at[a] -= 1
        uncolored_at[b] -= 1

    def unassign(e: int) -> None:
        a, b = ends[e]
        c = color[e]
        color[e] = -1
        used[a] &= ~(1 << c)
        used[b] &= ~(1 << c)
        uncolored_at[a] += 1
        uncolored_at[b] += 1

    # colours are interchangeable: fix the edges at a maximum-degree vertex
    hub = max(range(n), key=lambda v: (len(incident[v]), -v))
    for c, e in enumerate(incident[hub]):
        assign(e, c)
    remaining = m - len(incident[hub])

    def matching_bound_ok(remaining: int) -> bool:
        # edges that can still take colour c form a matching among vertices with c free
        total = 0
        for c in range(delta):
            bit = 1 << c
            cnt = 0
            for v in range(n):
                if uncolored_at[v] and not used[v] & bit:
                    cnt += 1
            total += cnt // 2
        return total >= remaining

    def search(remaining: int) -> bool:
        stats["nodes"] += 1
        if deadline is not None and stats["nodes"] % 512 == 1 and time.monotonic() > deadline:
            raise _Timeout
        if remaining == 0:
            return True
        if not matching_bound_ok(remaining):
            return False
        best, best_avail, best_key = -1, 0, None
        for e in range(m):
            if color[e] >= 0:
                continue
            a, b = ends[e]
            avail = full & ~(used[a] | used[b])
            k = bin(avail).count("1")
            if k == 0:
                return False
            key = (k, -degsum[e], e)
            if best_key is None or key < best_key:
                best, best_avail, best_key = e, avail, key
        avail = best_avail
        while avail:
            bit = avail & -avail
            avail ^= bit
            assign(best, bit.bit_length() - 1)
            if search(remaining - 1):
                return True
            unassign(best)
        return False

    if search(remaining):
        return {edges[e]: color[e] for e in range(m)}
    return None


def chromatic_index(
    G: NCGraph,
    max_edges: int = DEFAULT_EDGE_COLOR_CAP,
    timeout_ms: float | None = DEFAULT_EDGE_COLOR_TIMEOUT_MS,
) -> EdgeColoring:
    m = len(G.edges)
    if m > max_edges:
        raise SizeLimitExceeded(f"chromatic index capped at {max_edges} edges, graph has {m}")
    delta = max((G.degree(v) for v in G.vertices), default=0)
    if m == 0:
        return EdgeColoring(0, 1, 0, {})
    deadline = None if timeout_ms is None else time.monotonic() + timeout_ms / 1000
    stats = {"nodes": 0}
    try:
        found = _delta_colorable(G, delta, deadline, stats)
    except _Timeout:
        return EdgeColoring(None, "indeterminate", delta, vizing_coloring(G), stats["nodes"])
    if found is not None:
        return EdgeColoring(delta, 1, delta, found, stats["nodes"])
    cert = vizing_coloring(G)
    return EdgeColoring(delta + 1, 2, delta, cert, stats["nodes"])


# -- isomorphism ------------------------------------------------------------

def _invariant(G: NCGraph, v: int) -> tuple:
    return (G.degree(v), tuple(sorted(G.degree(w) for w in G.adjacency[v])))


def are_isomorphic(G1: NCGraph, G2: NCGraph, max_vertices: int = DEFAULT_ISO_CAP) -> dict[int, int] | None:
    """An adjacency-preserving bijection ``V(G1) -> V(G2)``, or None."""
    for G in (G1, G2):
        if G.order > max_vertices:
            raise SizeLimitExceeded(f"isomorphism capped at {max_vertices} vertices, graph has {G.order}")
    if G1.order != G2.order or len(G1.edges) != len(G2.edges):
        return None
    inv1 = {v: _invariant(G1, v) for v in G1.vertices}
    inv2 = {v: _invariant(G2, v) for v in G2.vertices}
    if sorted(inv1.values()) != sorted(inv2.values()):
        return None
    by_inv: dict[tuple, list[int]] = {}
    for v in G2.vertices:
        by_inv.setdefault(inv2[v], []).append(v)

    # BFS order from the rarest invariant class keeps each new vertex tied to mapped ones
    order: list[int] = []
    placed: set[int] = set()
    rarity = {v: len(by_inv[inv1[v]]) for v in G1.vertices}
    while len(order) < G1.order:
        root = min((v for v in G1.vertices if v not in placed), key=lambda v: (rarity[v], -G1.degree(v), v))
        queue = deque([root])
        placed.add(root)
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in sorted(G1.adjacency[v], key=lambda w: (rarity[w], w)):
                if w not in placed:
                    placed.add(w)
                    queue.append(w)

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        mapped_nbrs = [w for w in G1.adjacency[v] if w in mapping]
        if mapped_nbrs:
            # candidates must be adjacent to the image of a mapped neighbour
            cands = sorted(G2.adjacency[mapping[mapped_nbrs[0]]])
        else:
            cands = by_inv[inv1[v]]
        for c in cands:
            if c in used or inv2[c] != inv1[v]:
                continue
            ok = True
            for w, img in mapping.items():
                if (w in G1.adjacency[v]) != (img in G2.adjacency[c]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = c
            used.add(c)
            if extend(k + 1):
                return True
            del mapping[v]
            used.discard(c)
        return False

    if extend(0):
        return dict(sorted(mapping.items()))
    return None


# -- serialisation ----------------------------------------------------------

def to_dot(G: NCGraph, name: str = "G") -> str:
    """Byte-deterministic Graphviz source: vertex lines, then sorted edge lines."""
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in G.vertices]
    lines += [f"  {a} -- {b};" for a, b in G.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_obj(G: NCGraph) -> dict:
    return {"vertices": list(G.vertices), "edges": [list(e) for e in G.edges]}


def from_json_obj(obj: Mapping) -> NCGraph:
    return NCGraph.from_edges(obj["vertices"], [tuple(e) for e in obj["edges"]])
