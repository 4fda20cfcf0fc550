"""Girth, bridges, cyclic edge connectivity and isomorphism for small cubic graphs.

Dangling edges are ignored by every function here except
:func:`are_isomorphic`, which compares whole multipoles.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass

import numpy as np

from . import kernels
from .multipole import Multipole

__all__ = [
    "ConnectivityResult",
    "StructureError",
    "girth",
    "shortest_cycle_through",
    "is_connected",
    "is_bridgeless",
    "bridges",
    "cyclic_connectivity_oracle",
    "cyclic_edge_connectivity",
    "is_cycle_separating",
    "are_isomorphic",
    "graph_invariant",
    "ORACLE_MAX_VERTICES",
]

ORACLE_MAX_VERTICES = 26


class StructureError(ValueError):
    pass


def _inc(g: Multipole) -> list[list[tuple[int, int]]]:
    """Per vertex: (edge id, other end) over links; a loop appears twice."""
    inc: list[list[tuple[int, int]]] = [[] for _ in range(g.vertex_count)]
    for e, (u, v) in enumerate(g.links):
        inc[u].append((e, v))
        inc[v].append((e, u))
    return inc


def girth(g: Multipole) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests.  Loops count 1, parallel edges 2."""
    if any(u == v for u, v in g.links):
        return 1
    if len(set(g.links)) < len(g.links):
        return 2
    inc = _inc(g)
    best = math.inf
    for r in range(g.vertex_count):
        dist = {r: 0}
        via = {r: -1}
        q = deque([r])
        while q:
            u = q.popleft()
            if 2 * dist[u] >= best:
                break
            for e, w in inc[u]:
                if e == via[u]:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    via[w] = e
                    q.append(w)
                else:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def _bfs_path(inc, src: int, dst: int, skip_edge: int) -> list[int] | None:
    prev = {src: None}
    q = deque([src])
    while q:
        u = q.popleft()
        if u == dst:
            path = [u]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for e, w in inc[u]:
            if e != skip_edge and w not in prev:
                prev[w] = u
                q.append(w)
    return None


def shortest_cycle_through(g: Multipole, e: int) -> float:
    """Length of a shortest cycle containing link ``e``; ``math.inf`` if ``e`` is a bridge."""
    cyc = _cycle_through(g, _inc(g), e)
    return math.inf if cyc is None else len(cyc)


def _cycle_through(g: Multipole, inc, e: int) -> list[int] | None:
    """Vertex sequence of a shortest cycle through link ``e``."""
    u, v = g.links[e]
    if u == v:
        return [u]
    return _bfs_path(inc, u, v, e)


def is_connected(g: Multipole) -> bool:
    if g.vertex_count == 0:
        return True
    adj = g.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.vertex_count


def bridges(g: Multipole) -> list[int]:
    """Edge ids of all bridges (iterative low-link search)."""
    n = g.vertex_count
    inc = _inc(g)
    disc = [-1] * n
    low = [0] * n
    out: list[int] = []
    t = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(inc[root]))]
        while stack:
            u, pe, it = stack[-1]
            advanced = False
            for e, w in it:
                if e == pe:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, e, iter(inc[w])))
                    advanced = True
                    break
                low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] > disc[p]:
                    out.append(pe)
    return sorted(out)


def is_bridgeless(g: Multipole) -> bool:
    return not bridges(g)


# -- cyclic edge connectivity ------------------------------------------


@dataclass(frozen=True)
class ConnectivityResult:
    """Cyclic edge connectivity with a witnessing cut.

    ``value`` is ``None`` when the graph has no two vertex-disjoint cycles.
    """

    value: int | None
    witness_cut: tuple[int, ...] = ()
    witness_sides: tuple[tuple[int, ...], tuple[int, ...]] = ((), ())

    @property
    def infinite(self) -> bool:
        return self.value is None

    def as_number(self) -> float:
        return math.inf if self.value is None else self.value

    def __str__(self) -> str:
        return "no-two-disjoint-cycles" if self.value is None else str(self.value)


def _has_cycle(g: Multipole, side: set[int]) -> bool:
    deg = Counter()
    for u, v in g.links:
        if u in side and v in side:
            deg[u] += 1
            deg[v] += 1
    alive = set(side)
    adj = g.adjacency()
    q = [v for v in alive if deg[v] <= 1]
    while q:
        v = q.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    q.append(w)
    return bool(alive)


def _cut_of(g: Multipole, side: set[int]) -> tuple[int, ...]:
    return tuple(e for e, (u, v) in enumerate(g.links) if (u in side) != (v in side))


def _result(g: Multipole, side: set[int]) -> ConnectivityResult:
    other = tuple(v for v in range(g.vertex_count) if v not in side)
    cut = _cut_of(g, side)
    return ConnectivityResult(len(cut), cut, (tuple(sorted(side)), other))


def is_cycle_separating(g: Multipole, side) -> bool:
    side = set(side)
    other = set(range(g.vertex_count)) - side
    return bool(side) and bool(other) and _has_cycle(g, side) and _has_cycle(g, other)


def cyclic_connectivity_oracle(g: Multipole) -> ConnectivityResult:
    """Exhaustive minimum over all vertex bipartitions with a cycle on both sides.

    Among minimum cuts the witness side is the one with the smallest vertex
    bitmask, with the last vertex always on the other side.
    """
    n = g.vertex_count
    if n > ORACLE_MAX_VERTICES:
        raise StructureError(f"oracle limited to {ORACLE_MAX_VERTICES} vertices, got {n}")
    if n < 2:
        return ConnectivityResult(None)
    best, mask = kernels.min_cycle_separating_cut(n, g.links)
    if best < 0:
        return ConnectivityResult(None)
    side = {v for v in range(n) if mask >> v & 1}
    res = _result(g, side)
    assert res.value == best
    return res


def _shortest_cycles(g: Multipole) -> list[frozenset[int]]:
    inc = _inc(g)
    seen: dict[frozenset[int], None] = {}
    for e in range(len(g.links)):
        cyc = _cycle_through(g, inc, e)
        if cyc is not None:
            seen.setdefault(frozenset(cyc), None)
    return sorted(seen, key=lambda c: (len(c), sorted(c)))


def _min_cut_between(g: Multipole, inc, src: frozenset[int], dst: frozenset[int], limit: float):
    """Unit-capacity max flow between two contracted vertex sets.

    Stops once ``limit`` edge-disjoint paths exist and returns ``None``;
    otherwise returns the source side of a minimum cut.
    """
    flow = [0] * len(g.links)  # +1: oriented from links[e][0] to links[e][1]
    value = 0
    while True:
        prev: dict[int, tuple[int, int] | None] = {s: None for s in src}
        q = deque(sorted(src))
        hit = None
        while q and hit is None:
            u = q.popleft()
            for e, w in inc[u]:
                if w in prev or w == u:
                    continue
                a, _ = g.links[e]
                sign = 1 if a == u else -1
                if flow[e] * sign >= 1:
                    continue
                prev[w] = (u, e)
                if w in dst:
                    hit = w
                    break
                q.append(w)
        if hit is None:
            return set(prev)
        value += 1
        if value >= limit:
            return None
        w = hit
        while prev[w] is not None:
            u, e = prev[w]
            flow[e] += 1 if g.links[e][0] == u else -1
            w = u


def cyclic_edge_connectivity(g: Multipole) -> ConnectivityResult:
    """Cycle-pair max-flow algorithm for cyclic edge connectivity.

    Candidate cycles are the shortest cycles through each edge.  The cut
    around each candidate cycle gives the initial upper bound; each pair of
    vertex-disjoint candidates is then separated by a minimum cut.
    """
    n = g.vertex_count
    cycles = _shortest_cycles(g)
    inc = _inc(g)
    best: float = math.inf
    best_side: set[int] | None = None
    for c in cycles:
        rest = set(range(n)) - c
        if rest and _has_cycle(g, rest):
            k = len(_cut_of(g, set(c)))
            if k < best:
                best, best_side = k, set(c)
    pairs = 0
    for i, c1 in enumerate(cycles):
        for c2 in cycles[i + 1 :]:
            if c1 & c2:
                continue
            pairs += 1
            side = _min_cut_between(g, inc, c1, c2, best)
            if side is None:
                continue
            k = len(_cut_of(g, side))
            if k < best:
                best, best_side = k, side
    if best_side is None:
        if pairs == 0:
            return ConnectivityResult(None)
        raise StructureError("disjoint cycles found but no cut recorded")
    return _result(g, best_side)


# -- isomorphism --------------------------------------------------------


def _as_plain(m: Multipole) -> tuple[int, list[Counter]]:
    """Vertex count and multiplicity adjacency, with a pendant vertex per dangling edge."""
    n = m.vertex_count + len(m.danglings)
    adj = [Counter() for _ in range(n)]
    for u, v in m.links:
        adj[u][v] += 1
        if u != v:
            adj[v][u] += 1
    for i, (v, _) in enumerate(m.danglings):
        p = m.vertex_count + i
        adj[v][p] += 1
        adj[p][v] += 1
    return n, adj


def _refine(n: int, adj: list[Counter], init: list) -> list[int]:
    colors = init
    for _ in range(n):
        sig = [
            (colors[v], tuple(sorted((colors[w], k) for w, k in adj[v].items())))
            for v in range(n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new
    return colors


def _distances(n: int, adj: list[Counter]) -> list[list[int]]:
    out = []
    for r in range(n):
        dist = [-1] * n
        dist[r] = 0
        q = deque([r])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
        out.append(dist)
    return out


def _vertex_invariants(n: int, adj: list[Counter], dist: list[list[int]]) -> list[tuple]:
    mat = np.zeros((n, n), dtype=np.int64)
    for v, c in enumerate(adj):
        for w, k in c.items():
            mat[v, w] = k
    walks = []
    p = mat.copy()
    for _ in range(5):
        p = p @ mat
        walks.append(np.diagonal(p).tolist())
    return [
        (sum(adj[v].values()), adj[v][v], tuple(sorted(Counter(dist[v]).items())), tuple(w[v] for w in walks))
        for v in range(n)
    ]


def graph_invariant(g: Multipole) -> tuple:
    """Isomorphism-invariant fingerprint (equal for isomorphic multipoles)."""
    n, adj = _as_plain(g)
    inv = _vertex_invariants(n, adj, _distances(n, adj))
    return tuple(sorted(inv))


def are_isomorphic(g1: Multipole, g2: Multipole) -> bool:
    """Exact isomorphism test: invariant colouring, refinement, then backtracking.

    Vertices are coloured by degree, loops, distance histogram and closed-walk
    counts; the search keeps all pairwise distances consistent.  Multipoles
    are compared with each dangling edge turned into a pendant vertex;
    dangling labels and connectors are ignored.
    """
    n1, a1 = _as_plain(g1)
    n2, a2 = _as_plain(g2)
    if n1 != n2 or sum(sum(c.values()) for c in a1) != sum(sum(c.values()) for c in a2):
        return False
    d1, d2 = _distances(n1, a1), _distances(n2, a2)
    # refine both graphs jointly so colour ids are comparable
    n = n1 + n2
    adj = a1 + [Counter({w + n1: k for w, k in c.items()}) for c in a2]
    init = _vertex_invariants(n1, a1, d1) + _vertex_invariants(n2, a2, d2)
    colors = _refine(n, adj, init)
    c1, c2 = colors[:n1], colors[n1:]
    if sorted(c1) != sorted(c2):
        return False
    by_color: dict[int, list[int]] = {}
    for v in range(n2):
        by_color.setdefault(c2[v], []).append(v)
    # order g1 vertices: rarest colour first, then BFS so each vertex has mapped neighbours
    order: list[int] = []
    placed: set[int] = set()
    for start in sorted(range(n1), key=lambda v: (len(by_color[c1[v]]), v)):
        if start in placed:
            continue
        q = deque([start])
        placed.add(start)
        while q:
            u = q.popleft()
            order.append(u)
            for w in sorted(a1[u], key=lambda w: (len(by_color[c1[w]]), w)):
                if w not in placed:
                    placed.add(w)
                    q.append(w)
    fwd: dict[int, int] = {}
    used: set[int] = set()

    def consistent(u: int, x: int) -> bool:
        du, dx = d1[u], d2[x]
        for w, y in fwd.items():
            if du[w] != dx[y]:
                return False
            if du[w] == 1 and a1[u][w] != a2[x][y]:
                return False
        return a1[u][u] == a2[x][x]

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        for x in by_color[c1[u]]:
            if x in used or not consistent(u, x):
                continue
            fwd[u] = x
            used.add(x)
            if rec(i + 1):
                return True
            del fwd[u]
            used.discard(x)
        return False

    return rec(0)
