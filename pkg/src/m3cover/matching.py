"""Perfect matchings and proper 3-edge-colourings of multipoles.

Edge sets are Python ints used as bitmasks over edge ids.  A perfect
matching of a multipole is a set of links and dangling edges meeting every
vertex exactly once; loops never belong to a perfect matching.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Mapping

from .multipole import Multipole

__all__ = [
    "perfect_matchings",
    "count_perfect_matchings",
    "matching_masks",
    "is_perfect_matching",
    "edge_colorings",
    "is_3_edge_colorable",
    "mask_to_edges",
    "edges_to_mask",
]

# BoundaryConstraint: dangling label -> True (required in) / False (required out)
BoundaryConstraint = Mapping[str, bool]


def mask_to_edges(mask: int) -> tuple[int, ...]:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def edges_to_mask(edges) -> int:
    m = 0
    for e in edges:
        m |= 1 << e
    return m


def _edge_constraints(m: Multipole, constraint: BoundaryConstraint | None) -> tuple[int, int]:
    req_in = req_out = 0
    for label, inside in (constraint or {}).items():
        bit = 1 << m.dangling_edge(label)
        if inside:
            req_in |= bit
        else:
            req_out |= bit
    return req_in, req_out


def _edge_vertex_masks(m: Multipole) -> list[int]:
    out = []
    for e in range(m.edge_count):
        vm = 0
        for v in m.edge_ends(e):
            vm |= 1 << v
        out.append(vm)
    return out


def _options(m: Multipole) -> list[list[tuple[int, int]]]:
    """Per vertex: (edge id, vertex mask of the edge) for every non-loop edge."""
    vmask = _edge_vertex_masks(m)
    opts: list[list[tuple[int, int]]] = [[] for _ in range(m.vertex_count)]
    for v, inc in enumerate(m.incidence()):
        for e in sorted(set(inc)):
            ends = m.edge_ends(e)
            if len(ends) == 2 and ends[0] == ends[1]:
                continue
            opts[v].append((e, vmask[e]))
    return opts


def _enumerate(m: Multipole, req_in: int, req_out: int) -> list[int]:
    n = m.vertex_count
    full = (1 << n) - 1
    vmask = _edge_vertex_masks(m)
    covered = 0
    for e in range(m.edge_count):
        if req_in >> e & 1:
            if covered & vmask[e]:
                return []
            covered |= vmask[e]
    opts = _options(m)
    results: list[int] = []

    def rec(cov: int, chosen: int) -> None:
        if cov == full:
            results.append(chosen)
            return
        free = ~cov & full
        v = (free & -free).bit_length() - 1
        for e, vm in opts[v]:
            if req_out >> e & 1 or cov & vm:
                continue
            rec(cov | vm, chosen | (1 << e))

    rec(covered, req_in)
    results.sort(key=mask_to_edges)
    return results


def perfect_matchings(m: Multipole, constraint: BoundaryConstraint | None = None) -> Iterator[int]:
    """Yield every perfect matching of ``m`` satisfying ``constraint`` as an edge bitmask.

    Matchings come in lexicographic order of their sorted edge-id tuples.
    """
    req_in, req_out = _edge_constraints(m, constraint)
    yield from _enumerate(m, req_in, req_out)


def matching_masks(m: Multipole, constraint: BoundaryConstraint | None = None) -> list[int]:
    return list(perfect_matchings(m, constraint))


def count_perfect_matchings(m: Multipole, constraint: BoundaryConstraint | None = None) -> int:
    req_in, req_out = _edge_constraints(m, constraint)
    n = m.vertex_count
    full = (1 << n) - 1
    vmask = _edge_vertex_masks(m)
    start = 0
    for e in range(m.edge_count):
        if req_in >> e & 1:
            if start & vmask[e]:
                return 0
            start |= vmask[e]
    opts = [[vm for e, vm in row if not req_out >> e & 1 and not req_in >> e & 1] for row in _options(m)]

    @lru_cache(maxsize=None)
    def count(cov: int) -> int:
        if cov == full:
            return 1
        free = ~cov & full
        v = (free & -free).bit_length() - 1
        return sum(count(cov | vm) for vm in opts[v] if not cov & vm)

    return count(start)


def is_perfect_matching(m: Multipole, mask: int) -> bool:
    hits = [0] * m.vertex_count
    for e in mask_to_edges(mask):
        if e >= m.edge_count:
            return False
        ends = m.edge_ends(e)
        if len(ends) == 2 and ends[0] == ends[1]:
            return False
        for v in ends:
            hits[v] += 1
    return all(h == 1 for h in hits)


def edge_colorings(m: Multipole, fixed: Mapping[str, int] | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every proper 3-edge-colouring extending ``fixed`` (label -> colour 1..3).

    A colouring is a tuple indexed by edge id.  Colourings are built as
    ordered triples of perfect matchings partitioning the edge set.
    """
    fixed = dict(fixed or {})
    for lab, c in fixed.items():
        if c not in (1, 2, 3):
            raise ValueError(f"colour of {lab!r} must be 1, 2 or 3")
    per_class = [
        {lab: (c == k) for lab, c in fixed.items()} for k in (1, 2, 3)
    ]
    all_edges = (1 << m.edge_count) - 1
    firsts = matching_masks(m, per_class[0])
    seconds = matching_masks(m, per_class[1])
    thirds = set(matching_masks(m, per_class[2]))
    for m1 in firsts:
        for m2 in seconds:
            if m1 & m2:
                continue
            m3 = all_edges & ~(m1 | m2)
            if m3 in thirds:
                col = [0] * m.edge_count
                for k, mk in enumerate((m1, m2, m3), start=1):
                    for e in mask_to_edges(mk):
                        col[e] = k
                yield tuple(col)


def is_3_edge_colorable(m: Multipole) -> bool:
    if any(u == v for u, v in m.links):
        return False
    return next(edge_colorings(m), None) is not None
