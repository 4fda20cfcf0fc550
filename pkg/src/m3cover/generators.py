"""Gadgets and graph families: Petersen, K4, the 2-poles A and B, the Blanuša
block, the (2,2)-poles A' and B', and circular compositions of them.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import kernels
from .matching import is_3_edge_colorable, matching_masks
from .multipole import Multipole, MultipoleError, cut_edge, induced_multipole, join, join_self, validate
from .structure import are_isomorphic, girth, graph_invariant, is_connected

__all__ = [
    "ConstructionError",
    "FamilySpec",
    "RingLayout",
    "petersen",
    "k4",
    "prism",
    "pole_a",
    "pole_b",
    "blanusa_block",
    "pole_b_prime",
    "pole_a_prime",
    "a_prime_parts",
    "family_blocks",
    "build_ring",
    "build_family",
    "params_for_fraction",
    "predicted_m3",
    "i_extension",
    "cubic_graphs",
    "flower_snark",
    "dot_product",
    "blanusa_snark",
]


class ConstructionError(ValueError):
    """A generator produced (or was asked for) something invalid."""


def petersen() -> Multipole:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(i + 5, (i + 2) % 5 + 5) for i in range(5)]
    return Multipole(10, tuple(outer + spokes + inner), name="petersen")


def k4() -> Multipole:
    return Multipole(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)), name="K4")


def prism() -> Multipole:
    """Triangular prism."""
    return Multipole(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)), name="prism")


def pole_a() -> Multipole:
    g = petersen()
    return cut_edge(g, g.link_id(0, 1), ("a0", "a1")).renamed("A")


def pole_b(g: Multipole | None = None, e: int | None = None) -> Multipole:
    """2-pole cut from a 3-edge-colourable cubic graph (default K4, first edge)."""
    g = k4() if g is None else g
    if not g.is_graph or validate(g):
        raise ConstructionError("pole B needs a cubic graph")
    if not is_3_edge_colorable(g):
        raise ConstructionError(f"{g.name or 'graph'} is not 3-edge-colourable")
    return cut_edge(g, 0 if e is None else e, ("b0", "b1")).renamed("B")


def _petersen_minus_adjacent() -> Multipole:
    g = petersen()
    return induced_multipole(g, [v for v in range(10) if v not in (0, 1)])


@lru_cache(maxsize=None)
def blanusa_block() -> Multipole:
    """8-cycle u0..u7 with chords u1u5, u3u7; dangling f1..f4 at u0, u2, u4, u6."""
    cycle = [(i, (i + 1) % 8) for i in range(8)]
    m = Multipole(
        8,
        tuple(cycle + [(1, 5), (3, 7)]),
        ((0, "f1"), (2, "f2"), (4, "f3"), (6, "f4")),
        name="blanusa",
    )
    if validate(m) or not are_isomorphic(m, _petersen_minus_adjacent()):
        raise ConstructionError("Blanuša block is not Petersen minus two adjacent vertices")
    return m


def pole_b_prime() -> Multipole:
    b = blanusa_block()
    return Multipole(b.vertex_count, b.links, b.danglings, (("f1", "f4"), ("f3", "f2")), "B'")


# A' on v0..v19: H1 = v2..v9, H2 = v10..v17, plus v0, v1, v18, v19.
_A_PRIME_H1 = [(2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 2), (3, 7), (5, 9)]
_A_PRIME_H2 = [(10, 11), (11, 12), (12, 13), (13, 14), (14, 15), (15, 16), (16, 17), (17, 10), (11, 15), (13, 17)]
_A_PRIME_EXTRA = [(0, 1), (0, 4), (0, 14), (1, 2), (8, 10), (18, 19), (12, 19), (16, 18)]


def _a_prime_raw() -> Multipole:
    return Multipole(
        20,
        tuple(_A_PRIME_H1 + _A_PRIME_H2 + _A_PRIME_EXTRA),
        ((1, "v1"), (6, "v6"), (18, "v18"), (19, "v19")),
        (("v1", "v6"), ("v18", "v19")),
        "A'",
    )


def a_prime_parts() -> tuple[Multipole, Multipole]:
    """The two Blanuša blocks H1, H2 inside A' as sub-multipoles."""
    m = _a_prime_raw()
    return induced_multipole(m, list(range(2, 10)), "H1"), induced_multipole(m, list(range(10, 18)), "H2")


def _check_a_prime(m: Multipole) -> list[str]:
    failures = []
    if validate(m):
        failures.append("not a valid multipole: " + "; ".join(validate(m)))
    if girth(m) != 5:
        failures.append(f"girth {girth(m)} != 5")
    five = [(2, 3), (3, 7), (7, 8), (8, 9), (9, 2)]
    if not all((min(e), max(e)) in m.links for e in five):
        failures.append("5-cycle v2v3v7v8v9 missing")
    for h in a_prime_parts():
        if not are_isomorphic(h, blanusa_block()):
            failures.append(f"{h.name} is not a Blanuša block")
    if is_3_edge_colorable(m):
        failures.append("A' is 3-edge-colourable")
    elif _min_uncovered_half_units(m) != 6:
        failures.append("some triple of perfect matchings leaves fewer than 6 uncovered half-units")
    return failures


def _min_uncovered_half_units(m: Multipole) -> int:
    masks = matching_masks(m)
    weight, _ = kernels.triple_profile(masks, m.link_count, range(m.link_count, m.edge_count), m.edge_count)
    return int(weight.min())


@lru_cache(maxsize=None)
def pole_a_prime() -> Multipole:
    """The (2,2)-pole A' built from two Blanuša blocks and four extra vertices.

    Connector 0 is (v1, v6) and connector 1 is (v18, v19).  Construction
    fails unless it is cubic with girth 5 and the 5-cycle v2v3v7v8v9, both
    halves are Blanuša blocks, it is not 3-edge-colourable, and every triple
    of its perfect matchings leaves at least 6 uncovered half-units.
    """
    m = _a_prime_raw()
    failures = _check_a_prime(m)
    if failures:
        raise ConstructionError("A' reconstruction rejected: " + "; ".join(failures))
    return m


# -- families ------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """Circular composition of ``a`` A-type and ``b`` B-type blocks.

    ``k`` selects the flavour: 2 uses the 2-poles A and B, 4 uses A' and B'.
    ``order`` arranges the blocks around the ring; ``scale`` repeats the
    arrangement, giving the family member with parameters (scale*a, scale*b).
    """

    k: int
    a: int
    b: int
    order: str | None = None
    scale: int = 1

    def __post_init__(self) -> None:
        if self.k not in (2, 4):
            raise ConstructionError(f"k must be 2 or 4, got {self.k}")
        if self.a < 1 or self.b < 0:
            raise ConstructionError(f"need a >= 1 and b >= 0, got a={self.a}, b={self.b}")
        if self.scale < 1:
            raise ConstructionError("scale must be positive")
        if self.order is not None:
            if set(self.order) - {"A", "B"} or self.order.count("A") != self.a or self.order.count("B") != self.b:
                raise ConstructionError(f"order {self.order!r} does not contain {self.a} A's and {self.b} B's")

    @property
    def arrangement(self) -> str:
        base = self.order if self.order is not None else "A" * self.a + "B" * self.b
        return base * self.scale

    @property
    def total_a(self) -> int:
        return self.a * self.scale

    @property
    def total_b(self) -> int:
        return self.b * self.scale

    @property
    def edge_count(self) -> int:
        per_a, per_b = (15, 6) if self.k == 2 else (30, 12)
        return per_a * self.total_a + per_b * self.total_b

    def label(self) -> str:
        head = "G" if self.k == 2 else "G4"
        return f"{head}_{{{self.total_a},{self.total_b}}}[{self.arrangement}]"


def family_blocks(spec: FamilySpec) -> list[Multipole]:
    a_block, b_block = (pole_a(), pole_b()) if spec.k == 2 else (pole_a_prime(), pole_b_prime())
    return [a_block if ch == "A" else b_block for ch in spec.arrangement]


@dataclass(frozen=True)
class RingLayout:
    """Where each block's edges ended up in a ring graph.

    ``edge_map[i][e]`` is the graph edge id of block ``i``'s edge ``e``; a
    block's dangling edge maps to the link it was fused into.
    """

    graph: Multipole
    blocks: tuple[Multipole, ...]
    offsets: tuple[int, ...]
    edge_map: tuple[tuple[int, ...], ...]


def build_ring(blocks: Sequence[Multipole], name: str = "") -> RingLayout:
    """Join blocks in a circle: connector 1 of each block to connector 0 of the next."""
    if not blocks:
        raise ConstructionError("empty ring")
    for blk in blocks:
        if len(blk.connectors) != 2 or len(blk.connectors[0]) != len(blk.connectors[1]):
            raise ConstructionError(f"{blk!r} is not a ring block with two equal-width connectors")
    acc = blocks[0]
    for blk in blocks[1:]:
        if blk is acc:
            blk = replace(blk)
        try:
            acc = join(acc, len(acc.connectors) - 1, blk, 0)
        except MultipoleError as exc:
            raise ConstructionError(str(exc)) from exc
    try:
        g = join_self(acc, 1, 0)
    except MultipoleError as exc:
        raise ConstructionError(str(exc)) from exc
    g = Multipole(g.vertex_count, g.links, name=name)

    offsets = []
    off = 0
    for blk in blocks:
        offsets.append(off)
        off += blk.vertex_count
    slots: dict[tuple[int, int], list[int]] = {}
    for e, lk in enumerate(g.links):
        slots.setdefault(lk, []).append(e)
    taken: dict[tuple[int, int], int] = {}

    def claim(u: int, v: int) -> int:
        key = (min(u, v), max(u, v))
        i = taken.get(key, 0)
        ids = slots.get(key, [])
        if i >= len(ids):
            raise ConstructionError(f"ring layout lost edge {key}")
        taken[key] = i + 1
        return ids[i]

    n = len(blocks)
    fused: dict[tuple[int, str], int] = {}
    for i, blk in enumerate(blocks):
        nxt = blocks[(i + 1) % n]
        for lab_out, lab_in in zip(blk.connectors[1], nxt.connectors[0]):
            u = offsets[i] + blk.danglings[blk.dangling_edge(lab_out) - blk.link_count][0]
            v = offsets[(i + 1) % n] + nxt.danglings[nxt.dangling_edge(lab_in) - nxt.link_count][0]
            e = claim(u, v)
            fused[(i, lab_out)] = e
            fused[((i + 1) % n, lab_in)] = e
    maps = []
    for i, blk in enumerate(blocks):
        row = [claim(offsets[i] + u, offsets[i] + v) for u, v in blk.links]
        row += [fused[(i, lab)] for _, lab in blk.danglings]
        maps.append(tuple(row))
    if sum(taken.values()) != len(g.links):
        raise ConstructionError("ring layout does not account for every edge")
    return RingLayout(g, tuple(blocks), tuple(offsets), tuple(maps))


def build_family(spec: FamilySpec) -> Multipole:
    layout = build_ring(family_blocks(spec), name=spec.label())
    g = layout.graph
    if len(g.links) != spec.edge_count:
        raise ConstructionError(f"{spec.label()} has {len(g.links)} edges, expected {spec.edge_count}")
    if validate(g) or len(set(g.links)) != len(g.links) or any(u == v for u, v in g.links):
        raise ConstructionError(f"{spec.label()} is not a simple cubic graph")
    if not is_connected(g):
        raise ConstructionError(f"{spec.label()} is disconnected")
    return g


def params_for_fraction(k: int, p: int, q: int) -> tuple[int, int]:
    """Block counts (a, b) whose family member has m3 equal to p/q."""
    if q <= 0 or p <= 0:
        raise ConstructionError("p and q must be positive")
    r = Fraction(p, q)
    low = Fraction(4, 5) if k == 2 else Fraction(9, 10)
    if k not in (2, 4):
        raise ConstructionError(f"k must be 2 or 4, got {k}")
    if not low <= r < 1:
        raise ConstructionError(f"{p}/{q} is outside [{low}, 1)")
    if k == 2:
        return 2 * q - 2 * p, 5 * p - 4 * q
    return 4 * q - 4 * p, 10 * p - 9 * q


def predicted_m3(k: int, a: int, b: int) -> Fraction:
    """Closed-form m3 of the family member, as an unreduced covered/total pair's value."""
    if k == 2:
        return Fraction(4 * a + 2 * b, 5 * a + 2 * b)
    return Fraction(9 * a + 4 * b, 10 * a + 4 * b)


def flower_snark(k: int) -> Multipole:
    """Flower snark J_k (odd k >= 3) on 4k vertices.

    Star centres a_i = i, b_i = k+i, c_i = 2k+i, d_i = 3k+i; the b_i form a
    k-cycle and the c_i, d_i a single 2k-cycle.
    """
    if k < 3 or k % 2 == 0:
        raise ConstructionError("flower snarks need an odd k >= 3")
    edges = []
    for i in range(k):
        edges += [(i, k + i), (i, 2 * k + i), (i, 3 * k + i), (k + i, k + (i + 1) % k)]
    ring = [2 * k + i for i in range(k)] + [3 * k + i for i in range(k)]
    edges += [(ring[i], ring[(i + 1) % (2 * k)]) for i in range(2 * k)]
    return Multipole(4 * k, tuple(edges), name=f"J{k}")


def dot_product(g1: Multipole, e1: int, e2: int, g2: Multipole, x: int, y: int) -> Multipole:
    """Remove disjoint links e1 = ab, e2 = cd from g1 and adjacent vertices x, y
    from g2, then join a, b to x's other neighbours and c, d to y's.
    """
    if not (g1.is_graph and g2.is_graph) or validate(g1) or validate(g2):
        raise ConstructionError("dot product needs two cubic graphs")
    (a, b), (c, d) = g1.links[e1], g1.links[e2]
    if len({a, b, c, d}) < 4:
        raise ConstructionError("the two links of g1 must be disjoint")
    adj = g2.adjacency()
    if y not in adj[x] or len(set(adj[x])) < 3:
        raise ConstructionError("x and y must be adjacent through a single link")
    xs = [w for w in adj[x] if w != y]
    ys = [w for w in adj[y] if w != x]
    keep = [v for v in range(g2.vertex_count) if v not in (x, y)]
    off = {v: g1.vertex_count + i for i, v in enumerate(keep)}
    links = [lk for i, lk in enumerate(g1.links) if i not in (e1, e2)]
    links += [(off[u], off[v]) for u, v in g2.links if u in off and v in off]
    links += [(a, off[xs[0]]), (b, off[xs[1]]), (c, off[ys[0]]), (d, off[ys[1]])]
    return Multipole(g1.vertex_count + len(keep), tuple(links), name=f"{g1.name}.{g2.name}")


def blanusa_snark(which: int = 1) -> Multipole:
    """The two 18-vertex Blanuša snarks as dot products of two Petersen graphs.

    ``which=1`` has 8 automorphisms, ``which=2`` has 4.
    """
    g = petersen()
    other = {1: (3, 8), 2: (2, 3)}.get(which)
    if other is None:
        raise ConstructionError("which must be 1 or 2")
    return dot_product(g, g.link_id(0, 1), g.link_id(*other), g, 0, 1).renamed(f"blanusa{which}")


def i_extension(g: Multipole, e1: int, e2: int) -> Multipole:
    """Subdivide links e1 and e2 (possibly the same) and join the two new vertices.

    The new vertices are ``n`` (on e1) and ``n+1`` (on e2); the added link
    is ``(n, n+1)``.
    """
    if not (g.is_link(e1) and g.is_link(e2)):
        raise ConstructionError("I-extension needs two links")
    n = g.vertex_count
    x, y = n, n + 1
    links = [lk for i, lk in enumerate(g.links) if i not in (e1, e2)]
    u1, v1 = g.links[e1]
    if e1 == e2:
        links += [(u1, x), (x, y), (y, v1)]
    else:
        u2, v2 = g.links[e2]
        links += [(u1, x), (x, v1), (u2, y), (y, v2)]
    links.append((x, y))
    return Multipole(n + 2, tuple(links), g.danglings, g.connectors, g.name)


@lru_cache(maxsize=None)
def cubic_graphs(n: int) -> tuple[Multipole, ...]:
    """All connected simple cubic graphs on ``n`` vertices, one per isomorphism class."""
    if n < 4 or n % 2:
        return ()
    deg = [0] * n
    edges: list[tuple[int, int]] = []
    adj = [set() for _ in range(n)]
    found: dict[tuple, list[Multipole]] = {}

    def rec(v: int, start: int) -> None:
        while v < n and deg[v] == 3:
            v += 1
            start = v + 1
        if v == n:
            g = Multipole(n, tuple(edges))
            if not is_connected(g):
                return
            bucket = found.setdefault(graph_invariant(g), [])
            if not any(are_isomorphic(g, h) for h in bucket):
                bucket.append(g)
            return
        fresh_seen = False
        for w in range(start, n):
            if deg[w] == 3 or w in adj[v]:
                continue
            if deg[w] == 0:
                # untouched vertices are interchangeable; try only the first
                if fresh_seen:
                    continue
                fresh_seen = True
            deg[v] += 1
            deg[w] += 1
            adj[v].add(w)
            adj[w].add(v)
            edges.append((v, w))
            rec(v, w + 1)
            edges.pop()
            adj[v].discard(w)
            adj[w].discard(v)
            deg[v] -= 1
            deg[w] -= 1

    rec(0, 1)
    out = [g for key in sorted(found) for g in found[key]]
    return tuple(g.renamed(f"cubic{n}_{i}") for i, g in enumerate(out))
