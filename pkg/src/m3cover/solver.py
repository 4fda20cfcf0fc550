"""Exact m3: brute force over triples of perfect matchings, and a min-plus
transfer-matrix DP around rings of blocks.

Uncovered weight inside a block is counted in half-units: an uncovered link
costs 2, an uncovered dangling edge 1 (it is shared with the neighbouring
block, which pays the other half).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .generators import FamilySpec, RingLayout, build_ring, family_blocks
from .matching import count_perfect_matchings, is_perfect_matching, mask_to_edges, matching_masks
from .multipole import Multipole, validate

__all__ = [
    "M3Error",
    "CapExceeded",
    "M3Result",
    "CoverProfile",
    "DEFAULT_CAP",
    "MAX_PROFILE_DANGLINGS",
    "m3_bruteforce",
    "block_profile",
    "m3_ring_dp",
    "m3",
    "assemble_cover",
    "uncovered_half_units",
    "format_ratio",
]

DEFAULT_CAP = 5000
MAX_PROFILE_DANGLINGS = 6
_INF = 1 << 40


class M3Error(ValueError):
    pass


class CapExceeded(M3Error):
    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} perfect matchings exceed the cap of {cap}; use the ring DP or raise the cap")
        self.count = count
        self.cap = cap


def format_ratio(covered: int, total: int) -> str:
    """``"27/30 = 9/10"``, or just ``"12/15 = 4/5"``; never a decimal."""
    r = Fraction(covered, total)
    raw = f"{covered}/{total}"
    red = f"{r.numerator}/{r.denominator}"
    return raw if raw == red else f"{raw} = {red}"


@dataclass(frozen=True)
class M3Result:
    covered: int
    total: int
    witness: tuple[int, int, int]
    method: str
    matchings: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def value(self) -> Fraction:
        return Fraction(self.covered, self.total)

    @property
    def uncovered(self) -> int:
        return self.total - self.covered

    def ratio(self) -> str:
        return format_ratio(self.covered, self.total)

    def check_witness(self, g: Multipole) -> bool:
        """Each witness member is a perfect matching and their union covers ``covered`` edges."""
        if not all(is_perfect_matching(g, m) for m in self.witness):
            return False
        union = self.witness[0] | self.witness[1] | self.witness[2]
        return union.bit_count() == self.covered


def m3_bruteforce(g: Multipole, cap: int | None = DEFAULT_CAP) -> M3Result:
    """Maximum union of three perfect matchings (unordered, repetition allowed)."""
    if not g.is_graph:
        raise M3Error("m3 is defined for graphs without dangling edges")
    if validate(g):
        raise M3Error("not a cubic graph: " + "; ".join(validate(g)))
    count = count_perfect_matchings(g)
    if cap is not None and count > cap:
        raise CapExceeded(count, cap)
    masks = matching_masks(g)
    if not masks:
        raise M3Error("graph has no perfect matching")
    best, i, j, k = kernels.best_triple(masks, g.edge_count, g.vertex_count // 2)
    return M3Result(best, g.edge_count, (masks[i], masks[j], masks[k]), "brute", len(masks))


# -- block profiles ------------------------------------------------------


@dataclass(frozen=True)
class CoverProfile:
    """Minimum uncovered half-units of a block for every boundary state.

    A boundary state gives, per dangling edge (declaration order), the set of
    matching labels 1..3 containing it; it is encoded as an int with three
    bits per dangling edge (bit ``3*d + r`` set when matching ``r+1``
    contains dangling edge ``d``).  Unreachable states are absent.
    """

    block: Multipole
    matchings: tuple[int, ...]
    weights: dict[int, int]
    witnesses: dict[int, tuple[int, int, int]]

    @property
    def labels(self) -> list[str]:
        return self.block.dangling_labels()

    def decode(self, state: int) -> tuple[frozenset[int], ...]:
        return tuple(
            frozenset(r + 1 for r in range(3) if state >> (3 * d + r) & 1)
            for d in range(len(self.block.danglings))
        )

    def encode(self, memberships: Sequence[Sequence[int]]) -> int:
        s = 0
        for d, mem in enumerate(memberships):
            for r in mem:
                s |= 1 << (3 * d + r - 1)
        return s

    def minimum(self) -> int:
        return min(self.weights.values())

    def uncovered_danglings(self, state: int) -> int:
        return sum(1 for d in range(len(self.block.danglings)) if not state >> (3 * d) & 7)

    def uncovered_links(self, state: int) -> int:
        return (self.weights[state] - self.uncovered_danglings(state)) // 2

    def witness_masks(self, state: int) -> tuple[int, int, int]:
        i, j, k = self.witnesses[state]
        return self.matchings[i], self.matchings[j], self.matchings[k]


def uncovered_half_units(m: Multipole, triple: Sequence[int]) -> int:
    union = triple[0] | triple[1] | triple[2]
    links = ((1 << m.link_count) - 1) & union
    dang = union >> m.link_count
    return 2 * (m.link_count - links.bit_count()) + (len(m.danglings) - dang.bit_count())


def block_profile(m: Multipole) -> CoverProfile:
    d = len(m.danglings)
    if d > MAX_PROFILE_DANGLINGS:
        raise M3Error(f"{d} dangling edges exceed the profile bound of {MAX_PROFILE_DANGLINGS}")
    if validate(m):
        raise M3Error("invalid block: " + "; ".join(validate(m)))
    masks = matching_masks(m)
    if not masks:
        raise M3Error(f"{m!r} has no perfect matching")
    ids = list(range(m.link_count, m.edge_count))
    weight, wit = kernels.triple_profile(masks, m.link_count, ids, m.edge_count)
    reach = np.nonzero(weight < kernels._pykernels.INF)[0]
    weights = {int(s): int(weight[s]) for s in reach}
    witnesses = {int(s): (int(wit[s, 0]), int(wit[s, 1]), int(wit[s, 2])) for s in reach}
    return CoverProfile(m, tuple(masks), weights, witnesses)


# -- ring DP -------------------------------------------------------------


def _transfer(profile: CoverProfile) -> tuple[np.ndarray, np.ndarray]:
    """Matrix over (in-state, out-state) and the profile state realising each entry."""
    blk = profile.block
    pos = {lab: d for d, lab in enumerate(blk.dangling_labels())}
    cin, cout = blk.connectors
    w = len(cin)
    size = 1 << (3 * w)
    mat = np.full((size, size), _INF, dtype=np.int64)
    arg = np.full((size, size), -1, dtype=np.int64)
    for state, wt in profile.weights.items():
        s_in = sum(((state >> (3 * pos[lab])) & 7) << (3 * j) for j, lab in enumerate(cin))
        s_out = sum(((state >> (3 * pos[lab])) & 7) << (3 * j) for j, lab in enumerate(cout))
        if wt < mat[s_in, s_out]:
            mat[s_in, s_out] = wt
            arg[s_in, s_out] = state
    return mat, arg


def _minplus(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    tot = a[:, :, None] + b[None, :, :]
    idx = np.argmin(tot, axis=1)
    val = np.take_along_axis(tot, idx[:, None, :], axis=1)[:, 0, :]
    return np.minimum(val, _INF), idx


def assemble_cover(layout: RingLayout, block_triples: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Map per-block matching triples onto the ring graph's edge ids."""
    out = [0, 0, 0]
    for i, triple in enumerate(block_triples):
        emap = layout.edge_map[i]
        for r in range(3):
            for e in mask_to_edges(triple[r]):
                out[r] |= 1 << emap[e]
    return out[0], out[1], out[2]


def m3_ring_dp(ring: FamilySpec | RingLayout | Sequence[Multipole]) -> M3Result:
    """m3 of a ring of blocks by min-plus transfer matrices over boundary states."""
    if isinstance(ring, FamilySpec):
        layout = build_ring(family_blocks(ring), name=ring.label())
    elif isinstance(ring, RingLayout):
        layout = ring
    else:
        layout = build_ring(list(ring))
    blocks = layout.blocks
    widths = {len(c) for b in blocks for c in b.connectors}
    if len(widths) != 1:
        raise M3Error(f"interface widths differ around the ring: {sorted(widths)}")
    for b in blocks:
        if sum(len(c) for c in b.connectors) != len(b.danglings):
            raise M3Error(f"{b!r} has dangling edges outside its connectors")
    cache: dict[Multipole, tuple[CoverProfile, np.ndarray, np.ndarray]] = {}
    mats = []
    for b in blocks:
        if b not in cache:
            prof = block_profile(b)
            cache[b] = (prof, *_transfer(prof))
        mats.append(cache[b])

    acc = mats[0][1].copy()
    backs = []
    for _, mat, _ in mats[1:]:
        acc, idx = _minplus(acc, mat)
        backs.append(idx)
    diag = np.diagonal(acc)
    start = int(np.argmin(diag))
    half = int(diag[start])
    if half >= _INF:
        raise M3Error("no triple of perfect matchings is consistent around the ring")
    if half % 2:
        raise M3Error("odd half-unit total around a closed ring")
    # walk back: states[i] is the interface state leaving block i
    n = len(blocks)
    states = [0] * n
    states[n - 1] = start
    for i in range(n - 1, 0, -1):
        states[i - 1] = int(backs[i - 1][start, states[i]])
    triples = []
    for i in range(n):
        prof, _, arg = mats[i]
        s_in = states[i - 1] if i > 0 else start
        pstate = int(arg[s_in, states[i]])
        triples.append(prof.witness_masks(pstate))
    witness = assemble_cover(layout, triples)
    g = layout.graph
    covered = g.edge_count - half // 2
    res = M3Result(covered, g.edge_count, witness, "dp", extra={"blocks": n, "half_units": half})
    if not res.check_witness(g):
        raise M3Error("DP witness failed re-validation")
    return res


def m3(
    target: Multipole | FamilySpec | RingLayout,
    method: str = "auto",
    cap: int | None = DEFAULT_CAP,
    cross_check: bool = False,
) -> M3Result:
    """Dispatch between brute force and the ring DP.

    ``auto`` runs the DP when a ring structure is supplied and brute force
    otherwise (subject to ``cap``).  With ``cross_check`` both run and must agree.
    """
    if method not in ("auto", "brute", "dp"):
        raise M3Error(f"unknown method {method!r}")
    ring: FamilySpec | RingLayout | None = None
    if isinstance(target, FamilySpec):
        ring = target
        graph = build_ring(family_blocks(target), name=target.label()).graph
    elif isinstance(target, RingLayout):
        ring, graph = target, target.graph
    else:
        graph = target
    if method == "dp" or (method == "auto" and ring is not None):
        if ring is None:
            raise M3Error("the DP needs a ring structure (family spec or block ring)")
        res = m3_ring_dp(ring)
        if cross_check:
            brute = m3_bruteforce(graph, cap)
            if brute.value != res.value or brute.covered != res.covered:
                raise M3Error(f"cross-check mismatch: dp {res.ratio()} vs brute {brute.ratio()}")
            res = M3Result(res.covered, res.total, res.witness, "dp+brute", brute.matchings, res.extra)
        return res
    res = m3_bruteforce(graph, cap)
    if cross_check:
        if ring is None:
            raise M3Error("cross-check needs a ring structure for the DP")
        dp = m3_ring_dp(ring)
        if dp.covered != res.covered:
            raise M3Error(f"cross-check mismatch: brute {res.ratio()} vs dp {dp.ratio()}")
        res = M3Result(res.covered, res.total, res.witness, "brute+dp", res.matchings, dp.extra)
    return res
