"""Invariants checked on random inputs."""

import random

import networkx as nx
from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_matchings
from m3cover.generators import FamilySpec, build_family, i_extension, predicted_m3
from m3cover.graph6 import decode_graph6, encode_graph6
from m3cover.matching import count_perfect_matchings, is_3_edge_colorable, matching_masks
from m3cover.multipole import Multipole, cut_edge, emit_multipole_text, join_self, parse_multipole_text, validate
from m3cover.solver import block_profile, m3_bruteforce, m3_ring_dp, uncovered_half_units
from m3cover.structure import (
    are_isomorphic,
    cyclic_connectivity_oracle,
    cyclic_edge_connectivity,
    girth,
    is_cycle_separating,
    shortest_cycle_through,
)


def _random_cubic(n, seed):
    G = nx.random_regular_graph(3, n, seed=seed)
    return Multipole(n, tuple(G.edges()), name=f"rr{n}_{seed}")


def _relabel(g, seed):
    perm = list(range(g.vertex_count))
    random.Random(seed).shuffle(perm)
    return Multipole(g.vertex_count, tuple((perm[u], perm[v]) for u, v in g.links))


cubic = st.builds(_random_cubic, st.sampled_from([4, 6, 8, 10, 12, 14, 16]), st.integers(0, 10**6))
small_cubic = st.builds(_random_cubic, st.sampled_from([4, 6, 8]), st.integers(0, 10**6))
seeds = st.integers(0, 10**6)


@given(small_cubic)
def test_matchings_match_subset_oracle(g):
    assert matching_masks(g) == brute_matchings(g)


@given(cubic, seeds)
def test_m3_invariant_under_relabelling(g, seed):
    h = _relabel(g, seed)
    assert count_perfect_matchings(g) == count_perfect_matchings(h)
    if count_perfect_matchings(g) <= 2000:
        a, b = m3_bruteforce(g), m3_bruteforce(h)
        assert a.covered == b.covered
        assert a.check_witness(g) and b.check_witness(h)


@given(cubic)
def test_m3_is_one_exactly_when_colourable(g):
    if count_perfect_matchings(g) <= 2000:
        assert (m3_bruteforce(g).covered == g.edge_count) == is_3_edge_colorable(g)


@given(cubic)
def test_graph6_and_text_round_trips(g):
    assert decode_graph6(encode_graph6(g)).links == g.links
    assert parse_multipole_text(emit_multipole_text(g)) == g


@given(cubic, st.data())
def test_cut_then_join_restores_graph(g, data):
    e = data.draw(st.integers(0, g.edge_count - 1))
    cut = cut_edge(g, e)
    assert not validate(cut)
    assert join_self(cut, 0, 1).links == g.links


@given(st.integers(1, 3), st.integers(0, 3), seeds)
def test_dp_formula_independent_of_order(a, b, seed):
    order = list("A" * a + "B" * b)
    random.Random(seed).shuffle(order)
    for k in (2, 4):
        spec = FamilySpec(k, a, b, "".join(order))
        res = m3_ring_dp(spec)
        assert res.value == predicted_m3(k, a, b)
        assert res.check_witness(build_family(spec))


@given(st.integers(1, 2), st.integers(0, 2), st.sampled_from([2, 4]))
def test_dp_matches_bruteforce_when_small(a, b, k):
    spec = FamilySpec(k, a, b)
    g = build_family(spec)
    if count_perfect_matchings(g) <= 3000:
        assert m3_bruteforce(g, cap=None).covered == m3_ring_dp(spec).covered


@given(cubic, seeds)
def test_cut_edge_profiles_are_consistent(g, seed):
    e = random.Random(seed).randrange(g.edge_count)
    pole = cut_edge(g, e)
    prof = block_profile(pole)
    for s, w in prof.weights.items():
        assert uncovered_half_units(pole, prof.witness_masks(s)) == w
    # closing the pole: both halves of the cut edge must agree on membership
    closed = min(w for s, w in prof.weights.items() if (s & 7) == (s >> 3 & 7))
    if count_perfect_matchings(g) <= 2000:
        assert g.edge_count - closed // 2 == m3_bruteforce(g).covered


@given(cubic)
def test_connectivity_algorithm_matches_oracle(g):
    fast, slow = cyclic_edge_connectivity(g), cyclic_connectivity_oracle(g)
    assert fast.value == slow.value
    if fast.value is not None:
        assert is_cycle_separating(g, fast.witness_sides[0])
        assert len(fast.witness_cut) == fast.value


@given(st.builds(_random_cubic, st.sampled_from([4, 6, 8, 10, 12]), seeds), st.data())
def test_i_extension_bound(g, data):
    e1 = data.draw(st.integers(0, g.edge_count - 1))
    e2 = data.draw(st.integers(e1, g.edge_count - 1))
    h = i_extension(g, e1, e2)
    n = g.vertex_count
    sc = shortest_cycle_through(h, h.links.index((n, n + 1)))
    base = cyclic_connectivity_oracle(g).as_number()
    assert cyclic_connectivity_oracle(h).as_number() >= min(base, sc)


@given(cubic, seeds)
def test_isomorphism_and_girth_under_relabelling(g, seed):
    h = _relabel(g, seed)
    assert are_isomorphic(g, h)
    assert girth(g) == girth(h)
