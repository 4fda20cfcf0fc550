from fractions import Fraction

import networkx as nx
import pytest

from conftest import to_nx
from m3cover.generators import (
    ConstructionError,
    FamilySpec,
    a_prime_parts,
    blanusa_block,
    blanusa_snark,
    build_family,
    build_ring,
    cubic_graphs,
    dot_product,
    family_blocks,
    flower_snark,
    i_extension,
    k4,
    params_for_fraction,
    petersen,
    pole_a,
    pole_a_prime,
    pole_b,
    pole_b_prime,
    predicted_m3,
)
from m3cover.matching import is_3_edge_colorable
from m3cover.multipole import validate
from m3cover.structure import girth, is_bridgeless


def test_petersen_is_petersen():
    assert nx.is_isomorphic(to_nx(petersen()), nx.petersen_graph())


def test_pole_shapes():
    a, b = pole_a(), pole_b()
    assert (a.vertex_count, a.link_count, len(a.danglings)) == (10, 14, 2)
    assert (b.vertex_count, b.link_count, len(b.danglings)) == (4, 5, 2)
    assert not validate(a) and not validate(b)


def test_pole_b_needs_colourable_graph():
    with pytest.raises(ConstructionError):
        pole_b(petersen())
    assert pole_b(k4(), 3).dangling_labels() == ["b0", "b1"]


def test_blanusa_block_is_petersen_minus_adjacent_pair():
    blk = blanusa_block()
    G = nx.petersen_graph()
    G.remove_nodes_from([0, 1])
    H = to_nx(blk)
    H.remove_nodes_from([n for n in H if isinstance(n, tuple)])
    assert nx.is_isomorphic(G, H)


def test_a_prime_gate():
    ap = pole_a_prime()
    assert ap.vertex_count == 20 and ap.link_count == 28
    assert ap.connectors == (("v1", "v6"), ("v18", "v19"))
    assert girth(ap) == 5
    assert not is_3_edge_colorable(ap)
    h1, h2 = a_prime_parts()
    for h in (h1, h2):
        assert nx.is_isomorphic(to_nx(h), to_nx(blanusa_block()))


def test_b_prime_connectors():
    bp = pole_b_prime()
    assert bp.connectors == (("f1", "f4"), ("f3", "f2"))


@pytest.mark.parametrize("k,a,b", [(2, 1, 0), (2, 1, 1), (2, 3, 2), (4, 1, 0), (4, 1, 1), (4, 2, 3)])
def test_family_counts(k, a, b):
    spec = FamilySpec(k, a, b)
    g = build_family(spec)
    per = (15, 6) if k == 2 else (30, 12)
    assert g.edge_count == per[0] * a + per[1] * b
    assert g.vertex_count * 3 == 2 * g.edge_count
    assert not validate(g)
    assert is_bridgeless(g)
    assert nx.is_connected(to_nx(g))


def test_scale_and_order():
    spec = FamilySpec(2, 1, 2, order="BAB", scale=3)
    assert spec.arrangement == "BABBABBAB"
    assert (spec.total_a, spec.total_b) == (3, 6)
    assert spec.label() == "G_{3,6}[BABBABBAB]"
    assert build_family(spec).edge_count == 15 * 3 + 6 * 6


@pytest.mark.parametrize("bad", [dict(a=0, b=1), dict(a=1, b=-1), dict(a=1, b=1, order="AAB"), dict(a=1, b=0, order="AX")])
def test_family_spec_errors(bad):
    with pytest.raises(ConstructionError):
        FamilySpec(2, **bad)


def test_ring_edge_map_covers_every_edge():
    spec = FamilySpec(4, 1, 2)
    layout = build_ring(family_blocks(spec))
    seen = set()
    for blk, emap in zip(layout.blocks, layout.edge_map):
        assert len(emap) == blk.edge_count
        seen.update(emap[: blk.link_count])
    assert seen <= set(range(layout.graph.edge_count))
    assert len(seen) == sum(b.link_count for b in layout.blocks)


@pytest.mark.parametrize(
    "k,p,q,ab",
    [(2, 4, 5, (2, 0)), (2, 5, 6, (2, 1)), (2, 9, 11, (4, 1)), (4, 9, 10, (4, 0)), (4, 11, 12, (4, 2)), (2, 6, 7, (2, 2))],
)
def test_params_for_fraction(k, p, q, ab):
    a, b = params_for_fraction(k, p, q)
    assert predicted_m3(k, a, b) == Fraction(p, q)
    assert (a, b) == ab


@pytest.mark.parametrize("k,p,q", [(2, 5, 5), (2, 3, 5), (4, 4, 5), (2, 0, 1), (3, 9, 10)])
def test_params_for_fraction_rejects(k, p, q):
    with pytest.raises(ConstructionError):
        params_for_fraction(k, p, q)


def test_cubic_graph_counts_match_known_sequence():
    assert [len(cubic_graphs(n)) for n in (4, 6, 8, 10)] == [1, 2, 5, 19]
    for g in cubic_graphs(8):
        assert not validate(g)


def test_cubic_graphs_pairwise_non_isomorphic():
    gs = [to_nx(g) for g in cubic_graphs(10)]
    for i in range(len(gs)):
        for j in range(i):
            assert not nx.is_isomorphic(gs[i], gs[j])


def test_i_extension_shape():
    g = k4()
    h = i_extension(g, 0, 5)
    assert h.vertex_count == 6 and (4, 5) in h.links
    assert not validate(h)
    same = i_extension(g, 0, 0)
    assert same.links.count((4, 5)) == 2


def test_flower_and_blanusa_snarks():
    for g in (flower_snark(5), blanusa_snark(1), blanusa_snark(2)):
        assert not validate(g)
        assert not is_3_edge_colorable(g)
        assert girth(g) == 5
    assert not nx.is_isomorphic(to_nx(blanusa_snark(1)), to_nx(blanusa_snark(2)))
    with pytest.raises(ConstructionError):
        flower_snark(4)
    g = petersen()
    with pytest.raises(ConstructionError):
        dot_product(g, 0, 1, g, 0, 1)


def test_pole_b_from_prism():
    from m3cover.generators import prism

    assert pole_b(prism()).link_count == 8


def test_single_a_ring_is_petersen():
    assert nx.is_isomorphic(to_nx(build_family(FamilySpec(2, 1, 0))), nx.petersen_graph())


def test_edge_counts_and_girth_over_ranges():
    for a in range(1, 4):
        for b in range(0, 4):
            g = build_family(FamilySpec(2, a, b))
            assert g.edge_count == 15 * a + 6 * b
    for a in range(1, 3):
        for b in range(0, 3):
            g = build_family(FamilySpec(4, a, b))
            assert g.edge_count == 30 * a + 12 * b
            assert girth(g) == 5
            assert is_bridgeless(g)
            assert len(set(g.links)) == len(g.links)


def test_a_prime_named_edges():
    ap = pole_a_prime()
    for e in [(18, 19), (12, 13), (16, 17), (12, 19), (16, 18), (13, 17), (0, 1), (0, 4), (4, 5), (5, 6)]:
        assert e in ap.links
    for e in [(2, 3), (3, 7), (7, 8), (8, 9), (2, 9)]:
        assert e in ap.links
