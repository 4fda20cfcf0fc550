import pytest

from m3cover.generators import k4, petersen, pole_a, pole_b
from m3cover.multipole import (
    Multipole,
    MultipoleError,
    ParseError,
    cut_edge,
    disjoint_union,
    emit_multipole_text,
    induced_multipole,
    join,
    join_self,
    parse_multipole_text,
    validate,
)


def test_links_are_normalised_and_sorted():
    m = Multipole(3, ((2, 0), (1, 0), (2, 1)))
    assert m.links == ((0, 1), (0, 2), (1, 2))


def test_edge_ids_put_links_before_danglings():
    a = pole_a()
    assert a.link_count == 14
    assert a.edge_count == 16
    assert a.dangling_edge("a0") == 14
    assert a.dangling_edge("a1") == 15
    assert a.edge_ends(14) == (0,)
    assert a.is_dangling(15) and a.is_link(0)


def test_cut_edge_puts_smaller_endpoint_first():
    g = petersen()
    a = cut_edge(g, g.link_id(0, 1), ("x", "y"))
    assert a.danglings == ((0, "x"), (1, "y"))
    assert a.connectors == (("x",), ("y",))
    assert not validate(a)


def test_join_self_closes_cut():
    g = petersen()
    a = cut_edge(g, g.link_id(0, 1))
    back = join_self(a, 0, 1)
    assert back.links == g.links
    assert back.is_graph


def test_join_two_poles_gives_cubic_graph():
    a, b = pole_a(), pole_b()
    ab = join(a, 1, b, 0)
    assert ab.vertex_count == 14
    assert len(ab.danglings) == 2
    ring = join_self(ab, 0, 1)
    assert ring.is_graph
    assert not validate(ring)
    assert ring.edge_count == 21


def test_join_rejects_same_object_and_width_mismatch():
    a = pole_a()
    with pytest.raises(MultipoleError):
        join(a, 0, a, 1)
    wide = Multipole(2, ((0, 1),), ((0, "p"), (0, "q"), (1, "r"), (1, "s")), (("p", "q"), ("r",), ("s",)))
    with pytest.raises(MultipoleError):
        join(wide, 0, pole_b(), 0)


def test_join_permutation_swaps_pairing():
    # endpoints 0 and 1 on each side; vertices of the right copy become 2, 3
    left = Multipole(2, (), ((0, "p"), (1, "q")), (("p", "q"),))
    right = Multipole(2, (), ((0, "p"), (1, "q")), (("p", "q"),))
    assert join(left, 0, right, 0).links == ((0, 2), (1, 3))
    assert join(left, 0, right, 0, perm=(1, 0)).links == ((0, 3), (1, 2))
    with pytest.raises(MultipoleError):
        join(left, 0, right, 0, perm=(0, 0))
    with pytest.raises(MultipoleError):
        join(left, 1, right, 0)


def test_colliding_labels_get_suffix():
    u, rename = disjoint_union(pole_b(), pole_b())
    assert rename == {"b0": "b0.1", "b1": "b1.1"}
    assert u.dangling_labels() == ["b0", "b1", "b0.1", "b1.1"]


def test_validate_reports_problems():
    bad = Multipole(4, ((0, 1), (1, 2), (2, 3)))
    rep = validate(bad)
    assert rep
    assert any("degree" in p for p in rep)
    dup = Multipole(1, (), ((0, "x"), (0, "x"), (0, "y")))
    assert any("duplicate" in p for p in validate(dup))
    conn = Multipole(1, (), ((0, "x"), (0, "y"), (0, "z")), (("x", "nope"),))
    assert any("unknown" in p for p in validate(conn))
    assert not validate(k4())


def test_text_round_trip():
    a = pole_a()
    text = emit_multipole_text(a)
    back = parse_multipole_text(text)
    assert back == a
    assert back.name == "A"


def test_parse_several_blocks_and_comments():
    text = "# two blocks\n" + emit_multipole_text(pole_a()) + "\n" + emit_multipole_text(pole_b())
    out = parse_multipole_text(text)
    assert [m.name for m in out] == ["A", "B"]


@pytest.mark.parametrize(
    "text",
    [
        "vertices 2\n",
        "multipole x\nvertices 2\nlink 0\nend\n",
        "multipole x\nvertices 1\ndangle 0 a\ndangle 0 a\nend\n",
        "multipole x\nvertices 1\nconnector q\nend\n",
        "multipole x\nvertices 1\n",
        "multipole x\nfrobnicate\nend\n",
        "",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_multipole_text(text)


def test_induced_multipole_labels_leaving_edges():
    m = induced_multipole(petersen(), [v for v in range(10) if v not in (0, 1)])
    assert m.vertex_count == 8
    assert len(m.danglings) == 4
    assert {lab for _, lab in m.danglings} == {"4-0", "5-0", "2-1", "6-1"}
    assert not validate(m)
