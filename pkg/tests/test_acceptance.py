"""The ten acceptance criteria, exact (zero tolerance), one line of output each."""

import json
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from conftest import structure_corpus
from m3cover.cli import main
from m3cover.generators import (
    FamilySpec,
    blanusa_block,
    blanusa_snark,
    build_family,
    flower_snark,
    petersen,
    pole_a,
    pole_a_prime,
    pole_b,
    predicted_m3,
    params_for_fraction,
)
from m3cover.graph6 import encode_graph6
from m3cover.matching import edge_colorings, is_3_edge_colorable, is_perfect_matching
from m3cover.solver import block_profile, m3_bruteforce, m3_ring_dp, uncovered_half_units
from m3cover.structure import (
    ORACLE_MAX_VERTICES,
    cyclic_connectivity_oracle,
    cyclic_edge_connectivity,
    girth,
)
from m3cover.verify import check


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(n, title):
        t0 = time.perf_counter()
        status = "FAIL"
        try:
            yield
            status = "PASS"
        finally:
            with capsys.disabled():
                print(f"\n[acceptance {n:2d}] {status}  {title}  ({time.perf_counter() - t0:.2f}s)")

    return run


def test_c01_petersen(criterion):
    with criterion(1, "m3(Petersen) = 12/15 by brute force"):
        t0 = time.perf_counter()
        res = m3_bruteforce(petersen())
        assert (res.covered, res.total) == (12, 15)
        assert res.value == Fraction(4, 5)
        assert res.check_witness(petersen())
        assert time.perf_counter() - t0 < 1


def test_c02_pole_a(criterion):
    with criterion(2, "pole A: 6 half-units at the empty state and at covered-dangling states"):
        t0 = time.perf_counter()
        a = pole_a()
        prof = block_profile(a)
        assert prof.weights[0] == 6
        assert prof.uncovered_links(0) == 2 and prof.uncovered_danglings(0) == 2
        assert uncovered_half_units(a, prof.witness_masks(0)) == 6
        covered = [s for s in prof.weights if s]
        assert min(prof.weights[s] for s in covered) == 6
        best = [s for s in covered if prof.weights[s] == 6]
        for s in best:
            assert prof.uncovered_links(s) == 3 and prof.uncovered_danglings(s) == 0
            assert uncovered_half_units(a, prof.witness_masks(s)) == 6
        assert check("lemma-A2").verdict
        assert time.perf_counter() - t0 < 5


def test_c03_pole_b(criterion):
    with criterion(3, "pole B: a triple covers every edge"):
        t0 = time.perf_counter()
        b = pole_b()
        prof = block_profile(b)
        zero = [s for s, w in prof.weights.items() if w == 0]
        assert zero
        trip = prof.witness_masks(zero[0])
        assert all(is_perfect_matching(b, m) for m in trip)
        assert (trip[0] | trip[1] | trip[2]).bit_count() == b.edge_count
        assert time.perf_counter() - t0 < 1


def test_c04_pole_a_prime(criterion):
    with criterion(4, "pole A': minimum 6 half-units, both patterns witnessed"):
        t0 = time.perf_counter()
        ap = pole_a_prime()
        prof = block_profile(ap)
        assert prof.minimum() == 6
        patterns = {}
        for s, w in prof.weights.items():
            if w == 6:
                patterns.setdefault((prof.uncovered_links(s), prof.uncovered_danglings(s)), s)
        assert (3, 0) in patterns and (2, 2) in patterns
        for s in patterns.values():
            trip = prof.witness_masks(s)
            assert all(is_perfect_matching(ap, m) for m in trip)
            assert uncovered_half_units(ap, trip) == 6
        assert time.perf_counter() - t0 < 300


def test_c05_formulas(criterion):
    with criterion(5, "m3 of both families equals the closed formulas"):
        t0 = time.perf_counter()
        for a in (1, 2, 3):
            for b in (0, 1, 2):
                spec = FamilySpec(2, a, b)
                res = m3_ring_dp(spec)
                assert res.value == Fraction(4 * a + 2 * b, 5 * a + 2 * b)
                g = build_family(spec)
                assert res.check_witness(g)
                if g.edge_count <= 36:
                    assert m3_bruteforce(g).covered == res.covered
        for a, b in ((1, 0), (1, 1), (2, 0), (1, 2)):
            spec = FamilySpec(4, a, b)
            res = m3_ring_dp(spec)
            assert res.value == Fraction(9 * a + 4 * b, 10 * a + 4 * b)
            assert res.check_witness(build_family(spec))
            if (a, b) == (1, 0):
                assert m3_bruteforce(build_family(spec)).covered == res.covered == 27
        assert time.perf_counter() - t0 < 600


def test_c06_theorem_replication(criterion):
    cases = [(2, 4, 5), (2, 5, 6), (2, 9, 11), (4, 9, 10), (4, 11, 12)]
    with criterion(6, "generated families and their m=2 scalings hit p/q for all five targets"):
        for k, p, q in cases:
            a, b = params_for_fraction(k, p, q)
            assert predicted_m3(k, a, b) == Fraction(p, q)
            for scale in (1, 2):
                spec = FamilySpec(k, a, b, scale=scale)
                res = m3_ring_dp(spec)
                assert res.value == Fraction(p, q), (k, p, q, scale)
                assert res.check_witness(build_family(spec))


def test_c07_structure(criterion):
    with criterion(7, "girth and cyclic connectivity; algorithm agrees with oracle"):
        assert girth(build_family(FamilySpec(4, 1, 1))) == 5
        assert cyclic_connectivity_oracle(build_family(FamilySpec(2, 1, 1))).value == 2
        assert cyclic_connectivity_oracle(build_family(FamilySpec(4, 1, 0))).value == 4
        graphs = [g for g in structure_corpus() if g.vertex_count <= ORACLE_MAX_VERTICES]
        assert max(g.vertex_count for g in graphs) == 26
        for g in graphs:
            assert cyclic_edge_connectivity(g).value == cyclic_connectivity_oracle(g).value, g.name


def test_c08_blanusa_pairing(criterion):
    with criterion(8, "Blanuša block: f1~f3 and f2~f4 in every colouring"):
        t0 = time.perf_counter()
        blk = blanusa_block()
        f = {lab: blk.dangling_edge(lab) for lab in ("f1", "f2", "f3", "f4")}
        cols = list(edge_colorings(blk))
        assert cols
        for c in cols:
            assert c[f["f1"]] == c[f["f3"]]
            assert c[f["f2"]] == c[f["f4"]]
        assert any(len({c[e] for e in f.values()}) == 1 for c in cols)
        assert time.perf_counter() - t0 < 1


def test_c09_i_extension(criterion):
    with criterion(9, "I-extension bound on all cubic graphs up to 10 vertices"):
        rep = check("lemma-I", max_vertices=10)
        assert rep.verdict, rep.failures
        assert rep.evidence["violations"] == []
        assert rep.evidence["extensions_checked"] > 0


def test_c10_ingest(criterion, tmp_path, capsys):
    with criterion(10, "ingest of a snark list: exact m3 per graph, all below 1"):
        snarks = [petersen(), blanusa_snark(1), blanusa_snark(2), flower_snark(5), build_family(FamilySpec(2, 2, 1))]
        for g in snarks:
            assert g.vertex_count <= 26 and not is_3_edge_colorable(g)
        src = tmp_path / "snarks.g6"
        src.write_text("".join(encode_graph6(g).decode() + "\n" for g in snarks))
        rep = tmp_path / "report.jsonl"
        assert main(["ingest", "--input", str(src), "--report", str(rep), "--cap", "5000"]) == 0
        rows = [json.loads(line) for line in rep.read_text().splitlines()]
        body, summary = rows[:-1], rows[-1]
        assert summary["graphs"] == summary["solved"] == len(snarks)
        for g, row in zip(snarks, body):
            assert row["status"] == "ok"
            covered, total = map(int, row["m3"].split(" ")[0].split("/"))
            assert Fraction(covered, total) < 1
            assert covered == m3_bruteforce(g).covered and total == g.edge_count
            assert "not a snark" not in row["flags"]
        assert body[0]["m3"] == "12/15 = 4/5"
