import itertools
import os

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings

from m3cover.generators import (
    FamilySpec,
    blanusa_snark,
    build_family,
    cubic_graphs,
    flower_snark,
    k4,
    petersen,
    prism,
)

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def to_nx(g):
    """Plain graph view; dangling edges become pendant vertices."""
    G = nx.MultiGraph()
    G.add_nodes_from(range(g.vertex_count))
    G.add_edges_from(g.links)
    for i, (v, _) in enumerate(g.danglings):
        G.add_edge(v, ("pendant", i))
    return G


def brute_matchings(g):
    """Every edge subset that meets each vertex exactly once (tiny graphs only)."""
    out = []
    ends = [g.edge_ends(e) for e in range(g.edge_count)]
    size = g.vertex_count
    for k in range(g.edge_count + 1):
        for sub in itertools.combinations(range(g.edge_count), k):
            hit = [0] * size
            for e in sub:
                for v in set(ends[e]):
                    hit[v] += 1
                if len(ends[e]) == 2 and ends[e][0] == ends[e][1]:
                    hit[ends[e][0]] += 1
            if all(h == 1 for h in hit):
                out.append(sub)
    return [sum(1 << e for e in sub) for sub in sorted(out)]


def small_corpus():
    graphs = [k4(), prism(), petersen()]
    for n in (8, 10):
        graphs += list(cubic_graphs(n))
    return graphs


def structure_corpus():
    """Graphs up to 26 vertices used to pin the scalable algorithm to the oracle."""
    graphs = small_corpus()
    graphs += [blanusa_snark(1), blanusa_snark(2), flower_snark(3), flower_snark(5)]
    for k, a, b in [(2, 1, 0), (2, 1, 1), (2, 1, 2), (2, 1, 4), (2, 2, 1), (2, 2, 0), (4, 1, 0)]:
        graphs.append(build_family(FamilySpec(k, a, b)))
    return graphs


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()
