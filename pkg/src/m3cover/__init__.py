"""Exact m3 for cubic graphs: multipoles, perfect matchings, ring DP, structure checks."""

from .generators import FamilySpec, build_family, params_for_fraction, predicted_m3
from .graph6 import decode_graph6, encode_graph6
from .kernels import BACKEND
from .multipole import Multipole, graph_from_edges, join, join_self, validate
from .solver import M3Result, block_profile, m3, m3_bruteforce, m3_ring_dp
from .structure import cyclic_connectivity_oracle, cyclic_edge_connectivity, girth

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FamilySpec",
    "M3Result",
    "Multipole",
    "block_profile",
    "build_family",
    "cyclic_connectivity_oracle",
    "cyclic_edge_connectivity",
    "decode_graph6",
    "encode_graph6",
    "girth",
    "graph_from_edges",
    "join",
    "join_self",
    "m3",
    "m3_bruteforce",
    "m3_ring_dp",
    "params_for_fraction",
    "predicted_m3",
    "validate",
]
