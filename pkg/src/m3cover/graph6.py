"""graph6 encoding and decoding (header-less, simple undirected graphs)."""

from __future__ import annotations

from .multipole import Multipole

__all__ = ["Graph6Error", "encode_graph6", "decode_graph6", "read_graph6_lines"]

_HEADER = b">>graph6<<"


class Graph6Error(ValueError):
    pass


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 1 << 36:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise Graph6Error(f"graph too large for graph6: {n} vertices")


def encode_graph6(g: Multipole) -> bytes:
    """Encode a simple graph.  Parallel edges and loops are rejected."""
    if g.danglings:
        raise Graph6Error("graph6 cannot encode dangling edges")
    n = g.vertex_count
    edges = set()
    for u, v in g.links:
        if u == v:
            raise Graph6Error("graph6 cannot encode loops")
        if (u, v) in edges:
            raise Graph6Error("graph6 cannot encode parallel edges")
        edges.add((u, v))
    bits: list[int] = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in edges else 0)
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + int("".join(map(str, bits[k : k + 6])), 2) for k in range(0, len(bits), 6)
    )
    return _encode_n(n) + body


def decode_graph6(data: bytes | str, name: str = "") -> Multipole:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(_HEADER):
        data = data[len(_HEADER) :]
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[:1] == b":" or data[:1] == b";" or data[:1] == b"&":
        raise Graph6Error("sparse6/digraph6/incremental forms are not graph6")
    if any(c < 63 or c > 126 for c in data):
        raise Graph6Error("byte outside the graph6 range 63..126")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated size field")
        n, pos = 0, 8
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
    else:
        if len(data) < 4:
            raise Graph6Error("truncated size field")
        n, pos = 0, 4
        for c in data[1:4]:
            n = (n << 6) | (c - 63)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for {n} vertices, got {len(body)}")
    edges: list[tuple[int, int]] = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            c = body[k // 6] - 63
            if (c >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Multipole(n, tuple(edges), name=name)


def read_graph6_lines(text: str) -> list[tuple[int, Multipole | Graph6Error]]:
    """Decode a graph6 file with one graph per line.

    Returns ``(line number, graph or error)`` pairs; blank lines are skipped.
    """
    out: list[tuple[int, Multipole | Graph6Error]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s:
            continue
        try:
            out.append((lineno, decode_graph6(s, name=f"line{lineno}")))
        except Graph6Error as exc:
            out.append((lineno, exc))
    return out
