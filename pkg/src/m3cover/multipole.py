"""Multipoles: cubic graph fragments with links, dangling edges and connectors.

A multipole is immutable.  Edges are addressed by a dense integer id
(``EdgeRef``): links sorted lexicographically by endpoint pair come first,
followed by the dangling edges in declaration order.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "Multipole",
    "MultipoleError",
    "ParseError",
    "ValidationReport",
    "validate",
    "cut_edge",
    "join",
    "join_self",
    "disjoint_union",
    "graph_from_edges",
    "parse_multipole_text",
    "emit_multipole_text",
    "induced_multipole",
]


class MultipoleError(ValueError):
    """Raised when an operation's precondition on a multipole is violated."""


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Multipole:
    vertex_count: int
    links: tuple[tuple[int, int], ...]
    danglings: tuple[tuple[int, str], ...] = ()
    connectors: tuple[tuple[str, ...], ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        links = tuple(sorted((min(u, v), max(u, v)) for u, v in self.links))
        object.__setattr__(self, "links", links)
        object.__setattr__(self, "danglings", tuple((int(v), str(l)) for v, l in self.danglings))
        object.__setattr__(self, "connectors", tuple(tuple(c) for c in self.connectors))

    # -- edge addressing -------------------------------------------------

    @property
    def link_count(self) -> int:
        return len(self.links)

    @property
    def edge_count(self) -> int:
        return len(self.links) + len(self.danglings)

    @property
    def is_graph(self) -> bool:
        return not self.danglings and not self.connectors

    def is_link(self, e: int) -> bool:
        return 0 <= e < len(self.links)

    def is_dangling(self, e: int) -> bool:
        return len(self.links) <= e < self.edge_count

    def edge_ends(self, e: int) -> tuple[int, ...]:
        """Vertex ends of edge ``e``: a pair for a link, a 1-tuple for a dangling edge."""
        if self.is_link(e):
            return self.links[e]
        if self.is_dangling(e):
            return (self.danglings[e - len(self.links)][0],)
        raise IndexError(f"edge {e} out of range")

    def dangling_edge(self, label: str) -> int:
        for i, (_, lab) in enumerate(self.danglings):
            if lab == label:
                return len(self.links) + i
        raise KeyError(label)

    def dangling_labels(self) -> list[str]:
        return [lab for _, lab in self.danglings]

    def link_id(self, u: int, v: int) -> int:
        """Id of the first link joining ``u`` and ``v``."""
        key = (min(u, v), max(u, v))
        for i, lk in enumerate(self.links):
            if lk == key:
                return i
        raise KeyError(key)

    def incidence(self) -> list[list[int]]:
        """Per-vertex list of incident edge ids (a loop appears twice)."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.links):
            inc[u].append(i)
            inc[v].append(i)
        base = len(self.links)
        for j, (v, _) in enumerate(self.danglings):
            inc[v].append(base + j)
        return inc

    def adjacency(self) -> list[list[int]]:
        """Per-vertex neighbour list over links, with multiplicity."""
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.links:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degree(self, v: int) -> int:
        d = 0
        for a, b in self.links:
            d += (a == v) + (b == v)
        return d + sum(1 for w, _ in self.danglings if w == v)

    def connector_edges(self, c: int) -> list[int]:
        return [self.dangling_edge(lab) for lab in self.connectors[c]]

    def renamed(self, name: str) -> "Multipole":
        return Multipole(self.vertex_count, self.links, self.danglings, self.connectors, name)

    def __repr__(self) -> str:
        return (
            f"Multipole({self.name or '?'}: {self.vertex_count} vertices, "
            f"{len(self.links)} links, {len(self.danglings)} danglings, "
            f"connector widths {[len(c) for c in self.connectors]})"
        )


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]], name: str = "") -> Multipole:
    return Multipole(n, tuple(edges), name=name)


# -- validation ----------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[str, ...] = ()

    def __bool__(self) -> bool:  # truthy when there is something to report
        return bool(self.problems)

    def __iter__(self):
        return iter(self.problems)


def validate(m: Multipole) -> ValidationReport:
    problems: list[str] = []
    n = m.vertex_count
    if n < 0:
        problems.append("negative vertex count")
    for u, v in m.links:
        if not (0 <= u < n and 0 <= v < n):
            problems.append(f"link {u}-{v} has an endpoint outside 0..{n - 1}")
    for v, lab in m.danglings:
        if not 0 <= v < n:
            problems.append(f"dangling edge {lab!r} attached to missing vertex {v}")
    deg = [0] * max(n, 0)
    dang = [0] * max(n, 0)
    for u, v in m.links:
        if 0 <= u < n and 0 <= v < n:
            deg[u] += 1
            deg[v] += 1
    for v, _ in m.danglings:
        if 0 <= v < n:
            deg[v] += 1
            dang[v] += 1
    low = [v for v in range(n) if deg[v] < 3]
    high = [v for v in range(n) if deg[v] > 3]
    if low:
        undangled = [v for v in low if deg[v] == 2 and dang[v] == 0]
        if undangled:
            problems.append(f"vertices of degree 2 without dangling edges: {undangled}")
        rest = [v for v in low if v not in undangled]
        if rest:
            problems.append(f"vertices of degree below 3: {rest}")
    if high:
        problems.append(f"vertices of degree above 3: {high}")
    labels = Counter(lab for _, lab in m.danglings)
    dup = sorted(lab for lab, c in labels.items() if c > 1)
    if dup:
        problems.append(f"duplicate dangling labels: {dup}")
    seen: set[str] = set()
    for ci, conn in enumerate(m.connectors):
        for lab in conn:
            if lab not in labels:
                problems.append(f"connector {ci} names unknown dangling edge {lab!r}")
            elif lab in seen:
                problems.append(f"dangling edge {lab!r} appears in two connectors")
            seen.add(lab)
    if n == 0 and m.danglings:
        problems.append("isolated edges are not supported")
    return ValidationReport(tuple(problems))


def _require_valid(m: Multipole) -> None:
    rep = validate(m)
    if rep:
        raise MultipoleError("; ".join(rep.problems))


# -- join / cut algebra -------------------------------------------------


def _fresh(label: str, taken: set[str]) -> str:
    if label not in taken:
        return label
    k = 1
    while f"{label}.{k}" in taken:
        k += 1
    return f"{label}.{k}"


def cut_edge(g: Multipole, e: int, labels: tuple[str, str] = ("d0", "d1")) -> Multipole:
    """Cut link ``e`` into two dangling edges, each forming its own connector.

    The dangling edge at the smaller endpoint goes into the first new connector.
    """
    if not g.is_link(e):
        raise MultipoleError(f"edge {e} is not a link")
    u, v = g.links[e]
    taken = set(g.dangling_labels())
    l0 = _fresh(labels[0], taken)
    taken.add(l0)
    l1 = _fresh(labels[1], taken)
    links = g.links[:e] + g.links[e + 1 :]
    dang = g.danglings + ((u, l0), (v, l1))
    conns = g.connectors + ((l0,), (l1,))
    return Multipole(g.vertex_count, links, dang, conns, g.name)


def disjoint_union(m1: Multipole, m2: Multipole) -> tuple[Multipole, dict[str, str]]:
    """Place ``m2`` after ``m1``; returns the union and m2's label renaming."""
    off = m1.vertex_count
    taken = set(m1.dangling_labels())
    rename: dict[str, str] = {}
    for _, lab in m2.danglings:
        new = _fresh(lab, taken)
        taken.add(new)
        rename[lab] = new
    links = m1.links + tuple((u + off, v + off) for u, v in m2.links)
    dang = m1.danglings + tuple((v + off, rename[lab]) for v, lab in m2.danglings)
    conns = m1.connectors + tuple(tuple(rename[l] for l in c) for c in m2.connectors)
    return Multipole(m1.vertex_count + m2.vertex_count, links, dang, conns, m1.name), rename


def _fuse(m: Multipole, pairs: Sequence[tuple[str, str]], drop: set[int]) -> Multipole:
    where = {lab: v for v, lab in m.danglings}
    used: set[str] = set()
    new_links = list(m.links)
    for a, b in pairs:
        if a == b:
            raise MultipoleError(f"cannot fuse dangling edge {a!r} with itself")
        if a in used or b in used:
            raise MultipoleError("a dangling edge is fused twice")
        used.update((a, b))
        new_links.append((where[a], where[b]))
    dang = tuple(d for d in m.danglings if d[1] not in used)
    conns = tuple(c for i, c in enumerate(m.connectors) if i not in drop)
    return Multipole(m.vertex_count, tuple(new_links), dang, conns, m.name)


def _apply_perm(conn: Sequence[str], perm: Sequence[int] | None) -> list[str]:
    if perm is None:
        return list(conn)
    if sorted(perm) != list(range(len(conn))):
        raise MultipoleError(f"{perm} is not a permutation of the connector positions")
    return [conn[i] for i in perm]


def join(
    m1: Multipole,
    c1: int,
    m2: Multipole,
    c2: int,
    perm: Sequence[int] | None = None,
) -> Multipole:
    """Join connector ``c1`` of ``m1`` to connector ``c2`` of ``m2``.

    The i-th dangling edge of ``c1`` is fused with the ``perm[i]``-th (default:
    i-th) dangling edge of ``c2``.  Vertices of ``m2`` are renumbered after
    those of ``m1``; colliding labels of ``m2`` get a numeric suffix.  The
    surviving connectors keep their order, ``m1``'s first.
    """
    if m1 is m2:
        raise MultipoleError("join of a multipole with itself; use join_self")
    if not (0 <= c1 < len(m1.connectors) and 0 <= c2 < len(m2.connectors)):
        raise MultipoleError("connector index out of range")
    w1, w2 = len(m1.connectors[c1]), len(m2.connectors[c2])
    if w1 != w2:
        raise MultipoleError(f"connector widths differ: {w1} vs {w2}")
    u, rename = disjoint_union(m1, m2)
    left = list(m1.connectors[c1])
    right = _apply_perm([rename[l] for l in m2.connectors[c2]], perm)
    return _fuse(u, list(zip(left, right)), {c1, len(m1.connectors) + c2})


def join_self(m: Multipole, c1: int, c2: int, perm: Sequence[int] | None = None) -> Multipole:
    """Fuse connector ``c1`` of ``m`` with its connector ``c2`` position-wise."""
    if c1 == c2:
        raise MultipoleError("join_self needs two different connectors")
    n = len(m.connectors)
    if not (0 <= c1 < n and 0 <= c2 < n):
        raise MultipoleError("connector index out of range")
    left, right = m.connectors[c1], _apply_perm(m.connectors[c2], perm)
    if len(left) != len(right):
        raise MultipoleError(f"connector widths differ: {len(left)} vs {len(right)}")
    return _fuse(m, list(zip(left, right)), {c1, c2})


# -- text format ---------------------------------------------------------

_TOKEN = re.compile(r"^[A-Za-z0-9_.'+\-]+$")


def parse_multipole_text(text: str) -> Multipole | list[Multipole]:
    """Parse one or more ``multipole ... end`` blocks.

    A single block returns a :class:`Multipole`, several return a list.
    Structural invariants are left to :func:`validate`; only syntax and
    label uniqueness are enforced here.
    """
    blocks: list[Multipole] = []
    cur: dict | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        if head == "multipole":
            if cur is not None:
                raise ParseError(lineno, "'multipole' inside an unterminated block")
            if len(args) > 1:
                raise ParseError(lineno, "expected 'multipole <name>'")
            cur = {"name": args[0] if args else "", "n": None, "links": [], "dang": [], "conns": [], "start": lineno}
            continue
        if cur is None:
            raise ParseError(lineno, f"{head!r} outside a multipole block")
        if head == "vertices":
            if len(args) != 1 or not args[0].isdigit():
                raise ParseError(lineno, "expected 'vertices <n>'")
            if cur["n"] is not None:
                raise ParseError(lineno, "vertex count given twice")
            cur["n"] = int(args[0])
        elif head == "link":
            if len(args) != 2 or not all(a.isdigit() for a in args):
                raise ParseError(lineno, "expected 'link <u> <v>'")
            cur["links"].append((int(args[0]), int(args[1])))
        elif head == "dangle":
            if len(args) != 2 or not args[0].isdigit() or not _TOKEN.match(args[1]):
                raise ParseError(lineno, "expected 'dangle <u> <label>'")
            if any(lab == args[1] for _, lab in cur["dang"]):
                raise ParseError(lineno, f"duplicate dangling label {args[1]!r}")
            cur["dang"].append((int(args[0]), args[1]))
        elif head == "connector":
            if not args:
                raise ParseError(lineno, "empty connector")
            known = {lab for _, lab in cur["dang"]}
            for a in args:
                if a not in known:
                    raise ParseError(lineno, f"connector names unknown label {a!r}")
            cur["conns"].append(tuple(args))
        elif head == "end":
            if args:
                raise ParseError(lineno, "unexpected tokens after 'end'")
            if cur["n"] is None:
                raise ParseError(lineno, "missing 'vertices' line")
            blocks.append(Multipole(cur["n"], tuple(cur["links"]), tuple(cur["dang"]), tuple(cur["conns"]), cur["name"]))
            cur = None
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")
    if cur is not None:
        raise ParseError(cur["start"], "block not terminated by 'end'")
    if not blocks:
        raise ParseError(0, "no multipole block found")
    return blocks[0] if len(blocks) == 1 else blocks


def emit_multipole_text(m: Multipole) -> str:
    lines = [f"multipole {m.name or 'unnamed'}", f"vertices {m.vertex_count}"]
    lines += [f"link {u} {v}" for u, v in m.links]
    lines += [f"dangle {v} {lab}" for v, lab in m.danglings]
    lines += ["connector " + " ".join(c) for c in m.connectors]
    lines.append("end")
    return "\n".join(lines) + "\n"


def induced_multipole(m: Multipole, vertices: Sequence[int], name: str = "") -> Multipole:
    """Sub-multipole on ``vertices``; every edge leaving the set becomes a dangling edge.

    Vertices are renumbered in the given order.  A dangling edge created from a
    link ``v``-``w`` is labelled ``"v-w"`` (original numbering); original
    dangling edges keep their labels.  Connectors are dropped.
    """
    index = {v: i for i, v in enumerate(vertices)}
    links = []
    dang = []
    for u, v in m.links:
        if u in index and v in index:
            links.append((index[u], index[v]))
        elif u in index:
            dang.append((index[u], f"{u}-{v}"))
        elif v in index:
            dang.append((index[v], f"{v}-{u}"))
    for v, lab in m.danglings:
        if v in index:
            dang.append((index[v], lab))
    dang.sort()
    return Multipole(len(vertices), tuple(links), tuple(dang), (), name)
