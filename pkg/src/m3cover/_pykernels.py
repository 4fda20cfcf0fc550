"""Pure-Python/numpy versions of the inner loops in ``_ckernels.pyx``.

Every function returns exactly what its compiled counterpart returns,
including tie-breaking, so either backend can stand in for the other.
"""

from __future__ import annotations

import numpy as np

INF = 1 << 30
_PERMS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


def best_triple(masks: np.ndarray, total: int, msize: int) -> tuple[int, int, int, int]:
    ints = [int.from_bytes(row.tobytes(), "little") for row in masks]
    n = len(ints)
    best, bi, bj, bk = -1, -1, -1, -1
    for i in range(n):
        if best >= total:
            break
        mi = ints[i]
        if mi.bit_count() + 2 * msize <= best:
            continue
        for j in range(i, n):
            mij = mi | ints[j]
            if mij.bit_count() + msize <= best:
                continue
            for k in range(j, n):
                c = (mij | ints[k]).bit_count()
                if c > best:
                    best, bi, bj, bk = c, i, j, k
                    if best >= total:
                        break
            if best >= total:
                break
    return best, bi, bj, bk


def triple_profile(
    masks: np.ndarray, link_mask: np.ndarray, dangling_ids: np.ndarray, link_count: int
) -> tuple[np.ndarray, np.ndarray]:
    n = masks.shape[0]
    d = len(dangling_ids)
    nstates = 1 << (3 * d)
    weight = np.full(nstates, INF, dtype=np.int32)
    wit = np.full((nstates, 3), -1, dtype=np.int32)
    if n == 0:
        return weight, wit
    bits = np.zeros((n, d), dtype=np.int64)
    for t, e in enumerate(dangling_ids):
        bits[:, t] = (masks[:, e >> 6] >> np.uint64(e & 63)) & np.uint64(1)
    code = (bits << (3 * np.arange(d, dtype=np.int64))).sum(axis=1) if d else np.zeros(n, np.int64)
    dang_count = bits  # per matching, per dangling
    link_words = masks & link_mask
    jj, kk = np.triu_indices(n)
    for i in range(n):
        sel = jj >= i
        j, k = jj[sel], kk[sel]
        union_links = link_words[i] | link_words[j] | link_words[k]
        covered_links = np.bitwise_count(union_links).sum(axis=1, dtype=np.int64)
        covered_dang = (dang_count[i] | dang_count[j] | dang_count[k]).sum(axis=1)
        unc = 2 * (link_count - covered_links) + (d - covered_dang)
        tri = np.stack([np.full_like(j, i), j, k])
        for p in _PERMS:
            a, b, c = tri[p[0]], tri[p[1]], tri[p[2]]
            s = code[a] | (code[b] << 1) | (code[c] << 2)
            order = np.lexsort((c, b, a, unc, s))
            s_sorted = s[order]
            first = np.ones(len(order), dtype=bool)
            first[1:] = s_sorted[1:] != s_sorted[:-1]
            for idx in order[first]:
                st = s[idx]
                w = unc[idx]
                cand = (int(a[idx]), int(b[idx]), int(c[idx]))
                if w < weight[st] or (w == weight[st] and cand < tuple(wit[st])):
                    weight[st] = w
                    wit[st] = cand
    return weight, wit


def _has_cycle(side: int, nb: np.ndarray, n: int) -> bool:
    deg = [0] * n
    stack = []
    for v in range(n):
        if side >> v & 1:
            deg[v] = sum(1 for w in nb[v] if w >= 0 and side >> int(w) & 1)
            if deg[v] <= 1:
                stack.append(v)
    alive = side
    while stack:
        v = stack.pop()
        if not alive >> v & 1:
            continue
        alive &= ~(1 << v)
        for w in nb[v]:
            w = int(w)
            if w >= 0 and w != v and alive >> w & 1:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return alive != 0


def min_cycle_separating_cut(n: int, nb: np.ndarray, chunk: int = 1 << 20) -> tuple[int, int]:
    full = (1 << n) - 1
    deg = (nb >= 0).sum(axis=1).astype(np.int64)
    ends: list[tuple[int, int]] = []
    for v in range(n):
        for w in nb[v]:
            w = int(w)
            if w >= 0 and w >= v:
                ends.append((v, w))
    # a loop is listed twice in nb[v]; keep one copy per listed pair
    edges: list[tuple[int, int]] = []
    seen_loops: dict[int, int] = {}
    for u, w in ends:
        if u == w:
            seen_loops[u] = seen_loops.get(u, 0) + 1
            if seen_loops[u] % 2 == 0:
                continue
        edges.append((u, w))
    best, best_mask = INF, 0
    total = 1 << (n - 1)
    for start in range(1, total, chunk):
        s = np.arange(start, min(start + chunk, total), dtype=np.int64)
        degsum = np.zeros(len(s), dtype=np.int64)
        for v in range(n - 1):
            degsum += ((s >> v) & 1) * deg[v]
        inside = np.zeros(len(s), dtype=np.int64)
        for u, w in edges:
            inside += ((s >> u) & (s >> w) & 1) * 2
        cut = degsum - inside
        cand = np.nonzero(cut <= best)[0]
        if len(cand) == 0:
            continue
        order = cand[np.lexsort((s[cand], cut[cand]))]
        for idx in order:
            c, m = int(cut[idx]), int(s[idx])
            if c > best or (c == best and m > best_mask):
                break
            if _has_cycle(m, nb, n) and _has_cycle(full & ~m, nb, n):
                best, best_mask = c, m
                break
    if best == INF:
        return -1, 0
    return best, best_mask
