"""Backend selection for the hot loops.

The compiled extension ``m3cover._ckernels`` is used when it imports; the
numpy fallback in ``m3cover._pykernels`` otherwise.  Setting the environment
variable ``M3COVER_PURE=1`` forces the fallback.

The wrappers here take matchings as Python int bitmasks and convert them to
the ``(N, words)`` uint64 layout both backends expect.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from . import _pykernels

try:
    if os.environ.get("M3COVER_PURE"):
        raise ImportError("pure backend requested")
    from . import _ckernels as _impl

    BACKEND = "compiled"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

__all__ = ["BACKEND", "backend", "pack_masks", "best_triple", "triple_profile", "min_cycle_separating_cut"]


def backend(name: str | None = None):
    """The kernel module for ``name`` ("compiled" or "python"), default the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "compiled":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def pack_masks(masks: Sequence[int], nbits: int) -> np.ndarray:
    words = max(1, (nbits + 63) // 64)
    out = np.zeros((len(masks), words), dtype=np.uint64)
    for i, m in enumerate(masks):
        for w in range(words):
            out[i, w] = (m >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def best_triple(masks: Sequence[int], nbits: int, msize: int, impl=None) -> tuple[int, int, int, int]:
    """Largest union over unordered triples with repetition, lexicographically first maximiser."""
    impl = impl or _impl
    packed = pack_masks(masks, nbits)
    best, i, j, k = impl.best_triple(packed, nbits, msize)
    return int(best), int(i), int(j), int(k)


def triple_profile(
    masks: Sequence[int], link_count: int, dangling_ids: Sequence[int], nbits: int, impl=None
) -> tuple[np.ndarray, np.ndarray]:
    """Per boundary state: minimum uncovered half-units and the lexicographically first ordered triple."""
    impl = impl or _impl
    packed = pack_masks(masks, nbits)
    link_mask = pack_masks([(1 << link_count) - 1], nbits)[0]
    ids = np.asarray(dangling_ids, dtype=np.int64)
    weight, wit = impl.triple_profile(packed, link_mask, ids, link_count)
    return np.asarray(weight), np.asarray(wit)


def neighbour_table(n: int, links: Sequence[tuple[int, int]]) -> np.ndarray:
    nb = np.full((n, 3), -1, dtype=np.int32)
    fill = [0] * n
    for u, v in links:
        for a, b in ((u, v), (v, u)):
            if fill[a] >= 3:
                raise ValueError(f"vertex {a} has degree above 3")
            nb[a, fill[a]] = b
            fill[a] += 1
    return nb


def min_cycle_separating_cut(n: int, links: Sequence[tuple[int, int]], impl=None) -> tuple[int, int]:
    impl = impl or _impl
    if n > 63:
        raise ValueError("bipartition sweep supports at most 63 vertices")
    best, mask = impl.min_cycle_separating_cut(n, neighbour_table(n, links))
    return int(best), int(mask)
