"""Compiled vs pure-Python kernels on the three hot loops.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]
"""

import argparse
import json
import time

from m3cover import kernels
from m3cover.generators import flower_snark, pole_a_prime
from m3cover.matching import matching_masks


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases():
    g = flower_snark(9)
    gm = matching_masks(g)
    ap = pole_a_prime()
    am = matching_masks(ap)
    ids = list(range(ap.link_count, ap.edge_count))
    j5 = flower_snark(5)
    yield (
        f"best_triple  {g.name} ({len(gm)} matchings)",
        lambda impl: kernels.best_triple(gm, g.edge_count, g.vertex_count // 2, impl=impl),
    )
    yield (
        f"triple_profile  A' ({len(am)} matchings, {len(ids)} danglings)",
        lambda impl: tuple(x.tobytes() for x in kernels.triple_profile(am, ap.link_count, ids, ap.edge_count, impl=impl)),
    )
    yield (
        f"cut sweep  {j5.name} ({j5.vertex_count} vertices)",
        lambda impl: kernels.min_cycle_separating_cut(j5.vertex_count, j5.links, impl=impl),
    )


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="one JSON record per case")
    args = ap.parse_args()
    try:
        fast = kernels.backend("compiled")
    except ImportError:
        raise SystemExit("compiled extension not built; run `pip install --no-build-isolation -e .` first")
    slow = kernels.backend("python")
    for name, fn in cases():
        tc, rc = _time(lambda: fn(fast), args.repeat)
        tp, rp = _time(lambda: fn(slow), max(1, args.repeat // 3))
        if rc != rp:
            raise SystemExit(f"{name}: backends disagree")
        if args.json:
            print(json.dumps({"case": name, "compiled_s": round(tc, 5), "python_s": round(tp, 5), "speedup": round(tp / tc, 1)}))
        else:
            print(f"{name:<52} compiled {tc * 1e3:9.2f} ms   python {tp * 1e3:10.2f} ms   x{tp / tc:8.1f}")


if __name__ == "__main__":
    main()
