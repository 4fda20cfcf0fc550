import numpy as np
import pytest

from m3cover import kernels
from m3cover.generators import FamilySpec, blanusa_block, build_family, petersen, pole_a, pole_a_prime, pole_b
from m3cover.matching import matching_masks

compiled = pytest.importorskip("m3cover._ckernels")
BACKENDS = ["python", "compiled"]


def test_selected_backend():
    assert kernels.BACKEND in BACKENDS
    assert kernels.backend() in (kernels.backend("python"), compiled)
    with pytest.raises(ValueError):
        kernels.backend("fortran")


def test_pack_masks_splits_words():
    packed = kernels.pack_masks([1 | (1 << 64) | (1 << 70)], 71)
    assert packed.shape == (1, 2)
    assert packed[0, 0] == 1 and packed[0, 1] == (1 | (1 << 6))


@pytest.mark.parametrize(
    "g", [petersen(), build_family(FamilySpec(2, 1, 1)), build_family(FamilySpec(4, 1, 0))], ids=lambda g: g.name
)
def test_best_triple_backends_agree(g):
    masks = matching_masks(g)
    res = [kernels.best_triple(masks, g.edge_count, g.vertex_count // 2, impl=kernels.backend(b)) for b in BACKENDS]
    assert res[0] == res[1]


@pytest.mark.parametrize("m", [pole_a(), pole_b(), blanusa_block(), pole_a_prime()], ids=repr)
def test_profile_backends_agree(m):
    masks = matching_masks(m)
    ids = list(range(m.link_count, m.edge_count))
    out = [kernels.triple_profile(masks, m.link_count, ids, m.edge_count, impl=kernels.backend(b)) for b in BACKENDS]
    assert np.array_equal(out[0][0], out[1][0])
    assert np.array_equal(out[0][1], out[1][1])


@pytest.mark.parametrize("g", [petersen(), build_family(FamilySpec(2, 1, 1))], ids=lambda g: g.name)
def test_cut_sweep_backends_agree(g):
    res = [kernels.min_cycle_separating_cut(g.vertex_count, g.links, impl=kernels.backend(b)) for b in BACKENDS]
    assert res[0] == res[1]


def test_cut_sweep_limit():
    with pytest.raises(ValueError):
        kernels.min_cycle_separating_cut(64, [])


def test_pure_env_forces_fallback():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "from m3cover import kernels; print(kernels.BACKEND)"],
        env={"M3COVER_PURE": "1", "PATH": ""},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_benchmark_script_runs():
    import json
    import subprocess
    import sys
    from pathlib import Path

    script = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    out = subprocess.run([sys.executable, str(script), "--repeat", "1", "--json"], capture_output=True, text=True, check=True)
    rows = [json.loads(line) for line in out.stdout.splitlines()]
    assert len(rows) == 3
    assert all(r["compiled_s"] > 0 and r["python_s"] > 0 for r in rows)
