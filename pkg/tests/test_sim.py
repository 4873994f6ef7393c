import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stencil_dse.errors import BlockTooSmallForHalo, DimsMismatch, InvalidConfig
from stencil_dse.geometry import AccelConfig, traffic
from stencil_dse.sim import poison_check, simulate
from stencil_dse.stencil import Grid, builtin_spec, default_params, oracle_run


def test_small_2d_example():
    spec = builtin_spec("diffusion2d", 1)
    g = Grid.random((8, 8), seed=4)
    res = simulate(spec, AccelConfig(8, 1), g, 1)
    assert res.output == oracle_run(spec, g, 1)
    # csize 6 gives two blocks; the second window adds two halo columns
    assert traffic(spec, AccelConfig(8, 1), (8, 8)).bnum == (2,)
    assert (res.reads, res.writes, res.passes) == (80, 64, 1)


def test_hotspot3d_example():
    spec = builtin_spec("hotspot3d", 1)
    dims = (48, 48, 48)
    inputs = [Grid.random(dims, seed=1, low=60, high=90), Grid.random(dims, seed=2, high=0.5)]
    cfg = AccelConfig(16, 2, 4, 16)
    res = simulate(spec, cfg, inputs, 4)
    assert res.output == oracle_run(spec, inputs, 4)
    geo = traffic(spec, cfg, dims)
    assert res.reads_per_pass == (geo.t_read,) * 2 == (345_600,) * 2
    assert (res.reads, res.writes) == (2 * geo.t_read, 2 * geo.t_write)
    assert poison_check(res)


def test_single_block_is_clean():
    spec = builtin_spec("diffusion3d", 2)
    res = simulate(spec, AccelConfig(24, 2, 2, 24), Grid.random((10, 9, 4)), 5)
    assert res.passes == 3 and poison_check(res)


@pytest.mark.parametrize("kind", ["diffusion2d", "diffusion3d"])
def test_uniform_fixed_point(kind):
    dirs = ("w", "e", "s", "n", "b", "a")[: 4 if kind == "diffusion2d" else 6]
    spec = builtin_spec(kind, 2, {"c_c": 0.5, **{f"c_{d}": 0.0625 if kind == "diffusion2d" else 0.5 / 12
                                                 for d in dirs}})
    dims = (30, 20) if kind == "diffusion2d" else (20, 18, 5)
    g = Grid.filled(dims, 1.0)
    cfg = AccelConfig(16, 2, 2, 16 if kind == "diffusion3d" else None)
    res = simulate(spec, cfg, g, 6)
    assert poison_check(res)
    assert res.output == oracle_run(spec, g, 6)


def test_partial_last_pass():
    spec = builtin_spec("hotspot2d", 1)
    inputs = [Grid.random((40, 12), seed=7), Grid.random((40, 12), seed=8)]
    res = simulate(spec, AccelConfig(16, 3, 4), inputs, 7)
    assert res.passes == 3 and res.output == oracle_run(spec, inputs, 7)


@settings(max_examples=25, deadline=None)
@given(pt=st.integers(1, 4), it=st.integers(1, 8), seed=st.integers(0, 999))
def test_output_independent_of_par_time(pt, it, seed):
    spec = builtin_spec("diffusion2d", 2)
    g = Grid.random((37, 11), seed=seed)
    a = simulate(spec, AccelConfig(24, pt), g, it).output
    b = simulate(spec, AccelConfig(24, 1), g, it).output
    assert a == b


def test_workers_deterministic():
    spec = builtin_spec("diffusion3d", 1)
    g = Grid.random((40, 30, 6), seed=9)
    cfg = AccelConfig(12, 2, 2, 10)
    a = simulate(spec, cfg, g, 5)
    b = simulate(spec, cfg, g, 5, workers=4)
    assert a.output == b.output and a.reads_per_pass == b.reads_per_pass


def test_short_halo_poisons():
    spec = builtin_spec("diffusion2d", 1)
    g = Grid.random((32, 8), seed=3)
    res = simulate(spec, AccelConfig(16, 2), g, 2, halo=1)
    assert not poison_check(res)
    assert np.isnan(res.output.cells).any()


def test_counters_csv():
    spec = builtin_spec("diffusion2d", 1)
    res = simulate(spec, AccelConfig(8, 1), Grid.random((8, 8)), 2)
    assert res.counters_csv().splitlines() == ["pass,reads,writes", "0,80,64", "1,80,64", "total,160,128"]


def test_errors():
    spec = builtin_spec("diffusion2d", 1)
    with pytest.raises(ValueError):
        simulate(spec, AccelConfig(8, 1), Grid.random((8, 8)), 0)
    with pytest.raises(InvalidConfig):
        simulate(spec, AccelConfig(9, 1, 2), Grid.random((8, 8)), 1)
    with pytest.raises(BlockTooSmallForHalo):
        simulate(spec, AccelConfig(8, 4), Grid.random((8, 8)), 1)
    with pytest.raises(DimsMismatch):
        simulate(builtin_spec("hotspot2d", 1, default_params("hotspot2d")), AccelConfig(8, 1),
                 Grid.random((8, 8)), 1)
