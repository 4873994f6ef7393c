import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from stencil_dse.errors import BlockTooSmallForHalo, DimsMismatch, InvalidConfig
from stencil_dse.geometry import (
    AccelConfig, alignment_status, block_count, closed_form_extent, compute_block, halo_width,
    is_regular, read_extent, shift_reg_size, traffic, validate_config,
)
from stencil_dse.sim import simulate
from stencil_dse.stencil import Grid, builtin_spec

D2 = builtin_spec("diffusion2d", 1)


def test_scalars():
    assert halo_width(1, 36) == 36 and halo_width(1, 1) == 1 and halo_width(4, 22) == 88
    assert compute_block(4096, 36) == 4024 and compute_block(8192, 140) == 7912
    with pytest.raises(BlockTooSmallForHalo):
        compute_block(8, 4)
    assert block_count(16096, 4024) == 4 and block_count(1, 1) == 1 and block_count(4025, 4024) == 2


def test_shift_reg_size():
    assert shift_reg_size(D2, AccelConfig(4096, 1, 8)) == 8200
    assert shift_reg_size(builtin_spec("diffusion3d", 1), AccelConfig(256, 1, 16, 256)) == 131_088
    assert shift_reg_size(builtin_spec("diffusion2d", 4), AccelConfig(4096, 1, 4)) == 32_772


def test_alignment():
    assert alignment_status(1, 72, [4096], [15808])[0] == "full"
    assert alignment_status(4, 2, [64], [128, 128])[0] == "full"
    assert alignment_status(1, 6, [4096], [16096])[0] != "full"
    assert alignment_status(1, 7, [4096], [16096])[0] == "unaligned"
    assert alignment_status(1, 8, [4096], [100])[0] == "unaligned"
    assert alignment_status(1, 8, [4096], [16096], padded=False)[0] == "half"
    assert alignment_status(1, 36, [4096], [16096]) == ("half", 4)


def test_traffic_recorded_config():
    g = traffic(D2, AccelConfig(4096, 36, 8), (16096, 16096))
    assert (g.t_cell, g.t_read, g.t_write) == (263_716_864, 262_557_952, 259_081_216)
    assert g.bnum == (4,) and g.trav == (16168,) and g.regular


def test_traffic_projection_row():
    g = traffic(D2, AccelConfig(8192, 140, 8), (31648, 31648))
    assert (g.t_read, g.t_write) == (1_028_180_224, 1_001_595_904)


def test_single_block_exact_csize():
    # the whole overhang lies outside the grid, so only in-grid cells are read
    spec = builtin_spec("hotspot2d", 1)
    g = traffic(spec, AccelConfig(16, 3, 1), (10, 7))
    assert g.bnum == (1,) and g.t_read == spec.num_read * g.size_input


def _pairwise_3d_reads(g, dims):
    # overlap-subtraction variant of the 3D read count; off by 2h^2(1-2h)(bn0+bn1-2)dz
    h = g.size_halo
    (tr0, tr1), (bn0, bn1), (dx, dy, dz) = g.trav, g.bnum, dims
    return (g.t_cell - (tr0 * tr1 - dx * dy) * dz
            - ((bn0 - 1 + bn1 - 1) * (2 * h) * h + (tr0 - h - dx) * (bn1 - 1)
               + (tr1 - h - dy) * (bn0 - 1)) * (2 * h) * dz)


def test_pairwise_3d_form_disagrees_with_counters():
    spec = builtin_spec("diffusion3d", 1)
    cfg, dims = AccelConfig(12, 2, 1, 12), (20, 16, 6)
    g = traffic(spec, cfg, dims)
    sim = simulate(spec, cfg, [Grid.random(dims, seed=1)], 2)
    assert sim.reads_per_pass == (g.t_read,) == (3360,)
    pairwise = _pairwise_3d_reads(g, dims)
    h, (bn0, bn1) = g.size_halo, g.bnum
    assert pairwise != g.t_read
    assert pairwise - g.t_read == 2 * h * h * (1 - 2 * h) * (bn0 + bn1 - 2) * dims[2]


def test_pairwise_3d_form_agrees_with_single_block():
    spec = builtin_spec("diffusion3d", 2)
    g = traffic(spec, AccelConfig(24, 1, 1, 24), (20, 20, 5))
    assert g.bnum == (1, 1) and _pairwise_3d_reads(g, (20, 20, 5)) == g.t_read


def test_irregular_extent():
    assert not is_regular(21, 16, 3)
    assert closed_form_extent(21, 16, 3) == 33
    assert read_extent(21, 16, 3) == 31
    spec = builtin_spec("diffusion2d", 3)
    g = traffic(spec, AccelConfig(16, 1), (21, 4))
    assert not g.regular and g.t_read == 31 * 4


@settings(max_examples=300, deadline=None)
@given(dim=st.integers(1, 400), bsize=st.integers(2, 80), h=st.integers(1, 30))
def test_closed_form_exact_when_regular(dim, bsize, h):
    assume(bsize > 2 * h)
    ext = read_extent(dim, bsize, h)
    assert ext >= dim
    if is_regular(dim, bsize, h):
        assert closed_form_extent(dim, bsize, h) == ext


@settings(max_examples=200, deadline=None)
@given(rad=st.integers(1, 4), pt=st.integers(1, 20), dim=st.integers(1, 5000))
def test_reads_grow_with_par_time(rad, pt, dim):
    spec = builtin_spec("diffusion2d", rad)
    assume(512 > 2 * rad * (pt + 1))
    a = traffic(spec, AccelConfig(512, pt), (dim, 7))
    b = traffic(spec, AccelConfig(512, pt + 1), (dim, 7))
    assert b.t_read >= a.t_read >= a.t_write
    assert a.t_cell >= a.size_input


def test_validation():
    with pytest.raises(InvalidConfig):
        validate_config(D2, AccelConfig(4096, 2, 3))
    with pytest.raises(InvalidConfig):
        validate_config(D2, AccelConfig(4096, 0, 1))
    with pytest.raises(InvalidConfig):
        validate_config(builtin_spec("diffusion3d", 1), AccelConfig(256, 2, 1, 0))
    with pytest.raises(DimsMismatch):
        traffic(D2, AccelConfig(64, 2), (10, 10, 10))
    with pytest.raises(BlockTooSmallForHalo):
        traffic(D2, AccelConfig(8, 4), (10, 10))


def test_label():
    assert AccelConfig(256, 2, 16, 128).label(3) == "(256x128, 2, 16)"
    assert AccelConfig(4096, 36, 8).bsizes(2) == (4096,)
    with pytest.raises(InvalidConfig):
        AccelConfig(256, 2, 16).bsizes(3)
