import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stencil_dse.errors import (
    CoordOutOfBounds, DimsMismatch, HotspotHighOrder, MissingCoefficient, RadiusOutOfRange,
)
from stencil_dse.gridio import read_grid, write_grid
from stencil_dse.stencil import (
    F32, Grid, StencilKind, apply_point, builtin_spec, default_params, load_stencil, oracle_run,
)

D2 = StencilKind.DIFFUSION2D


def test_metrics():
    s = builtin_spec(D2, 2)
    assert (s.flop_per_cell, s.bytes_per_cell) == (17, 8)
    h = builtin_spec("hotspot3d", 1)
    assert (h.flop_per_cell, h.bytes_per_cell, h.num_read, h.num_acc) == (17, 12, 2, 3)
    assert builtin_spec("diffusion3d", 3).flop_per_cell == 37
    assert builtin_spec("hotspot2d", 1).flop_per_cell == 15


@pytest.mark.parametrize("kind,rad,exc", [
    ("hotspot2d", 3, HotspotHighOrder),
    ("diffusion2d", 0, RadiusOutOfRange),
    ("diffusion3d", 5, RadiusOutOfRange),
    ("diffusion2d", 1.0, RadiusOutOfRange),
])
def test_spec_errors(kind, rad, exc):
    with pytest.raises(exc):
        builtin_spec(kind, rad)


def test_missing_coefficient():
    p = default_params(D2, 2)
    del p["c_e"]
    with pytest.raises(MissingCoefficient):
        builtin_spec(D2, 2, p)
    with pytest.raises(MissingCoefficient):
        builtin_spec(D2, 3, {**default_params(D2, 2)})


def _uniform(rad, c):
    return builtin_spec(D2, rad, {k: c for k in ("c_c", "c_w", "c_e", "c_s", "c_n")})


def test_apply_point_uniform():
    assert apply_point(_uniform(1, 0.2), Grid.filled((5, 5), 1.0), (2, 2)) == F32(1.0)


def test_apply_point_hotspot_zero_sdc():
    p = {**default_params("hotspot2d"), "sdc": 0.0}
    spec = builtin_spec("hotspot2d", 1, p)
    temp = Grid.filled((3, 3), 3.25)
    assert apply_point(spec, [temp, Grid.random((3, 3), seed=1)], (1, 2)) == F32(3.25)


def test_apply_point_corner_by_hand():
    spec = builtin_spec(D2, 1, {"c_c": 0.5, "c_w": 0.125, "c_e": 0.25, "c_s": 0.0625, "c_n": 1.0})
    g = Grid((3, 3), np.arange(1, 10))
    # west and north clamp to the corner (1); east is 2, south is 4
    want = F32(0.5) * F32(1) + (F32(0.125) * F32(1) + F32(0.25) * F32(2)
                                + F32(0.0625) * F32(4) + F32(1.0) * F32(1))
    assert apply_point(spec, g, (0, 0)) == want == F32(2.375)


def test_apply_point_errors():
    spec = builtin_spec(D2, 1)
    with pytest.raises(CoordOutOfBounds):
        apply_point(spec, Grid.filled((3, 3), 0), (3, 0))
    with pytest.raises(DimsMismatch):
        apply_point(spec, Grid.filled((3, 3, 3), 0), (0, 0, 0))
    hs = builtin_spec("hotspot2d", 1)
    with pytest.raises(DimsMismatch):
        apply_point(hs, [Grid.filled((3, 3), 0), Grid.filled((3, 4), 0)], (0, 0))
    with pytest.raises(DimsMismatch):
        apply_point(hs, Grid.filled((3, 3), 0), (0, 0))


def test_zero_fixed_point():
    spec = builtin_spec("diffusion3d", 2)
    g = Grid.filled((5, 4, 3), 0.0)
    assert oracle_run(spec, g, 10) == g


def test_iter1_is_pointwise():
    spec = builtin_spec("hotspot3d", 1)
    inputs = [Grid.random((4, 3, 5), seed=2), Grid.random((4, 3, 5), seed=3)]
    out = oracle_run(spec, inputs, 1)
    for z in range(5):
        for y in range(3):
            for x in range(4):
                assert out.cells[z, y, x] == apply_point(spec, inputs, (x, y, z))


def _loops(spec, grid, iters):
    # independent evaluation: plain Python loops over a list-of-lists
    c = spec.coeffs
    nx, ny = grid.dims
    cur = [[grid.cells[y, x] for x in range(nx)] for y in range(ny)]
    for _ in range(iters):
        nxt = [[F32(0)] * nx for _ in range(ny)]
        for y in range(ny):
            for x in range(nx):
                def v(xx, yy):
                    return cur[min(max(yy, 0), ny - 1)][min(max(xx, 0), nx - 1)]
                acc = c["c_c"] * cur[y][x]
                acc = acc + (c["c_w"][0] * v(x - 1, y) + c["c_e"][0] * v(x + 1, y)
                             + c["c_s"][0] * v(x, y + 1) + c["c_n"][0] * v(x, y - 1))
                nxt[y][x] = F32(acc)
        cur = nxt
    return np.array(cur, dtype=F32)


def test_oracle_matches_loops():
    spec = builtin_spec(D2, 1, {"c_c": 0.31, "c_w": 0.17, "c_e": 0.13, "c_s": 0.23, "c_n": 0.16})
    g = Grid.random((4, 4), seed=11)
    assert np.array_equal(oracle_run(spec, g, 3).cells.view(np.uint32), _loops(spec, g, 3).view(np.uint32))


@settings(max_examples=30, deadline=None)
@given(kind=st.sampled_from(["diffusion2d", "diffusion3d"]), rad=st.integers(1, 4),
       it=st.integers(1, 6), seed=st.integers(0, 1000))
def test_identity_coefficients(kind, rad, it, seed):
    dirs = ("w", "e", "s", "n", "b", "a")[: 4 if kind == "diffusion2d" else 6]
    spec = builtin_spec(kind, rad, {"c_c": 1.0, **{f"c_{d}": 0.0 for d in dirs}})
    dims = (5, 4) if kind == "diffusion2d" else (4, 3, 3)
    g = Grid.random(dims, seed=seed)
    assert oracle_run(spec, g, it) == g


def test_oracle_rejects_zero_iter():
    with pytest.raises(ValueError):
        oracle_run(builtin_spec(D2, 1), Grid.filled((2, 2), 1), 0)


def test_per_distance_coefficients():
    spec = builtin_spec(D2, 2, {"c_c": 0.5, "c_w": [0.1, 0.02], "c_e": 0.05, "c_s": 0.05, "c_n": 0.05})
    assert spec.coeffs["c_w"] == (F32(0.1), F32(0.02))
    assert spec.coeffs["c_e"] == (F32(0.05), F32(0.05))


def test_load_stencil_roundtrip(tmp_path):
    spec = builtin_spec("diffusion3d", 2)
    p = tmp_path / "s.json"
    p.write_text(json.dumps(spec.to_dict()))
    assert load_stencil(p) == spec


def test_grid_io_roundtrip(tmp_path):
    for dims in ((7, 3), (2, 3, 4)):
        g = Grid.random(dims, seed=5)
        write_grid(tmp_path / "g.bin", g)
        assert read_grid(tmp_path / "g.bin") == g


def test_grid_io_rejects_garbage(tmp_path):
    p = tmp_path / "bad.bin"
    p.write_bytes(b"XX" + bytes(20))
    with pytest.raises(DimsMismatch):
        read_grid(p)


def test_grid_equality_is_bitwise():
    a = Grid((2, 1), [0.0, 1.0])
    b = Grid((2, 1), [-0.0, 1.0])
    assert a != b and a == Grid((2, 1), [0.0, 1.0])
    with pytest.raises(DimsMismatch):
        Grid((2, 2), [1.0])
