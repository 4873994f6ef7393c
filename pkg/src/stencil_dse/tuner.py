"""Design-space enumeration under DSP and Block RAM budgets."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .devices import DeviceSpec
from .errors import EmptyResult, ResourceExceeded
from .geometry import AccelConfig, alignment_status, halo_width, shift_reg_size
from .benchmarks import closest_multiple
from .perf import PerfEstimate, predict
from .stencil import StencilKind, StencilSpec

BITS_LIMIT = 0.95
# On-chip memory per PE of high-order 3D stencils grows 2.5-3x per radius
# doubling instead of 2x; 2.75 is the middle of that range.
GROWTH_3D = 2.75


def per_unit_dsp(spec: StencilSpec) -> int:
    """DSPs for one cell update (Hotspot 3D adds one more per PE)."""
    return {
        StencilKind.DIFFUSION2D: 4 * spec.rad + 1,
        StencilKind.DIFFUSION3D: 6 * spec.rad + 1,
        StencilKind.HOTSPOT2D: 10,
        StencilKind.HOTSPOT3D: 9,
    }[spec.kind]


def dsp_usage(spec: StencilSpec, config: AccelConfig, device: DeviceSpec) -> int:
    per_pe = config.par_vec * per_unit_dsp(spec)
    if spec.kind is StencilKind.HOTSPOT3D:
        per_pe += 1
    return config.par_time * per_pe + device.overhead_dsp(spec.ndim)


def par_total(spec: StencilSpec, device: DeviceSpec) -> int:
    """Largest par_time * par_vec the DSPs allow once the fixed overhead is set aside."""
    return max(0, (device.dsp_total - device.overhead_dsp(spec.ndim)) // per_unit_dsp(spec))


def num_read_local(spec: StencilSpec) -> int:
    """Shift-register reads per cell update."""
    return {
        StencilKind.DIFFUSION2D: 4 * spec.rad + 1,
        StencilKind.DIFFUSION3D: 6 * spec.rad + 1,
        StencilKind.HOTSPOT2D: 6,
        StencilKind.HOTSPOT3D: 8,
    }[spec.kind]


@dataclass(frozen=True)
class BramEstimate:
    bits_frac: float
    blocks_frac: float
    blocks_size: int
    blocks_ports: int
    blocks_total: int
    bits_limit: float = BITS_LIMIT

    @property
    def feasible(self) -> bool:
        return self.bits_frac <= self.bits_limit and self.blocks_ports <= self.blocks_total


def bram_estimate(spec: StencilSpec, config: AccelConfig, device: DeviceSpec,
                  growth_3d: float = GROWTH_3D, bits_limit: float = BITS_LIMIT,
                  strict: bool = False) -> BramEstimate:
    """Bits and blocks needed by the PE chain.

    Bits cover every PE's line buffer, plus a radius-free buffer for the
    Hotspot power input, as a fraction of the device's memory bits. Blocks
    are the larger of the bits-derived count (capped at the device) and the
    count needed for enough read ports; the board support package's share
    is added to both.
    """
    reg = shift_reg_size(spec, config)
    if spec.ndim == 3 and spec.rad > 1:
        scaled = (reg - config.par_vec) * spec.rad ** (math.log2(growth_3d) - 1)
        reg = scaled + config.par_vec
    if spec.kind.is_hotspot:
        reg += math.prod(config.bsizes(spec.ndim)) + config.par_vec
    bits = config.par_time * reg * spec.size_cell * 8
    total = device.bram_blocks
    bsp = math.ceil(total * device.bsp_bram_overhead / 100)
    per_block = device.bram_bits / total
    size = min(math.ceil(bits / per_block) + bsp, total)
    ports = config.par_time * config.par_vec * num_read_local(spec) + bsp
    est = BramEstimate(bits / device.bram_bits, max(size, ports) / total, size, ports,
                       total, bits_limit)
    if strict and not est.feasible:
        raise ResourceExceeded(
            f"Block RAM over budget: bits {est.bits_frac:.0%}, port blocks {ports}/{total}")
    return est


@dataclass(frozen=True)
class TuneConstraints:
    f_max: float  # assumed operating frequency, Hz
    bsizes: Sequence[tuple[int, ...]] | None = None
    par_vec_max: int | None = None
    par_time_max: int | None = None
    iter: int = 1000
    efficiency: float = 1.0
    snap_dims: bool = True  # resize blocked dims to the nearest multiple of csize
    growth_3d: float = GROWTH_3D
    bits_limit: float = BITS_LIMIT
    bsize_y_le_x: bool = True


def default_bsizes(ndim: int) -> list[tuple[int, ...]]:
    if ndim == 2:
        return [(4096,)]
    sizes = (128, 256, 512)
    return [(x, y) for x in sizes for y in sizes]


def par_vec_options(device: DeviceSpec, limit: int | None) -> list[int]:
    if device.memory == "HBM":
        limit = limit or 256
        return [1, 2] + list(range(4, limit + 1, 4))
    limit = limit or 64
    return [1 << k for k in range(limit.bit_length()) if 1 << k <= limit]


@dataclass(frozen=True)
class Candidate:
    config: AccelConfig
    dims: tuple[int, ...]
    dsp_used: int
    bram_bits_frac: float
    bram_blocks_frac: float
    predicted: PerfEstimate
    alignment: str
    halo_aligned: bool

    def sort_key(self):
        bs = self.config.bsizes(len(self.dims))
        return (-self.predicted.throughput, not self.halo_aligned, self.config.par_time,
                -self.config.par_vec, bs)


def _snap(dims, bsizes, halo, on):
    if not on:
        return tuple(dims)
    blocked = tuple(closest_multiple(b - 2 * halo, d) for b, d in zip(bsizes, dims))
    return blocked + tuple(dims[len(bsizes):])


def enumerate_configs(spec: StencilSpec, device: DeviceSpec, dims: Sequence[int],
                      constraints: TuneConstraints) -> list[Candidate]:
    """All feasible design points, best predicted throughput first.

    Ties prefer a halo on a 256-bit boundary, then smaller par_time, larger
    par_vec and smaller blocks.
    """
    dims = tuple(int(d) for d in dims)
    ptot = par_total(spec, device)
    cap = constraints.par_time_max or device.par_time_cap or ptot
    bsizes = [tuple(b) for b in (constraints.bsizes or default_bsizes(spec.ndim))]
    if spec.ndim == 3 and constraints.bsize_y_le_x:
        bsizes = [b for b in bsizes if b[1] <= b[0]]
    word = 64 // spec.size_cell
    out = []
    for pv in par_vec_options(device, constraints.par_vec_max):
        for pt in range(1, min(ptot // pv, cap) + 1):
            h = halo_width(spec.rad, pt)
            for bs in bsizes:
                if any(b <= 2 * h for b in bs) or bs[0] % pv:
                    continue
                cfg = AccelConfig(bs[0], pt, pv, bs[1] if len(bs) > 1 else None, constraints.f_max)
                dsp = dsp_usage(spec, cfg, device)
                if dsp > device.dsp_total:
                    continue
                bram = bram_estimate(spec, cfg, device, constraints.growth_3d, constraints.bits_limit)
                if not bram.feasible:
                    continue
                used = _snap(dims, bs, h, constraints.snap_dims)
                est = predict(device, spec, cfg, used, constraints.iter, constraints.efficiency)
                status, _ = alignment_status(spec.rad, pt, bs, used, spec.size_cell)
                out.append(Candidate(cfg, used, dsp, bram.bits_frac, bram.blocks_frac, est,
                                     status, h % (word // 2) == 0))
    if not out:
        raise EmptyResult(f"no feasible configuration of {spec.name} rad={spec.rad} on {device.name}")
    out.sort(key=Candidate.sort_key)
    return out


enumerate = enumerate_configs  # noqa: A001
