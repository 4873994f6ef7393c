"""Resource extrapolation and performance projection onto a larger device."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

from .devices import BUILTIN_DEVICES, DeviceSpec
from .errors import InfeasibleProjection
from .geometry import AccelConfig
from .perf import PerfEstimate, predict
from .stencil import StencilKind, StencilSpec
from .tuner import BITS_LIMIT, dsp_usage, num_read_local  # noqa: F401  (re-exported)

DEFAULT_EFFICIENCY = {2: 0.85, 3: 0.60}
DEFAULT_FMAX = {2: 450e6, 3: 400e6}
DEFAULT_TARGET_BSP = 10.0


@dataclass(frozen=True)
class ReferencePoint:
    """A compiled configuration with its measured memory utilization (percent, BSP included)."""

    device: DeviceSpec
    config: AccelConfig
    bits_used: float
    blocks_used: float
    bsp_overhead: float | None = None  # defaults to the device's

    def __post_init__(self):
        for v in (self.bits_used, self.blocks_used):
            if not 0 < v <= 100:
                raise ValueError("utilization percentages must be in (0, 100]")

    @property
    def bsp(self) -> float:
        return self.device.bsp_bram_overhead if self.bsp_overhead is None else self.bsp_overhead


def _ref(kind, rad, bsize, pt, pv, bits, blocks):
    by = bsize[1] if len(bsize) > 1 else None
    return (kind, rad), ReferencePoint(BUILTIN_DEVICES["arria-10-gx1150"],
                                       AccelConfig(bsize[0], pt, pv, by), bits, blocks)


# the most memory-hungry compiled configuration per stencil
REFERENCE_POINTS = dict([
    _ref(StencilKind.DIFFUSION2D, 1, (4096,), 72, 4, 65, 100),
    _ref(StencilKind.DIFFUSION2D, 2, (4096,), 42, 4, 75, 100),
    _ref(StencilKind.DIFFUSION2D, 3, (4096,), 28, 4, 75, 100),
    _ref(StencilKind.DIFFUSION2D, 4, (4096,), 22, 4, 78, 100),
    _ref(StencilKind.DIFFUSION3D, 1, (256, 256), 12, 16, 94, 100),
    _ref(StencilKind.DIFFUSION3D, 2, (256, 128), 6, 16, 73, 87),
    _ref(StencilKind.DIFFUSION3D, 3, (256, 128), 4, 16, 81, 99),
    _ref(StencilKind.DIFFUSION3D, 4, (256, 128), 3, 16, 85, 100),
    _ref(StencilKind.HOTSPOT2D, 1, (4096,), 72, 2, 90, 100),
    _ref(StencilKind.HOTSPOT3D, 1, (256, 128), 10, 16, 81, 100),
])


def reference_for(spec: StencilSpec) -> ReferencePoint:
    try:
        return REFERENCE_POINTS[spec.kind, spec.rad]
    except KeyError:
        raise InfeasibleProjection(f"no reference point for {spec.name} rad={spec.rad}") from None


@dataclass(frozen=True)
class BramProjection:
    bits: int  # percent
    blocks_size: int
    blocks_ports: int

    @property
    def blocks(self) -> int:
        return max(self.blocks_size, self.blocks_ports)


def extrapolate_bram(ref: ReferencePoint, target_config: AccelConfig, target_device: DeviceSpec,
                     spec: StencilSpec, target_bsp_overhead: float = DEFAULT_TARGET_BSP,
                     bits_limit: float = BITS_LIMIT) -> BramProjection:
    """Scale the reference's measured utilization to a new design point.

    On-chip storage grows with par_time and the block area; the
    reference's BSP share is removed before scaling and the target's added
    back. Blocks from storage are capped at 100%; blocks needed for read
    ports are not, and overflowing them is infeasible.
    """
    nd = spec.ndim
    ratio = (target_config.par_time * math.prod(target_config.bsizes(nd))) / (
        ref.config.par_time * math.prod(ref.config.bsizes(nd)))
    bits = math.ceil(ratio * ref.device.bram_bits / target_device.bram_bits * (ref.bits_used - ref.bsp)
                     - 1e-9) + target_bsp_overhead
    size = math.ceil(ratio * ref.device.bram_blocks / target_device.bram_blocks * (ref.blocks_used - ref.bsp)
                     - 1e-9) + target_bsp_overhead
    ports = math.ceil(target_config.par_time * target_config.par_vec * num_read_local(spec)
                      / target_device.bram_blocks * 100) + target_bsp_overhead
    out = BramProjection(int(bits), int(min(size, 100)), int(ports))
    if out.bits > bits_limit * 100:
        raise InfeasibleProjection(f"projected memory bits {out.bits}% exceed {bits_limit:.0%}")
    if out.blocks_ports > 100:
        raise InfeasibleProjection(f"read ports need {out.blocks_ports}% of memory blocks")
    return out


@dataclass(frozen=True)
class Projection:
    spec: StencilSpec
    device: DeviceSpec
    config: AccelConfig
    dims: tuple[int, ...]
    iter: int
    estimate: PerfEstimate
    bram: BramProjection | None
    dsp_used: int

    @property
    def dsp_frac(self) -> float:
        return self.dsp_used / self.device.dsp_total


def project(spec: StencilSpec, target_device: DeviceSpec, config: AccelConfig,
            dims: Sequence[int], iter: int, efficiency: float | None = None,
            f_max: float | None = None, reference: ReferencePoint | None = None,
            target_bsp_overhead: float = DEFAULT_TARGET_BSP, check_bram: bool = True) -> Projection:
    """Predict a design point on a device that has not been compiled for.

    f_max and efficiency default to conservative assumptions per
    dimensionality unless given here or, for f_max, set on the config.
    """
    nd = spec.ndim
    if f_max is None:
        f_max = config.f_max if config.f_max is not None else DEFAULT_FMAX[nd]
    if efficiency is None:
        efficiency = DEFAULT_EFFICIENCY[nd]
    config = replace(config, f_max=f_max)
    dsp = dsp_usage(spec, config, target_device)
    if dsp > target_device.dsp_total:
        raise InfeasibleProjection(f"needs {dsp} DSPs, {target_device.name} has {target_device.dsp_total}")
    bram = None
    if check_bram:
        ref = reference or reference_for(spec)
        bram = extrapolate_bram(ref, config, target_device, spec, target_bsp_overhead)
    est = predict(target_device, spec, config, dims, iter, efficiency)
    return Projection(spec, target_device, config, tuple(dims), iter, est, bram, dsp)
