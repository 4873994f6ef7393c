"""Bandwidth, run time, throughput and redundancy of a design point."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .devices import DeviceSpec
from .errors import InvalidConfig
from .geometry import AccelConfig, BlockGeometry, traffic
from .stencil import StencilSpec


@dataclass(frozen=True)
class PerfEstimate:
    th_max: float  # GB/s
    th_mem: float  # GB/s, efficiency applied
    run_time: float  # s
    throughput: float  # GB/s
    gflops: float
    gcells: float
    redundancy: float  # fraction
    utilized_bw: float  # fraction of th_max, before efficiency
    utilized_gbs: float  # GB/s, before efficiency
    efficiency: float
    geometry: BlockGeometry


def th_max(device: DeviceSpec) -> float:
    return device.num_banks * device.size_bus * device.f_mem / 8e9


def bw_demand(spec: StencilSpec, config: AccelConfig) -> float:
    """Bandwidth the kernel can consume at f_max, GB/s."""
    if config.f_max is None or config.f_max <= 0:
        raise InvalidConfig("f_max must be set to a positive frequency")
    return config.f_max * config.par_vec * spec.num_acc * spec.size_cell / 1e9


def th_mem(device: DeviceSpec, config: AccelConfig, spec: StencilSpec,
           efficiency: float = 1.0, capped: bool = True) -> float:
    demand = bw_demand(spec, config)
    return efficiency * (min(th_max(device), demand) if capped else demand)


def predict(device: DeviceSpec, spec: StencilSpec, config: AccelConfig,
            dims: Sequence[int], iter: int, efficiency: float = 1.0,
            capped: bool = True) -> PerfEstimate:
    if iter < 1:
        raise ValueError("iter must be >= 1")
    if not 0 < efficiency <= 1:
        raise ValueError("efficiency must be in (0, 1]")
    geo = traffic(spec, config, dims)
    peak = th_max(device)
    modeled = th_mem(device, config, spec, 1.0, capped)
    bw = efficiency * modeled
    passes = -(-iter // config.par_time)
    run_time = passes * (geo.t_read + geo.t_write) * spec.size_cell / (1e9 * bw)
    throughput = spec.num_acc * geo.size_input * spec.size_cell * iter / (1e9 * run_time)
    gcells = throughput / spec.bytes_per_cell
    redundancy = (geo.t_read + geo.t_write) / (spec.num_acc * geo.size_input) - 1
    return PerfEstimate(
        th_max=peak, th_mem=bw, run_time=run_time, throughput=throughput,
        gflops=gcells * spec.flop_per_cell, gcells=gcells, redundancy=redundancy,
        utilized_bw=modeled / peak, utilized_gbs=modeled, efficiency=efficiency,
        geometry=geo)
