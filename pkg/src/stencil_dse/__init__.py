"""Design-space exploration for FPGA stencil accelerators with combined
spatial and temporal blocking."""
from .devices import BUILTIN_DEVICES, DeviceSpec, get_device
from .geometry import (
    AccelConfig,
    BlockGeometry,
    alignment_status,
    block_count,
    compute_block,
    halo_width,
    shift_reg_size,
    traffic,
)
from .perf import PerfEstimate, predict, th_max, th_mem
from .projection import ReferencePoint, extrapolate_bram, project
from .sim import SimResult, poison_check, simulate
from .stencil import Grid, StencilKind, StencilSpec, apply_point, builtin_spec, oracle_run
from .tuner import (
    Candidate,
    TuneConstraints,
    bram_estimate,
    dsp_usage,
    enumerate_configs,
    num_read_local,
    par_total,
)

__all__ = [
    "AccelConfig", "BlockGeometry", "BUILTIN_DEVICES", "Candidate", "DeviceSpec", "Grid",
    "PerfEstimate", "ReferencePoint", "SimResult", "StencilKind", "StencilSpec",
    "TuneConstraints", "alignment_status", "apply_point", "block_count", "bram_estimate",
    "builtin_spec", "compute_block", "dsp_usage", "enumerate_configs", "extrapolate_bram",
    "get_device", "halo_width", "num_read_local", "oracle_run", "par_total", "poison_check",
    "predict", "project", "shift_reg_size", "simulate", "th_max", "th_mem", "traffic",
]
