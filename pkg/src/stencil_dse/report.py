"""Tabular reports; column names follow the usual benchmark table headers."""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Sequence

from .devices import DeviceSpec
from .geometry import AccelConfig
from .perf import PerfEstimate
from .stencil import StencilSpec

KIND_LABEL = {
    "diffusion2d": "Diffusion 2D",
    "diffusion3d": "Diffusion 3D",
    "hotspot2d": "Hotspot 2D",
    "hotspot3d": "Hotspot 3D",
}


def pct(x: float) -> int:
    """Whole percent, halves rounded up (0.925 -> 93)."""
    return int(math.floor(round(x * 100, 6) + 0.5))


def _dims(dims: Sequence[int]) -> str:
    return "x".join(str(d) for d in dims)


def _bsize(spec: StencilSpec, config: AccelConfig) -> str:
    return "x".join(str(b) for b in config.bsizes(spec.ndim))


def _perf_columns(spec: StencilSpec, est: PerfEstimate) -> dict:
    return {
        "Estimated Perf. (GB/s)": round(est.throughput, 3),
        "Estimated Perf. (GFLOP/s)": round(est.gflops, 3),
        "Estimated Perf. (GCell/s)": round(est.gcells, 3),
        "Total Redundancy (%)": round(est.redundancy * 100, 2),
        "Utilized Memory Bandwidth (GB/s)": round(est.utilized_gbs, 1),
        "Utilized Memory Bandwidth (%)": pct(est.utilized_bw),
        "Run Time (s)": float(f"{est.run_time:.6g}"),
    }


def predict_row(spec: StencilSpec, device: DeviceSpec, config: AccelConfig,
                dims: Sequence[int], iter: int, est: PerfEstimate) -> dict:
    row = {
        "Benchmark": KIND_LABEL[spec.name],
        "rad": spec.rad,
        "Device": device.name,
        "bsize": _bsize(spec, config),
        "par_time": config.par_time,
        "par_vec": config.par_vec,
        "Input Size": _dims(dims),
        "iter": iter,
        "f_max (MHz)": round(config.f_max / 1e6, 2),
        "Memory Controller Efficiency (%)": round(est.efficiency * 100, 2),
    }
    row.update(_perf_columns(spec, est))
    return row


def projection_row(proj) -> dict:
    spec, cfg = proj.spec, proj.config
    row = {
        "Device": proj.device.name,
        "Stencil": KIND_LABEL[spec.name],
        "rad": spec.rad,
        "bsize": _bsize(spec, cfg),
        "par_time": cfg.par_time,
        "par_vec": cfg.par_vec,
        "Input Size": _dims(proj.dims),
        "f_max (MHz)": round(cfg.f_max / 1e6, 2),
        "Memory Controller Efficiency (%)": round(proj.estimate.efficiency * 100, 2),
    }
    row.update(_perf_columns(spec, proj.estimate))
    if proj.bram is not None:
        row["Memory Bits (%)"] = proj.bram.bits
        row["Memory Blocks (%)"] = proj.bram.blocks
        row["Memory Blocks, ports (%)"] = proj.bram.blocks_ports
    row["DSP (%)"] = pct(proj.dsp_frac)
    return row


def candidate_rows(spec: StencilSpec, device: DeviceSpec, candidates: Iterable) -> list[dict]:
    rows = []
    for rank, c in enumerate(candidates, 1):
        row = {
            "rank": rank,
            "bsize": _bsize(spec, c.config),
            "par_time": c.config.par_time,
            "par_vec": c.config.par_vec,
            "Input Size": _dims(c.dims),
        }
        row.update(_perf_columns(spec, c.predicted))
        row.update({
            "Memory Bits (%)": pct(c.bram_bits_frac),
            "Memory Blocks (%)": pct(c.bram_blocks_frac),
            "DSP": c.dsp_used,
            "DSP (%)": pct(c.dsp_used / device.dsp_total),
            "Alignment": c.alignment,
        })
        rows.append(row)
    return rows


def render(rows: Sequence[dict], fmt: str = "csv") -> str:
    if fmt == "json":
        return json.dumps(list(rows), indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()
