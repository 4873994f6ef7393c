"""Command-line front end.

Exit codes:
  0  success
  2  usage error (bad flags, malformed manifest, unknown built-in name)
  3  invalid or infeasible configuration
  4  verification failure (output or counter mismatch)
  5  the tuner found no feasible configuration
  6  input/output error (missing or malformed file)
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Sequence

from . import pipeline as pl
from .devices import get_device
from .errors import (
    ConfigError,
    EmptyResult,
    GridError,
    InfeasibleProjection,
    SpecError,
)
from .geometry import AccelConfig, traffic
from .gridio import read_grid, write_grid
from .perf import predict
from .projection import ReferencePoint, project
from .report import candidate_rows, predict_row, projection_row, render
from .sim import poison_check, simulate
from .stencil import Grid, StencilKind, builtin_spec, load_stencil, oracle_run
from .tuner import TuneConstraints, enumerate_configs

EXIT_OK, EXIT_USAGE, EXIT_CONFIG, EXIT_VERIFY, EXIT_EMPTY, EXIT_IO = 0, 2, 3, 4, 5, 6
COMMANDS = ("oracle", "simulate", "predict", "tune", "project", "pipeline", "validate")


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    stencil: str | None = None
    rad: int = 1
    device: str | None = None
    bsize_x: list[int] = field(default_factory=list)
    bsize_y: list[int] = field(default_factory=list)
    par_time: int | None = None
    par_vec: int = 1
    fmax_mhz: float | None = None
    dims: list[int] | None = None
    iter: int | None = None
    efficiency: float | None = None
    out: str | None = None
    format: str = "csv"
    input: str | None = None
    power: str | None = None
    seed: int = 0
    oracle: str | None = None
    counters: str | None = None
    top: int = 10
    par_time_max: int | None = None
    par_vec_max: int | None = None
    no_snap: bool = False
    uncapped: bool = False
    reference: str | None = None
    bsp: float = 10.0
    workers: int = 1
    pipeline: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> "RunManifest":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise UsageError(f"unknown manifest keys: {', '.join(sorted(extra))}")
        m = cls(**data)
        for name in ("bsize_x", "bsize_y"):
            v = getattr(m, name)
            if isinstance(v, int):
                setattr(m, name, [v])
        return m

    @classmethod
    def load(cls, path: str) -> "RunManifest":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise UsageError(f"{path}: {exc}") from None
        if not isinstance(data, dict) or "command" not in data:
            raise UsageError(f"{path}: manifest must be an object with a 'command'")
        return cls.from_dict(data)


def parse_dims(text: str) -> list[int]:
    try:
        dims = [int(t) for t in text.replace("x", ",").replace("X", ",").replace("×", ",").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dims {text!r}; use e.g. 256x256") from None
    if len(dims) not in (2, 3) or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError(f"bad dims {text!r}; need 2 or 3 positive sizes")
    return dims


def _spec(m: RunManifest):
    if not m.stencil:
        raise UsageError("--stencil is required")
    if m.stencil.endswith(".json") or Path(m.stencil).is_file():
        return load_stencil(m.stencil)
    try:
        StencilKind.parse(m.stencil)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return builtin_spec(m.stencil, m.rad)


def _device(m: RunManifest):
    if not m.device:
        raise UsageError("--device is required")
    try:
        return get_device(m.device)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _config(m: RunManifest, spec, need_fmax=True) -> AccelConfig:
    if not m.bsize_x or m.par_time is None:
        raise UsageError("--bsize-x and --par-time are required")
    if spec.ndim == 3 and not m.bsize_y:
        raise UsageError("3D stencils need --bsize-y")
    if need_fmax and m.fmax_mhz is None:
        raise UsageError("--fmax-mhz is required")
    f = m.fmax_mhz * 1e6 if m.fmax_mhz is not None else None
    by = m.bsize_y[0] if spec.ndim == 3 else None
    return AccelConfig(m.bsize_x[0], m.par_time, m.par_vec, by, f)


def _dims(m: RunManifest, spec) -> tuple[int, ...]:
    if m.dims is None:
        raise UsageError("--dims is required")
    if len(m.dims) != spec.ndim:
        raise UsageError(f"{spec.name} needs {spec.ndim} dims, got {len(m.dims)}")
    return tuple(m.dims)


def _inputs(m: RunManifest, spec):
    if m.input:
        temp = read_grid(m.input)
    else:
        temp = Grid.random(_dims(m, spec), seed=m.seed)
    if not spec.kind.is_hotspot:
        return (temp,)
    power = read_grid(m.power) if m.power else Grid.random(temp.dims, seed=m.seed + 1)
    return (temp, power)


def _emit(m: RunManifest, text: str, out=None) -> None:
    if m.out:
        Path(m.out).write_text(text)
    else:
        (out or sys.stdout).write(text)


def _cmd_oracle(m, out):
    spec = _spec(m)
    if not m.out:
        raise UsageError("oracle needs --out for the output grid")
    grid = oracle_run(spec, _inputs(m, spec), m.iter or 1)
    write_grid(m.out, grid)
    return EXIT_OK


def _cmd_simulate(m, out, validate=False):
    spec = _spec(m)
    cfg = _config(m, spec, need_fmax=False)
    inputs = _inputs(m, spec)
    it = m.iter or cfg.par_time
    res = simulate(spec, cfg, inputs, it, workers=m.workers)
    status = EXIT_OK
    lines = [f"passes {res.passes} reads {res.reads} writes {res.writes}",
             f"poison check: {'clean' if poison_check(res) else 'NaN in output'}"]
    if validate:
        geo = traffic(spec, cfg, inputs[0].dims)
        ok = (all(r == geo.t_read for r in res.reads_per_pass)
              and all(w == geo.t_write for w in res.writes_per_pass))
        lines.append(f"model t_read {geo.t_read} t_write {geo.t_write} per pass: "
                     f"{'counters equal' if ok else 'COUNTER MISMATCH'}")
        ref = oracle_run(spec, inputs, it)
        same = ref == res.output
        lines.append(f"oracle: {'bit-identical' if same else 'OUTPUT MISMATCH'}")
        if not (ok and same and poison_check(res)):
            status = EXIT_VERIFY
    elif m.oracle:
        same = read_grid(m.oracle) == res.output
        lines.append(f"oracle: {'bit-identical' if same else 'OUTPUT MISMATCH'}")
        if not same:
            status = EXIT_VERIFY
    if m.out and not validate:
        write_grid(m.out, res.output)
    if m.counters:
        Path(m.counters).write_text(res.counters_csv())
    out.write("\n".join(lines) + "\n")
    return status


def _cmd_predict(m, out):
    spec, dev = _spec(m), _device(m)
    cfg = _config(m, spec)
    dims = _dims(m, spec)
    it = m.iter or 1000
    est = predict(dev, spec, cfg, dims, it, 1.0 if m.efficiency is None else m.efficiency,
                  capped=not m.uncapped)
    _emit(m, render([predict_row(spec, dev, cfg, dims, it, est)], m.format), out)
    return EXIT_OK


def _cmd_tune(m, out):
    spec, dev = _spec(m), _device(m)
    if m.fmax_mhz is None:
        raise UsageError("tune needs --fmax-mhz (the assumed operating frequency)")
    dims = _dims(m, spec)
    bsizes = None
    if m.bsize_x:
        if spec.ndim == 3:
            ys = m.bsize_y or m.bsize_x
            bsizes = [(x, y) for x in m.bsize_x for y in ys]
        else:
            bsizes = [(x,) for x in m.bsize_x]
    cons = TuneConstraints(
        f_max=m.fmax_mhz * 1e6, bsizes=bsizes, par_vec_max=m.par_vec_max,
        par_time_max=m.par_time_max, iter=m.iter or 1000,
        efficiency=1.0 if m.efficiency is None else m.efficiency, snap_dims=not m.no_snap,
        bsize_y_le_x=not m.bsize_y)
    ranked = enumerate_configs(spec, dev, dims, cons)
    _emit(m, render(candidate_rows(spec, dev, ranked[:m.top]), m.format), out)
    return EXIT_OK


def _load_reference(path):
    with open(path) as fh:
        d = json.load(fh)
    cfg = AccelConfig(d["bsize_x"], d["par_time"], d.get("par_vec", 1), d.get("bsize_y"))
    return ReferencePoint(get_device(d["device"]), cfg, d["bits_used"], d["blocks_used"],
                          d.get("bsp_overhead"))


def _cmd_project(m, out):
    spec, dev = _spec(m), _device(m)
    cfg = _config(m, spec, need_fmax=False)
    ref = _load_reference(m.reference) if m.reference else None
    proj = project(spec, dev, cfg, _dims(m, spec), m.iter or 5000, m.efficiency,
                   reference=ref, target_bsp_overhead=m.bsp)
    _emit(m, render([projection_row(proj)], m.format), out)
    return EXIT_OK


def _num(x):
    if hasattr(x, "denominator") and not isinstance(x, int):
        return float(x)
    return x


def _cmd_pipeline(m, out):
    p = dict(m.pipeline)
    row = {}
    try:
        if "P" in p and "L" in p:
            row["cycles_swi"] = pl.cycles_swi(p["P"], p.get("N_d", 0), p["L"])
            if "N_b" in p:
                row["cycles_ndrange"] = pl.cycles_ndrange(p["P"], p["N_b"], p["L"])
        if "BW" in p:
            dep = p.get("N_d", p.get("N_b", 0))
            row["ii_lower_bound"] = pl.ii_lower_bound(dep, p.get("N_m", 0), p["BW"], p.get("N_p", 1))
        if "P_prime" in p and "L" in p:
            ii = p.get("II", row.get("ii_lower_bound", 1))
            row["cycles_parallel"] = pl.cycles_parallel(p["P_prime"], ii, p["L"], p.get("N_p", 1))
        if m.fmax_mhz is not None:
            for k in ("cycles_swi", "cycles_parallel"):
                if k in row:
                    row[k.replace("cycles", "seconds")] = pl.seconds(row[k], m.fmax_mhz * 1e6)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not row:
        raise UsageError("pipeline needs --P and --L, --BW, or --P-prime with --L")
    _emit(m, render([{k: _num(v) for k, v in row.items()}], m.format), out)
    return EXIT_OK


def run(manifest: RunManifest, out=None) -> int:
    """Execute one manifest; returns the exit status."""
    out = out or sys.stdout
    handlers = {
        "oracle": _cmd_oracle,
        "simulate": _cmd_simulate,
        "validate": lambda m, o: _cmd_simulate(m, o, validate=True),
        "predict": _cmd_predict,
        "tune": _cmd_tune,
        "project": _cmd_project,
        "pipeline": _cmd_pipeline,
    }
    if manifest.command not in handlers:
        print(f"error: unknown command {manifest.command!r}", file=sys.stderr)
        return EXIT_USAGE
    if manifest.format not in ("csv", "json"):
        print(f"error: unknown format {manifest.format!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return handlers[manifest.command](manifest, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EmptyResult as exc:
        print(f"empty result: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (GridError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SpecError, ConfigError, InfeasibleProjection) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def _common(p: argparse.ArgumentParser, grid=False, config=False, device=False):
    p.add_argument("--stencil", help="built-in kind (diffusion2d, ...) or stencil JSON file")
    p.add_argument("--rad", type=int, default=1)
    if device:
        p.add_argument("--device", help="built-in device name or device JSON file")
    if config:
        p.add_argument("--bsize-x", type=int, action="append", default=[])
        p.add_argument("--bsize-y", type=int, action="append", default=[])
        p.add_argument("--par-time", type=int)
        p.add_argument("--par-vec", type=int, default=1)
        p.add_argument("--fmax-mhz", type=float)
    p.add_argument("--dims", type=parse_dims, help="e.g. 16096x16096 or 64,64,64")
    p.add_argument("--iter", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    if grid:
        p.add_argument("--input", help="temperature/field grid file")
        p.add_argument("--power", help="Hotspot power grid file")
        p.add_argument("--seed", type=int, default=0, help="seed for generated inputs")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stencil-dse", description=__doc__.splitlines()[0],
                                 epilog="\n".join(__doc__.splitlines()[2:]),
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute a JSON manifest")
    p.add_argument("manifest")

    _common(sub.add_parser("oracle", help="reference executor"), grid=True)
    for name in ("simulate", "validate"):
        p = sub.add_parser(name, help="block simulator" if name == "simulate"
                           else "simulate and check counters and output against the models")
        _common(p, grid=True, config=True)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--counters", help="write per-pass counters as CSV")
        if name == "simulate":
            p.add_argument("--oracle", help="reference grid for a bitwise diff")

    p = sub.add_parser("predict", help="performance model for one design point")
    _common(p, config=True, device=True)
    p.add_argument("--efficiency", type=float)
    p.add_argument("--uncapped", action="store_true", help="do not cap at peak bandwidth")

    p = sub.add_parser("tune", help="rank feasible design points")
    _common(p, config=True, device=True)
    p.add_argument("--efficiency", type=float)
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--par-time-max", type=int)
    p.add_argument("--par-vec-max", type=int)
    p.add_argument("--no-snap", action="store_true", help="use --dims as given for every candidate")

    p = sub.add_parser("project", help="projection onto a device from a reference point")
    _common(p, config=True, device=True)
    p.add_argument("--efficiency", type=float)
    p.add_argument("--reference", help="reference point JSON")
    p.add_argument("--bsp", type=float, default=10.0, help="target BSP block share, percent")

    p = sub.add_parser("pipeline", help="generic pipeline cycle model")
    for flag in ("P", "L", "N-d", "N-b", "N-m", "BW", "P-prime", "N-p", "II"):
        p.add_argument(f"--{flag}", type=float, dest=flag.replace("-", "_"))
    p.add_argument("--fmax-mhz", type=float)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return ap


def _as_int(v):
    return int(v) if v is not None and float(v).is_integer() else v


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        try:
            manifest = RunManifest.load(args.manifest)
        except UsageError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except OSError as exc:
            print(f"i/o error: {exc}", file=sys.stderr)
            return EXIT_IO
        return run(manifest)
    d = vars(args)
    if args.command == "pipeline":
        params = {k: _as_int(d[k]) for k in ("P", "L", "N_d", "N_b", "N_m", "BW", "P_prime", "N_p", "II")
                  if d.get(k) is not None}
        m = RunManifest("pipeline", fmax_mhz=args.fmax_mhz, out=args.out, format=args.format,
                        pipeline=params)
        return run(m)
    known = {f.name for f in fields(RunManifest)}
    m = RunManifest(**{k: v for k, v in d.items() if k in known and v is not None})
    return run(m)


if __name__ == "__main__":
    sys.exit(main())
