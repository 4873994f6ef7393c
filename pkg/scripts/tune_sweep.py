"""Rank design points for each stencil and radius and report where the best measured one lands."""
import argparse
import sys

from stencil_dse.benchmarks import HIGH_ORDER_ROWS
from stencil_dse.devices import get_device
from stencil_dse.report import render
from stencil_dse.stencil import builtin_spec
from stencil_dse.tuner import TuneConstraints, enumerate_configs


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--top", type=int, default=3)
    args = ap.parse_args(argv)

    rows = []
    for r in HIGH_ORDER_ROWS:
        spec = builtin_spec(r.kind, r.rad)
        ranked = enumerate_configs(spec, get_device(r.device), r.dims,
                                   TuneConstraints(f_max=r.f_max_mhz * 1e6))
        keys = [(c.config.bsizes(spec.ndim), c.config.par_time, c.config.par_vec) for c in ranked]
        want = (r.bsize, r.par_time, r.par_vec)
        rank = keys.index(want) if want in keys else None
        rows.append({
            "stencil": r.kind.value, "rad": r.rad, "device": r.device,
            "measured best": r.config().label(spec.ndim),
            "rank": "infeasible" if rank is None else rank,
            "candidates": len(ranked),
            "top": "; ".join(c.config.label(spec.ndim) for c in ranked[:args.top]),
        })
    sys.stdout.write(render(rows, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
