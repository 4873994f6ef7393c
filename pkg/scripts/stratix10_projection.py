"""Project the Arria 10 designs onto Stratix 10 MX 2100 and GX 2800."""
import argparse
import sys

from stencil_dse.benchmarks import PROJECTION_ROWS
from stencil_dse.devices import get_device
from stencil_dse.projection import project
from stencil_dse.report import projection_row, render
from stencil_dse.stencil import builtin_spec


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--iter", type=int, default=5000)
    ap.add_argument("--compare", action="store_true", help="add the recorded GB/s next to the model's")
    args = ap.parse_args(argv)

    rows = []
    for r in PROJECTION_ROWS:
        p = project(builtin_spec(r.kind, r.rad), get_device(r.device), r.config(), r.dims, args.iter)
        row = projection_row(p)
        if args.compare:
            row["recorded GB/s"] = r.gbs
            row["recorded redundancy (%)"] = r.redundancy_pct
            row["recorded bits/blocks (%)"] = f"{r.bits_pct}/{r.blocks_pct}"
        rows.append(row)
    sys.stdout.write(render(rows, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
