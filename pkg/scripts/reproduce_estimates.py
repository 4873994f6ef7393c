"""Re-run the performance model on every recorded FPGA configuration and compare."""
import argparse
import sys

from stencil_dse.benchmarks import FIRST_ORDER_ROWS, HIGH_ORDER_ROWS
from stencil_dse.devices import get_device
from stencil_dse.perf import predict
from stencil_dse.report import render
from stencil_dse.stencil import builtin_spec


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--tolerance", type=float, default=0.005)
    args = ap.parse_args(argv)

    rows, worst = [], 0.0
    for r in FIRST_ORDER_ROWS + HIGH_ORDER_ROWS:
        spec = builtin_spec(r.kind, r.rad)
        est = predict(get_device(r.device), spec, r.config(), r.dims, 1000)
        err = est.throughput / r.estimated_gbs - 1
        worst = max(worst, abs(err))
        rows.append({
            "stencil": r.kind.value, "rad": r.rad, "device": r.device,
            "config": r.config().label(spec.ndim), "dims": "x".join(map(str, r.dims)),
            "f_max (MHz)": r.f_max_mhz, "recorded GB/s": r.estimated_gbs,
            "model GB/s": round(est.throughput, 3), "error (%)": round(100 * err, 3),
        })
    sys.stdout.write(render(rows, args.format))
    print(f"# worst error {100 * worst:.3f}% over {len(rows)} rows", file=sys.stderr)
    return 0 if worst <= args.tolerance else 1


if __name__ == "__main__":
    sys.exit(main())
