"""Functional block-at-a-time model of the read -> PE chain -> write accelerator."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .geometry import AccelConfig, block_count, compute_block, halo_width, validate_config
from .stencil import DIRECTIONS, F32, Grid, StencilSpec, _check_inputs, evaluate

NAN = F32(np.nan)


@dataclass(frozen=True)
class SimResult:
    output: Grid
    reads: int
    writes: int
    passes: int
    reads_per_pass: tuple[int, ...] = field(default=())
    writes_per_pass: tuple[int, ...] = field(default=())

    def counters_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["pass", "reads", "writes"])
        for i, (r, wr) in enumerate(zip(self.reads_per_pass, self.writes_per_pass)):
            w.writerow([i, r, wr])
        w.writerow(["total", self.reads, self.writes])
        return buf.getvalue()


def poison_check(result: SimResult) -> bool:
    return not bool(np.isnan(result.output.cells).any())


class _Window:
    """One block's view of the grid along every axis (numpy order z, y, x)."""

    def __init__(self, shape, origins, extents, rad):
        self.shape = shape
        self.origins = origins
        self.extents = extents
        self.rad = rad
        # neighbour index tables: global clamp, then NaN when it leaves the window
        self.index = {}
        for direction, (axis, sign) in DIRECTIONS.items():
            ax = len(shape) - 1 - axis
            if ax < 0:
                continue
            g = origins[ax] + np.arange(extents[ax])
            for dist in range(1, rad + 1):
                src = np.clip(g + sign * dist, 0, shape[ax] - 1) - origins[ax]
                src = np.where((src < 0) | (src >= extents[ax]), -1, src)
                self.index[direction, dist] = (ax, src + rad)

    def load(self, arr):
        win = np.full(self.extents, NAN, dtype=F32)
        src, dst = [], []
        for o, e, n in zip(self.origins, self.extents, self.shape):
            lo, hi = max(o, 0), min(o + e, n)
            src.append(slice(lo, hi))
            dst.append(slice(lo - o, hi - o))
        win[tuple(dst)] = arr[tuple(src)]
        in_grid = math.prod(s.stop - s.start for s in src)
        return win, in_grid

    def step(self, spec, cur, power):
        r = self.rad
        padded = np.pad(cur, r, mode="constant", constant_values=NAN)
        centre = tuple(slice(r, r + n) for n in cur.shape)

        def nb(direction, dist):
            ax, idx = self.index[direction, dist]
            sl = list(centre)
            sl[ax] = idx  # r - 1 lands in the NaN padding
            return padded[tuple(sl)]

        with np.errstate(all="ignore"):
            return np.asarray(evaluate(spec, cur, nb, power), dtype=F32)


def _block_origins(dims, csize, halo):
    bnum = [block_count(d, c) for d, c in zip(dims, csize)]
    for idx in np.ndindex(*bnum[::-1]):
        yield tuple(i * c - halo for i, c in zip(idx[::-1], csize))


def simulate(spec: StencilSpec, config: AccelConfig, inputs, iter: int,
             workers: int = 1, halo: int | None = None) -> SimResult:
    """Run `iter` time steps in ceil(iter / par_time) passes over the grid.

    `halo` overrides the block overlap; anything smaller than
    rad * par_time is a deliberately broken walker used for fault injection.
    """
    if iter < 1:
        raise ValueError("iter must be >= 1")
    validate_config(spec, config)
    temp, power = _check_inputs(spec, inputs)
    nd = spec.ndim
    dims = temp.dims
    bsizes = config.bsizes(nd)
    h = halo_width(spec.rad, config.par_time) if halo is None else int(halo)
    csize = tuple(compute_block(b, h) for b in bsizes)
    shape = temp.cells.shape  # (z,) y, x

    blocks = list(_block_origins(dims, csize, h))

    def run_block(cur, origin, steps):
        # numpy axis order: streamed axis first, covering its full extent
        origins = (0,) + tuple(origin[::-1])
        extents = (shape[0],) + tuple(bsizes[::-1])
        win = _Window(shape, origins, extents, spec.rad)
        w, reads = win.load(cur)
        pw = None
        if power is not None:
            pw, preads = win.load(power.cells)
            reads += preads
        for _ in range(steps):
            w = win.step(spec, w, pw)
        # compute block, clipped to the grid
        src, dst = [slice(0, shape[0])], [slice(0, shape[0])]
        for ax in range(1, nd):
            o, n, c = origins[ax], shape[ax], csize[::-1][ax - 1]
            lo, hi = o + h, min(o + h + c, n)
            src.append(slice(lo - o, hi - o))
            dst.append(slice(lo, hi))
        writes = math.prod(s.stop - s.start for s in dst) * spec.num_write
        return tuple(dst), w[tuple(src)], reads, writes

    cur = temp.cells
    passes = -(-iter // config.par_time)
    reads_pp, writes_pp = [], []
    for p in range(passes):
        steps = min(config.par_time, iter - p * config.par_time)
        nxt = np.full(shape, NAN, dtype=F32)
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                results = list(pool.map(lambda o: run_block(cur, o, steps), blocks))
        else:
            results = [run_block(cur, o, steps) for o in blocks]
        reads = writes = 0
        for dst, vals, r, wr in results:
            nxt[dst] = vals
            reads += r
            writes += wr
        reads_pp.append(reads)
        writes_pp.append(writes)
        cur = nxt
    return SimResult(Grid(dims, cur), sum(reads_pp), sum(writes_pp), passes,
                     tuple(reads_pp), tuple(writes_pp))

