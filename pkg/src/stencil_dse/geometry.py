"""Overlapped spatial/temporal blocking geometry and exact traffic counts."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import BlockTooSmallForHalo, DimsMismatch, InvalidConfig
from .stencil import StencilSpec


@dataclass(frozen=True)
class AccelConfig:
    """One design point. f_max is in Hz and may be left unset for pure geometry."""

    bsize_x: int
    par_time: int
    par_vec: int = 1
    bsize_y: int | None = None
    f_max: float | None = None

    def bsizes(self, ndim: int) -> tuple[int, ...]:
        """Block size along each blocked axis (x for 2D, x and y for 3D)."""
        if ndim == 3:
            if self.bsize_y is None:
                raise InvalidConfig("3D stencils need bsize_y")
            return (self.bsize_x, self.bsize_y)
        return (self.bsize_x,)

    def label(self, ndim: int) -> str:
        b = "x".join(str(v) for v in self.bsizes(ndim))
        return f"({b}, {self.par_time}, {self.par_vec})"


def validate_config(spec: StencilSpec, config: AccelConfig) -> None:
    if config.par_time < 1 or config.par_vec < 1:
        raise InvalidConfig("par_time and par_vec must be >= 1")
    bsizes = config.bsizes(spec.ndim)
    if any(b < 1 for b in bsizes):
        raise InvalidConfig("block sizes must be positive")
    if config.bsize_x % config.par_vec:
        raise InvalidConfig(f"bsize_x={config.bsize_x} not divisible by par_vec={config.par_vec}")
    h = halo_width(spec.rad, config.par_time)
    for b in bsizes:
        compute_block(b, h)


def halo_width(rad: int, par_time: int) -> int:
    return rad * par_time


def compute_block(bsize: int, size_halo: int) -> int:
    csize = bsize - 2 * size_halo
    if csize <= 0:
        raise BlockTooSmallForHalo(f"bsize={bsize} leaves no compute block with halo {size_halo}")
    return csize


def block_count(dim: int, csize: int) -> int:
    return -(-dim // csize)


def shift_reg_size(spec: StencilSpec, config: AccelConfig) -> int:
    """Cells held on chip by one PE's line buffer."""
    plane = math.prod(config.bsizes(spec.ndim))
    return 2 * spec.rad * plane + config.par_vec


ALIGN_FULL = "full"
ALIGN_HALF = "half"
ALIGN_UNALIGNED = "unaligned"


def alignment_status(rad: int, par_time: int, bsizes: Sequence[int], dims: Sequence[int],
                     size_cell: int = 4, padded: bool = True,
                     half_multiple: int = 2) -> tuple[str, int]:
    """Classify memory-access alignment; returns (status, padding in cells).

    Accesses are 512-bit wide. Padding the buffers by the halo remainder
    relaxes the halo requirement to 256-bit boundaries. `full` needs every
    condition; otherwise a halo that is a multiple of `half_multiple`
    gives `half` and anything else `unaligned`.
    """
    word = 64 // size_cell  # cells per 512-bit access
    halo = rad * par_time
    padding = halo % word if padded else 0
    halo_unit = word // 2 if padded else word
    sizes_ok = all(b % word == 0 for b in bsizes) and all(d % word == 0 for d in dims)
    if sizes_ok and halo % halo_unit == 0:
        return ALIGN_FULL, padding
    if sizes_ok and halo % half_multiple == 0:
        return ALIGN_HALF, padding
    return ALIGN_UNALIGNED, padding


@dataclass(frozen=True)
class BlockGeometry:
    size_halo: int
    csize: tuple[int, ...]
    bnum: tuple[int, ...]
    trav: tuple[int, ...]
    size_input: int
    t_cell: int
    t_read: int
    t_write: int
    padding: int
    regular: bool = True


def read_extent(dim: int, bsize: int, size_halo: int) -> int:
    """In-grid cells covered by all block windows along one blocked axis."""
    csize = compute_block(bsize, size_halo)
    total = 0
    for i in range(block_count(dim, csize)):
        lo = i * csize - size_halo
        total += min(lo + bsize, dim) - max(lo, 0)
    return total


def closed_form_extent(dim: int, bsize: int, size_halo: int) -> int:
    """bnum*bsize minus the traversal overhang, i.e. dim + 2*halo*(bnum - 1).

    Exact only when no window other than the first and last leaves the
    grid; see ``is_regular``.
    """
    csize = compute_block(bsize, size_halo)
    bnum = block_count(dim, csize)
    trav = bnum * csize + 2 * size_halo
    return bnum * bsize - (trav - dim)


def is_regular(dim: int, bsize: int, size_halo: int) -> bool:
    csize = compute_block(bsize, size_halo)
    bnum = block_count(dim, csize)
    if bnum == 1:
        return True
    return csize >= size_halo and dim - (bnum - 1) * csize >= size_halo


def traffic(spec: StencilSpec, config: AccelConfig, dims: Sequence[int]) -> BlockGeometry:
    """Cells processed, read and written in one pass over the grid.

    Reads skip out-of-grid window cells, so per blocked axis the read span
    is the in-grid part of every block window; spans multiply across
    blocked axes and the streamed axis is read once. On regular geometries
    the span equals dim + 2*halo*(bnum - 1).
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) != spec.ndim or any(d < 1 for d in dims):
        raise DimsMismatch(f"{spec.name} needs {spec.ndim} positive dims, got {dims}")
    validate_config(spec, config)
    bsizes = config.bsizes(spec.ndim)
    h = halo_width(spec.rad, config.par_time)
    csize = tuple(compute_block(b, h) for b in bsizes)
    bnum = tuple(block_count(d, c) for d, c in zip(dims, csize))
    trav = tuple(n * c + 2 * h for n, c in zip(bnum, csize))
    streamed = dims[-1]
    size_input = math.prod(dims)

    t_cell = math.prod(n * b for n, b in zip(bnum, bsizes)) * streamed
    regular = all(is_regular(d, b, h) for d, b in zip(dims, bsizes))
    if regular:
        # processed span minus the part hanging off the grid
        spans = [n * b - (t - d) for n, b, t, d in zip(bnum, bsizes, trav, dims)]
    else:
        spans = [read_extent(d, b, h) for d, b in zip(dims, bsizes)]
    t_read = math.prod(spans) * streamed * spec.num_read
    t_write = spec.num_write * size_input
    _, padding = alignment_status(spec.rad, config.par_time, bsizes, dims, spec.size_cell)
    return BlockGeometry(h, csize, bnum, trav, size_input, t_cell, t_read, t_write,
                         padding, regular)
