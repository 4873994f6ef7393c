"""Binary grid files: 16-byte little-endian header then float32 cells."""
from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import DimsMismatch
from .stencil import Grid

MAGIC = b"SG"
_HEADER = struct.Struct("<2sH3I")


def write_grid(path: str | Path, grid: Grid) -> None:
    dims = list(grid.dims) + [0] * (3 - grid.ndim)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, grid.ndim, *dims))
        fh.write(grid.cells.astype("<f4").tobytes())


def read_grid(path: str | Path) -> Grid:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise DimsMismatch(f"{path}: file too short for a grid header")
    magic, ndim, *dims = _HEADER.unpack_from(raw)
    if magic != MAGIC or ndim not in (2, 3):
        raise DimsMismatch(f"{path}: not a grid file")
    dims = tuple(dims[:ndim])
    body = np.frombuffer(raw, dtype="<f4", offset=_HEADER.size)
    if body.size != int(np.prod(dims)):
        raise DimsMismatch(f"{path}: header says {dims}, found {body.size} cells")
    return Grid(dims, body.astype(np.float32))
