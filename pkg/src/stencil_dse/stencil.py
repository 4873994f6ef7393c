"""Benchmark stencils, the grid container, and the reference executor."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    CoordOutOfBounds,
    DimsMismatch,
    HotspotHighOrder,
    MissingCoefficient,
    RadiusOutOfRange,
)

F32 = np.float32
SIZE_CELL = 4
MAX_RAD = 4

# direction -> (axis in (x, y, z) order, sign of the offset)
DIRECTIONS = {
    "w": (0, -1),
    "e": (0, +1),
    "n": (1, -1),
    "s": (1, +1),
    "a": (2, -1),
    "b": (2, +1),
}


class StencilKind(enum.Enum):
    DIFFUSION2D = "diffusion2d"
    DIFFUSION3D = "diffusion3d"
    HOTSPOT2D = "hotspot2d"
    HOTSPOT3D = "hotspot3d"

    @property
    def ndim(self) -> int:
        return 3 if self.value.endswith("3d") else 2

    @property
    def is_hotspot(self) -> bool:
        return self.value.startswith("hotspot")

    @classmethod
    def parse(cls, name: "str | StencilKind") -> "StencilKind":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "").replace("-", "").replace(" ", "")
        for k in cls:
            if k.value == key:
                return k
        raise ValueError(f"unknown stencil kind {name!r}")


def _neighbour_dirs(kind: StencilKind) -> tuple[str, ...]:
    # order in which neighbour terms are accumulated for Diffusion
    return ("w", "e", "s", "n", "b", "a") if kind.ndim == 3 else ("w", "e", "s", "n")


_HOTSPOT_PARAMS = {
    StencilKind.HOTSPOT2D: ("sdc", "R_x", "R_y", "R_z", "TEMP_AMB"),
    StencilKind.HOTSPOT3D: ("c_c", "c_w", "c_e", "c_s", "c_n", "c_b", "c_a", "sdc", "TEMP_AMB"),
}


@dataclass(frozen=True)
class StencilSpec:
    """One stencil: shape, radius, float32 coefficients and per-update costs.

    Diffusion coefficients are stored per direction as a tuple indexed by
    neighbour distance minus one; Hotspot parameters are scalars.
    """

    kind: StencilKind
    rad: int
    coeffs: Mapping[str, object] = field(default_factory=dict)

    @property
    def ndim(self) -> int:
        return self.kind.ndim

    @property
    def num_read(self) -> int:
        return 2 if self.kind.is_hotspot else 1

    @property
    def num_write(self) -> int:
        return 1

    @property
    def num_acc(self) -> int:
        return self.num_read + self.num_write

    @property
    def size_cell(self) -> int:
        return SIZE_CELL

    @property
    def flop_per_cell(self) -> int:
        return {
            StencilKind.DIFFUSION2D: 8 * self.rad + 1,
            StencilKind.DIFFUSION3D: 12 * self.rad + 1,
            StencilKind.HOTSPOT2D: 15,
            StencilKind.HOTSPOT3D: 17,
        }[self.kind]

    @property
    def bytes_per_cell(self) -> int:
        return self.num_acc * self.size_cell

    @property
    def name(self) -> str:
        return self.kind.value

    def to_dict(self) -> dict:
        out = {}
        for k, v in self.coeffs.items():
            out[k] = [float(x) for x in v] if isinstance(v, tuple) else float(v)
        return {"kind": self.kind.value, "rad": self.rad, "coeffs": out}


def builtin_spec(kind, rad: int, params: Mapping[str, object] | None = None) -> StencilSpec:
    """Build a validated spec; `params` maps coefficient names to values.

    A Diffusion neighbour coefficient may be a scalar (same weight at every
    distance) or a sequence of length `rad`. Missing params fall back to
    ``default_params`` only when `params` is None.
    """
    kind = StencilKind.parse(kind)
    if not isinstance(rad, (int, np.integer)) or isinstance(rad, bool) or not 1 <= rad <= MAX_RAD:
        raise RadiusOutOfRange(f"rad must be in 1..{MAX_RAD}, got {rad!r}")
    rad = int(rad)
    if kind.is_hotspot and rad != 1:
        raise HotspotHighOrder(f"{kind.value} only supports rad=1, got {rad}")
    if params is None:
        params = default_params(kind, rad)

    coeffs: dict[str, object] = {}
    if kind.is_hotspot:
        for name in _HOTSPOT_PARAMS[kind]:
            if name not in params:
                raise MissingCoefficient(f"{kind.value} needs {name!r}")
            coeffs[name] = F32(params[name])
    else:
        if "c_c" not in params:
            raise MissingCoefficient(f"{kind.value} needs 'c_c'")
        coeffs["c_c"] = F32(params["c_c"])
        for d in _neighbour_dirs(kind):
            name = f"c_{d}"
            if name not in params:
                raise MissingCoefficient(f"{kind.value} needs {name!r}")
            v = params[name]
            if np.ndim(v) == 0:
                vals = (F32(v),) * rad
            else:
                vals = tuple(F32(x) for x in v)
                if len(vals) < rad:
                    raise MissingCoefficient(f"{name} has {len(vals)} entries, rad={rad}")
                vals = vals[:rad]
            coeffs[name] = vals
    return StencilSpec(kind, rad, coeffs)


def default_params(kind, rad: int = 1) -> dict:
    """Coefficient set used by the built-in fixtures."""
    kind = StencilKind.parse(kind)
    if kind is StencilKind.HOTSPOT2D:
        return {"sdc": 0.34, "R_x": 0.1, "R_y": 0.1, "R_z": 0.0125, "TEMP_AMB": 80.0}
    if kind is StencilKind.HOTSPOT3D:
        return {"c_c": 0.45, "c_w": 0.1, "c_e": 0.1, "c_s": 0.1, "c_n": 0.1,
                "c_b": 0.05, "c_a": 0.05, "sdc": 0.02, "TEMP_AMB": 80.0}
    dirs = _neighbour_dirs(kind)
    # weights decay with distance and sum to one with the centre
    w = [0.5 / (len(dirs) * (2 ** i)) for i in range(rad)]
    total = len(dirs) * sum(w)
    out = {f"c_{d}": w for d in dirs}
    out["c_c"] = 1.0 - total
    return out


def load_stencil(path: str | Path) -> StencilSpec:
    with open(path) as fh:
        data = json.load(fh)
    return stencil_from_dict(data)


def stencil_from_dict(data: Mapping) -> StencilSpec:
    try:
        kind, rad = data["kind"], data["rad"]
    except KeyError as exc:
        raise MissingCoefficient(f"stencil config lacks {exc.args[0]!r}") from None
    return builtin_spec(kind, rad, data.get("coeffs"))


@dataclass(frozen=True, eq=False)
class Grid:
    """Dense float32 field; `dims` is (dim_x, dim_y[, dim_z]), x fastest."""

    dims: tuple[int, ...]
    cells: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) not in (2, 3) or any(d < 1 for d in dims):
            raise DimsMismatch(f"bad grid dims {self.dims!r}")
        arr = np.asarray(self.cells, dtype=F32)
        if arr.size != int(np.prod(dims)):
            raise DimsMismatch(f"{arr.size} cells for dims {dims}")
        arr = np.array(arr.reshape(dims[::-1]), dtype=F32, copy=True)
        arr.flags.writeable = False
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "cells", arr)

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return int(self.cells.size)

    def __eq__(self, other):
        # bitwise comparison, so NaN payloads and signed zeros count
        if not isinstance(other, Grid):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(
            self.cells.view(np.uint32), other.cells.view(np.uint32))

    __hash__ = None

    @classmethod
    def filled(cls, dims, value: float) -> "Grid":
        return cls(dims, np.full(tuple(dims)[::-1], value, dtype=F32))

    @classmethod
    def random(cls, dims, seed=0, low=0.0, high=1.0) -> "Grid":
        rng = np.random.default_rng(seed)
        return cls(dims, rng.uniform(low, high, size=tuple(dims)[::-1]).astype(F32))


def _check_inputs(spec: StencilSpec, inputs) -> tuple[Grid, Grid | None]:
    if isinstance(inputs, Grid):
        inputs = (inputs,)
    inputs = tuple(inputs)
    if len(inputs) != spec.num_read:
        raise DimsMismatch(f"{spec.name} takes {spec.num_read} input grid(s), got {len(inputs)}")
    temp = inputs[0]
    power = inputs[1] if spec.kind.is_hotspot else None
    if temp.ndim != spec.ndim:
        raise DimsMismatch(f"{spec.name} needs a {spec.ndim}D grid, got dims {temp.dims}")
    if power is not None and power.dims != temp.dims:
        raise DimsMismatch(f"power dims {power.dims} differ from temperature dims {temp.dims}")
    return temp, power


def evaluate(spec: StencilSpec, f_c, nb, power_c=None):
    """The update equation in its fixed evaluation order.

    `nb(direction, distance)` returns neighbour values; works on numpy
    scalars and arrays alike.
    """
    c = spec.coeffs
    kind = spec.kind
    if kind is StencilKind.HOTSPOT2D:
        two = F32(2.0)
        f_n, f_s, f_e, f_w = nb("n", 1), nb("s", 1), nb("e", 1), nb("w", 1)
        return f_c + c["sdc"] * (
            ((power_c + (f_n + f_s - two * f_c) * c["R_y"])
             + (f_e + f_w - two * f_c) * c["R_x"])
            + (c["TEMP_AMB"] - f_c) * c["R_z"])
    if kind is StencilKind.HOTSPOT3D:
        acc = c["c_c"] * f_c
        for d in ("n", "s", "e", "w", "a", "b"):
            acc = acc + c[f"c_{d}"] * nb(d, 1)
        return acc + c["sdc"] * (power_c + c["c_a"] * c["TEMP_AMB"])
    dirs = _neighbour_dirs(kind)
    acc = c["c_c"] * f_c
    for i in range(1, spec.rad + 1):
        term = c[f"c_{dirs[0]}"][i - 1] * nb(dirs[0], i)
        for d in dirs[1:]:
            term = term + c[f"c_{d}"][i - 1] * nb(d, i)
        acc = acc + term
    return acc


def apply_point(spec: StencilSpec, inputs, coord: Sequence[int]) -> np.float32:
    """Update one cell at `coord` = (x, y[, z]) with clamped borders."""
    temp, power = _check_inputs(spec, inputs)
    coord = tuple(int(v) for v in coord)
    if len(coord) != temp.ndim or any(not 0 <= v < d for v, d in zip(coord, temp.dims)):
        raise CoordOutOfBounds(f"coord {coord} outside grid {temp.dims}")
    arr = temp.cells

    def at(pos):
        clamped = tuple(min(max(p, 0), d - 1) for p, d in zip(pos, temp.dims))
        return arr[clamped[::-1]]

    def nb(direction, dist):
        axis, sign = DIRECTIONS[direction]
        pos = list(coord)
        pos[axis] += sign * dist
        return at(pos)

    power_c = power.cells[coord[::-1]] if power is not None else None
    with np.errstate(all="ignore"):
        return F32(evaluate(spec, arr[coord[::-1]], nb, power_c))


def step(spec: StencilSpec, cur: np.ndarray, power: np.ndarray | None = None) -> np.ndarray:
    """One time step over a whole array (numpy axis order z, y, x)."""
    r = spec.rad
    padded = np.pad(cur, r, mode="edge")
    centre = tuple(slice(r, r + n) for n in cur.shape)
    nd = cur.ndim

    def nb(direction, dist):
        axis, sign = DIRECTIONS[direction]
        ax = nd - 1 - axis
        sl = list(centre)
        sl[ax] = slice(r + sign * dist, r + sign * dist + cur.shape[ax])
        return padded[tuple(sl)]

    with np.errstate(all="ignore"):
        return np.asarray(evaluate(spec, cur, nb, power), dtype=F32)


def oracle_run(spec: StencilSpec, inputs, iter: int) -> Grid:
    if iter < 1:
        raise ValueError("iter must be >= 1")
    temp, power = _check_inputs(spec, inputs)
    cur = temp.cells
    pw = power.cells if power is not None else None
    for _ in range(int(iter)):
        cur = step(spec, cur, pw)
    return Grid(temp.dims, cur)
