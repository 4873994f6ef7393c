"""FPGA board descriptions."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

M20K_BITS = 20480


@dataclass(frozen=True)
class DeviceSpec:
    name: str
    num_banks: int
    size_bus: int  # bits per bank
    f_mem: float  # effective transfer rate, Hz
    dsp_total: int
    bram_blocks: int
    bram_bits: int
    bsp_bram_overhead: float = 12.0  # percent of blocks held by the board support package
    c_2d: int = 4
    c_3d: int = 8
    memory: str = "DDR"
    par_time_cap: int | None = None

    def __post_init__(self):
        if min(self.num_banks, self.size_bus, self.f_mem, self.bram_blocks, self.bram_bits) <= 0:
            raise ValueError(f"{self.name}: memory and BRAM parameters must be positive")
        if self.dsp_total < 0:
            raise ValueError(f"{self.name}: dsp_total must be >= 0")
        if not 0 <= self.bsp_bram_overhead < 100:
            raise ValueError(f"{self.name}: bsp_bram_overhead must be in [0, 100)")
        if self.memory not in ("DDR", "HBM"):
            raise ValueError(f"{self.name}: memory must be DDR or HBM")

    def overhead_dsp(self, ndim: int) -> int:
        return self.c_3d if ndim == 3 else self.c_2d

    def to_dict(self) -> dict:
        return asdict(self)


def _m20k(name, banks, bus, f_mem, dsp, blocks, bsp, memory="DDR", cap=None):
    return DeviceSpec(name, banks, bus, f_mem, dsp, blocks, blocks * M20K_BITS, bsp,
                      memory=memory, par_time_cap=cap)


BUILTIN_DEVICES = {
    # logic, not DSPs, limits Stratix V; the par_time cap stands in for it
    "stratix-v-gxa7": _m20k("Stratix V GX A7", 2, 64, 1600e6, 256, 2560, 12.0, cap=12),
    "arria-10-gx1150": _m20k("Arria 10 GX 1150", 2, 64, 2133e6, 1518, 2713, 12.0),
    # 32 HBM2 pseudo-channels of 128 bits at 1 GT/s
    "stratix-10-mx2100": _m20k("Stratix 10 MX 2100", 32, 128, 1000e6, 3960, 6847, 10.0, "HBM"),
    "stratix-10-gx2800": _m20k("Stratix 10 GX 2800", 4, 64, 2400e6, 5760, 11721, 10.0),
}

ALIASES = {
    "sv": "stratix-v-gxa7", "stratixv": "stratix-v-gxa7",
    "a10": "arria-10-gx1150", "arria10": "arria-10-gx1150",
    "mx2100": "stratix-10-mx2100", "s10mx": "stratix-10-mx2100",
    "gx2800": "stratix-10-gx2800", "s10gx": "stratix-10-gx2800",
}


def get_device(name: str) -> DeviceSpec:
    """Resolve a built-in name/alias or load a JSON file."""
    key = name.strip().lower()
    key = ALIASES.get(key, key)
    if key in BUILTIN_DEVICES:
        return BUILTIN_DEVICES[key]
    path = Path(name)
    if path.suffix == ".json" or path.exists():
        return load_device(path)
    raise KeyError(f"unknown device {name!r}; built-ins: {', '.join(BUILTIN_DEVICES)}")


def load_device(path: str | Path) -> DeviceSpec:
    with open(path) as fh:
        data = json.load(fh)
    if "bram_bits" not in data and "bram_blocks" in data:
        data["bram_bits"] = data["bram_blocks"] * M20K_BITS
    return DeviceSpec(**data)
