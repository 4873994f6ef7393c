"""Recorded benchmark rows used as regression targets.

Measured columns need hardware and are kept only where they are inputs to
a model (f_max) or resource fractions the tuner and projection use.
"""
from __future__ import annotations

from dataclasses import dataclass

from .geometry import AccelConfig
from .stencil import StencilKind

D2, D3 = StencilKind.DIFFUSION2D, StencilKind.DIFFUSION3D
H2, H3 = StencilKind.HOTSPOT2D, StencilKind.HOTSPOT3D

SV, A10 = "stratix-v-gxa7", "arria-10-gx1150"
MX, GX = "stratix-10-mx2100", "stratix-10-gx2800"


@dataclass(frozen=True)
class FpgaRow:
    """A measured configuration together with its model estimate."""

    kind: StencilKind
    rad: int
    device: str
    bsize: tuple[int, ...]
    par_time: int
    par_vec: int
    dims: tuple[int, ...]
    f_max_mhz: float
    estimated_gbs: float
    bits_pct: int | None
    blocks_pct: int | None
    dsp_pct: int
    best: bool = False  # best measured configuration for (kind, rad, device)

    def config(self) -> AccelConfig:
        by = self.bsize[1] if len(self.bsize) > 1 else None
        return AccelConfig(self.bsize[0], self.par_time, self.par_vec, by, self.f_max_mhz * 1e6)


def _sq(n, nd=2):
    return (n,) * nd


# first-order stencils, iter = 1000
FIRST_ORDER_ROWS = (
    FpgaRow(D2, 1, SV, (4096,), 6, 8, _sq(16336), 303.39, 116.141, 9, 33, 95),
    FpgaRow(D2, 1, SV, (4096,), 12, 4, _sq(16288), 303.49, 115.360, 14, 40, 95, True),
    FpgaRow(D2, 1, SV, (4096,), 24, 2, _sq(16192), 292.39, 110.894, 22, 52, 95),
    FpgaRow(D2, 1, A10, (4096,), 36, 8, _sq(16096), 337.78, 766.918, 38, 83, 95, True),
    FpgaRow(D2, 1, A10, (4096,), 72, 4, _sq(15808), 306.06, 690.137, 65, 100, 95),
    FpgaRow(H2, 1, SV, (4096,), 6, 8, _sq(16336), 272.47, 153.068, 13, 43, 77),
    FpgaRow(H2, 1, SV, (4096,), 12, 4, _sq(16288), 231.64, 131.977, 21, 53, 77, True),
    FpgaRow(H2, 1, A10, (4096,), 18, 8, _sq(16240), 318.52, 543.622, 30, 46, 95),
    FpgaRow(H2, 1, A10, (4096,), 36, 4, _sq(16096), 333.33, 566.361, 53, 86, 95, True),
    FpgaRow(H2, 1, A10, (4096,), 72, 2, _sq(15808), 317.95, 535.303, 90, 100, 95),
    FpgaRow(D3, 1, SV, (512, 256), 4, 8, (504, 744, 504), 256.14, 64.874, 68, 100, 91),
    FpgaRow(D3, 1, SV, (256, 256), 4, 8, _sq(744, 3), 296.12, 74.194, 36, 67, 91, True),
    FpgaRow(D3, 1, SV, (256, 256), 5, 8, _sq(738, 3), 194.36, 60.533, 44, 81, 100),
    FpgaRow(D3, 1, A10, (256, 256), 12, 16, _sq(696, 3), 285.71, 378.345, 94, 100, 89, True),
    FpgaRow(D3, 1, A10, (256, 128), 20, 8, (648, 704, 648), 300.00, 298.799, 81, 100, 74),
    FpgaRow(D3, 1, A10, (256, 128), 24, 8, (832, 720, 832), 300.00, 326.680, 94, 100, 89),
    FpgaRow(H3, 1, SV, (256, 256), 4, 8, _sq(496, 3), 259.47, 97.522, 68, 100, 100),
    FpgaRow(H3, 1, SV, (256, 128), 8, 4, (720, 560, 720), 263.08, 91.077, 68, 100, 100, True),
    FpgaRow(H3, 1, A10, (256, 128), 8, 16, (720, 560, 720), 250.98, 245.569, 67, 100, 77),
    FpgaRow(H3, 1, A10, (256, 128), 10, 16, (708, 540, 708), 261.91, 298.144, 81, 100, 96),
    FpgaRow(H3, 1, A10, (128, 128), 20, 8, _sq(528, 3), 311.11, 373.169, 81, 100, 97, True),
)

# best configuration per radius for Diffusion; rad 1 repeats the rows above.
# Two Stratix V 3D rows never compiled, so only estimates exist for them.
HIGH_ORDER_ROWS = (
    FpgaRow(D2, 1, SV, (4096,), 12, 4, _sq(16288), 303.49, 115.360, 14, 40, 95, True),
    FpgaRow(D2, 2, SV, (4096,), 6, 4, _sq(16288), 303.39, 58.006, 14, 37, 86, True),
    FpgaRow(D2, 3, SV, (4096,), 4, 4, _sq(16288), 304.50, 38.890, 14, 36, 83, True),
    FpgaRow(D2, 4, SV, (4096,), 7, 2, _sq(16160), 303.58, 33.791, 29, 55, 95, True),
    FpgaRow(D2, 1, A10, (4096,), 36, 8, _sq(16096), 337.78, 766.918, 38, 83, 95, True),
    FpgaRow(D2, 2, A10, (4096,), 42, 4, _sq(15712), 322.22, 422.848, 75, 100, 100, True),
    FpgaRow(D2, 3, A10, (4096,), 28, 4, _sq(15712), 302.56, 264.700, 75, 100, 96, True),
    FpgaRow(D2, 4, A10, (4096,), 22, 4, _sq(15680), 300.00, 205.240, 78, 100, 99, True),
    FpgaRow(D3, 1, SV, (256, 256), 4, 8, _sq(744, 3), 296.12, 74.194, 36, 67, 91, True),
    FpgaRow(D3, 2, SV, (256, 256), 2, 8, _sq(744, 3), 259.33, 32.488, 52, 89, 84, True),
    FpgaRow(D3, 3, SV, (256, 128), 4, 2, (696, 624, 696), 250.00, 14.069, None, None, 63, True),
    FpgaRow(D3, 4, SV, (256, 256), 1, 8, _sq(744, 3), 250.00, 15.660, None, None, 81, True),
    FpgaRow(D3, 1, A10, (256, 256), 12, 16, _sq(696, 3), 285.71, 378.345, 94, 100, 89, True),
    FpgaRow(D3, 2, A10, (256, 128), 6, 16, (696, 728, 696), 262.75, 176.622, 73, 87, 83, True),
    FpgaRow(D3, 3, A10, (256, 128), 4, 16, (696, 728, 696), 255.07, 114.538, 81, 99, 81, True),
    FpgaRow(D3, 4, A10, (256, 128), 3, 16, (696, 728, 696), 242.67, 81.563, 85, 100, 80, True),
)


def closest_multiple(csize: int, target: int) -> int:
    """Multiple of csize nearest to target (ties go down), at least csize."""
    lo = (target // csize) * csize
    hi = lo + csize
    return lo if lo > 0 and target - lo <= hi - target else hi


@dataclass(frozen=True)
class ProjectionRow:
    kind: StencilKind
    rad: int
    device: str
    bsize: tuple[int, ...]
    par_time: int
    par_vec: int
    gbs: float
    gflops: float
    gcells: float
    redundancy_pct: float
    utilized_gbs: float
    utilized_pct: int
    bits_pct: int
    blocks_pct: int
    dsp_pct: int
    dims_override: tuple[int, ...] | None = None
    note: str = ""

    @property
    def dims(self) -> tuple[int, ...]:
        """Input size: each blocked dim is the multiple of its compute block
        closest to 32000 (2D) or 2000 (3D); the 3D streamed dim is 2000 and
        does not affect any projected quantity. A few rows only match with
        other sizes, recorded in `dims_override`.
        """
        if self.dims_override is not None:
            return self.dims_override
        h = self.rad * self.par_time
        if len(self.bsize) == 1:
            d = closest_multiple(self.bsize[0] - 2 * h, 32000)
            return (d, d)
        return tuple(closest_multiple(b - 2 * h, 2000) for b in self.bsize) + (2000,)

    def config(self) -> AccelConfig:
        by = self.bsize[1] if len(self.bsize) > 1 else None
        return AccelConfig(self.bsize[0], self.par_time, self.par_vec, by)


# iter = 5000; efficiency and f_max are the projection defaults
PROJECTION_ROWS = (
    ProjectionRow(D2, 1, MX, (16320,), 8, 96, 2349.504, 2643.192, 293.688, 0.02, 345.6, 68, 20, 67, 97),
    ProjectionRow(D2, 2, MX, (16308,), 4, 108, 1321.596, 2808.390, 165.199, 0.02, 388.8, 76, 20, 67, 98),
    ProjectionRow(D2, 3, MX, (16340,), 4, 76, 929.898, 2905.931, 116.237, 0.04, 273.6, 53, 25, 68, 100),
    ProjectionRow(D2, 4, MX, (16356,), 2, 116, 709.746, 2927.703, 88.718, 0.02, 417.6, 82, 20, 68, 100),
    ProjectionRow(D3, 1, MX, (980, 512), 4, 140, 1066.630, 1733.274, 133.329, 0.80, 448.0, 88, 94, 100, 99),
    ProjectionRow(D3, 2, MX, (592, 512), 2, 148, 562.053, 1756.415, 70.257, 1.12, 473.6, 93, 85, 100, 97,
                  (2336, 2016, 2000), "nearest multiples (1752, 2016) give 1.06% redundancy"),
    ProjectionRow(D3, 3, MX, (364, 256), 4, 52, 370.432, 1713.247, 46.304, 7.81, 166.4, 33, 88, 100, 100),
    ProjectionRow(D3, 4, MX, (468, 512), 1, 156, 295.679, 1811.032, 36.960, 1.30, 499.2, 98, 81, 96, 99,
                  (2300, 2016, 2000), "nearest multiples (1840, 2016) give 1.26% redundancy"),
    ProjectionRow(H2, 1, MX, (16368,), 8, 48, 1761.412, 2201.764, 146.784, 0.07, 259.2, 51, 24, 44, 97,
                  (16384, 16384), "two blocks with a 32-cell tail; the nearest multiple 32704 gives 0.03%"),
    ProjectionRow(H3, 1, MX, (972, 256), 4, 108, 1202.747, 1703.891, 100.229, 2.17, 512.0, 100, 94, 100, 98),
    ProjectionRow(D2, 1, GX, (8192,), 140, 8, 3355.470, 3774.903, 419.434, 1.33, 28.8, 38, 59, 90, 97),
    ProjectionRow(D2, 2, GX, (8192,), 78, 8, 1855.527, 3942.994, 231.941, 1.48, 28.8, 38, 65, 86, 98),
    ProjectionRow(D2, 3, GX, (8192,), 52, 8, 1243.394, 3885.607, 155.424, 1.48, 28.8, 38, 65, 86, 94),
    ProjectionRow(D2, 4, GX, (16384,), 21, 16, 1021.622, 4214.190, 127.703, 0.26, 57.6, 75, 69, 88, 99),
    ProjectionRow(D3, 1, GX, (544, 256), 24, 32, 960.545, 1560.886, 120.068, 14.77, 76.8, 100, 91, 97, 93),
    ProjectionRow(D3, 2, GX, (352, 256), 12, 32, 466.036, 1456.362, 58.254, 18.56, 76.8, 100, 88, 100, 87),
    ProjectionRow(D3, 3, GX, (320, 256), 8, 32, 308.438, 1426.525, 38.555, 19.52, 76.8, 100, 90, 100, 85),
    ProjectionRow(D3, 4, GX, (256, 256), 7, 32, 251.012, 1537.451, 31.377, 28.38, 76.8, 100, 89, 100, 97),
    ProjectionRow(H2, 1, GX, (8192,), 140, 4, 2505.663, 3132.079, 208.805, 1.77, 21.6, 28, 81, 90, 97),
    ProjectionRow(H3, 1, GX, (272, 256), 24, 16, 853.364, 1208.933, 71.114, 29.18, 76.8, 100, 92, 100, 61),
)
