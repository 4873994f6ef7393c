"""Cycle-count model of a generic FPGA pipeline."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def _exact(x):
    # keep integer/rational inputs exact, everything else as float
    return Fraction(x) if isinstance(x, Rational) else float(x)


def _tidy(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True)
class PipelineSpec:
    P: float
    L: int
    N_d: float = 0
    N_b: float = 0
    N_m: float = 0
    BW: float = 1
    f_max: float = 1.0

    def __post_init__(self):
        if min(self.P, self.N_d, self.N_b, self.N_m, self.BW) < 0:
            raise ValueError("pipeline parameters must be nonnegative")
        if self.L < 1:
            raise ValueError("L must be >= 1")
        if self.f_max <= 0:
            raise ValueError("f_max must be positive")


@dataclass(frozen=True)
class ParallelSpec:
    P_prime: float
    N_p: int = 1

    def __post_init__(self):
        if self.N_p < 1:
            raise ValueError("N_p must be >= 1")


def cycles(P, II, L):
    """Depth plus one initiation interval per extra input."""
    if L < 1:
        raise ValueError("L must be >= 1")
    return _tidy(_exact(P) + _exact(II) * (_exact(L) - 1))


def cycles_swi(P, N_d, L):
    return cycles(P, _exact(N_d) + 1, L)


def cycles_ndrange(P, N_b, L):
    return cycles(P, _exact(N_b) + 1, L)


def seconds(cycles, f_max):
    if f_max <= 0:
        raise ValueError("f_max must be positive")
    return float(cycles) / float(f_max)


def ii_lower_bound(dep, N_m, BW, N_p=1):
    """max(dep + 1, N_m * N_p / BW); `dep` is N_d or N_b."""
    if BW <= 0:
        raise ValueError("BW must be positive")
    return _tidy(max(_exact(dep) + 1, _exact(N_m) * _exact(N_p) / _exact(BW)))


def cycles_parallel(P_prime, II, L, N_p):
    if N_p < 1:
        raise ValueError("N_p must be >= 1")
    if L < N_p:
        raise ValueError("L must be >= N_p")
    return _tidy(_exact(P_prime) + _exact(II) * (_exact(L) - _exact(N_p)) / _exact(N_p))
