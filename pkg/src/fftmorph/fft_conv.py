"""N-dimensional full-mode integer convolution: direct summation and FFT.

The two backends are interchangeable: within the precision budget the FFT
path reproduces the direct path bit-exactly after rounding.  The direct path
is a plain shift-and-accumulate sum and serves as the oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.fft

from .tensor import OffsetArray, full_output_range

# Double precision recovers integers exactly up to 2^53; keep one bit of slack.
PRECISION_BUDGET = 2**52

# Pre-rounding deviations must stay well under the 0.5 correctness boundary.
MAX_DEVIATION = 0.25

_workers = 1


def set_fft_workers(n: int) -> None:
    """Worker count passed to the FFT backend (1 = serial)."""
    global _workers
    _workers = max(1, int(n))


def get_fft_workers() -> int:
    return _workers


class PrecisionBudgetError(ValueError):
    """The exact result could exceed what double-precision FFT recovers."""


class Backend(enum.Enum):
    DIRECT = "direct"
    FFT = "fft"


@dataclass(frozen=True)
class ConvPlan:
    padded_shape: tuple[int, ...]
    out_lo: tuple[int, ...]
    out_hi: tuple[int, ...]
    backend: Backend


@dataclass(frozen=True)
class FftStats:
    """Diagnostics from one FFT convolution."""
    max_abs_deviation: float
    padded_shape: tuple[int, ...]


def next_fast_size(n: int) -> int:
    """Smallest transform length >= n from a near-sqrt(2) ladder of 2-3-5-smooth
    sizes (2^k and 45*2^k).

    The coarse ladder keeps transform cost nearly independent of small changes
    in the required length, so e.g. a filter-size sweep at fixed image size
    lands on one padded size throughout.
    """
    if n < 1:
        raise ValueError("length must be positive")
    pow2 = 1
    while pow2 < n:
        pow2 *= 2
    alt = 45
    while alt < n:
        alt *= 2
    return min(pow2, alt)


def make_plan(a: OffsetArray, b: OffsetArray, backend: Backend) -> ConvPlan:
    if a.ndim != b.ndim:
        raise ValueError("rank mismatch")
    out_ranges = full_output_range(a.ranges, b.ranges)
    padded = tuple(next_fast_size(sa + sb - 1)
                   for sa, sb in zip(a.shape, b.shape))
    return ConvPlan(
        padded_shape=padded,
        out_lo=tuple(lo for lo, _ in out_ranges),
        out_hi=tuple(hi for _, hi in out_ranges),
        backend=backend,
    )


def direct_full(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Full-mode convolution of raw arrays by shift-and-accumulate, exact in int64."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out_shape = tuple(sa + sb - 1 for sa, sb in zip(a.shape, b.shape))
    out = np.zeros(out_shape, dtype=np.int64)
    for idx in np.ndindex(*b.shape):
        w = b[idx]
        if w == 0:
            continue
        sl = tuple(slice(i, i + sa) for i, sa in zip(idx, a.shape))
        out[sl] += w * a
    return out


def conv_full_direct(a: OffsetArray, b: OffsetArray) -> OffsetArray:
    plan = make_plan(a, b, Backend.DIRECT)
    return OffsetArray(direct_full(a.data, b.data), plan.out_lo)


def check_precision_budget(a: np.ndarray, b: np.ndarray) -> None:
    """Reject inputs whose exact convolution magnitude could reach 2^52.

    Bound used: min(sum|a| * max|b|, sum|b| * max|a|), an upper bound on
    max_k sum_i |a[i] b[k-i]|.
    """
    abs_a = np.abs(a, dtype=np.float64)
    abs_b = np.abs(b, dtype=np.float64)
    bound = min(abs_a.sum() * abs_b.max(), abs_b.sum() * abs_a.max())
    if bound >= PRECISION_BUDGET:
        raise PrecisionBudgetError(
            f"magnitude bound {bound:.3e} >= 2^52; use the direct backend")


def conv_full_fft_with_stats(a: OffsetArray, b: OffsetArray) -> tuple[OffsetArray, FftStats]:
    check_precision_budget(a.data, b.data)
    plan = make_plan(a, b, Backend.FFT)
    out_shape = tuple(h - l + 1 for l, h in zip(plan.out_lo, plan.out_hi))

    fa = scipy.fft.rfftn(a.data.astype(np.float64), s=plan.padded_shape,
                         workers=_workers)
    fb = scipy.fft.rfftn(b.data.astype(np.float64), s=plan.padded_shape,
                         workers=_workers)
    fa *= fb
    del fb
    full = scipy.fft.irfftn(fa, s=plan.padded_shape, workers=_workers)
    del fa

    sliced = full[tuple(slice(0, n) for n in out_shape)]
    rounded = np.rint(sliced)
    dev = float(np.abs(sliced - rounded).max())
    if dev >= MAX_DEVIATION:
        raise ArithmeticError(
            f"pre-rounding deviation {dev:.3g} >= {MAX_DEVIATION}; "
            "precision budget logic is broken")
    out = OffsetArray(rounded.astype(np.int64), plan.out_lo)
    return out, FftStats(max_abs_deviation=dev, padded_shape=plan.padded_shape)


def conv_full_fft(a: OffsetArray, b: OffsetArray) -> OffsetArray:
    out, _ = conv_full_fft_with_stats(a, b)
    return out


def transform_forward(a: np.ndarray, plan: ConvPlan) -> np.ndarray:
    """Multidimensional DFT of a real array, zero-padded to the plan's shape."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != len(plan.padded_shape):
        raise ValueError("rank mismatch with plan")
    if any(s > p for s, p in zip(a.shape, plan.padded_shape)):
        raise ValueError("input exceeds the planned transform size")
    axes = tuple(range(len(plan.padded_shape)))
    return np.fft.fftn(a, s=plan.padded_shape, axes=axes)


def transform_inverse(spec: np.ndarray, plan: ConvPlan) -> np.ndarray:
    if spec.shape != plan.padded_shape:
        raise ValueError("spectrum shape does not match plan")
    return np.fft.ifftn(spec)
