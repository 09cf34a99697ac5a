"""Grayscale morphological operators.

Two routes to dilation: a sliding max over structuring-element offsets
(``dilate_naive``, the oracle) and the exact tonal-lift pipeline
(``dilate_fft``: lift both grids to 0/1 volumes, convolve in full mode via
FFT, project the top nonzero tonal index).  Erosion comes from dilation by
duality (negate the image, reflect the filter).

Both operators return results over the image domain by default; pass
``crop=False`` for the uncropped Minkowski-range result.  Pixels where no
image/filter pair overlaps get the neutral value (0 for dilation, the tonal
ceiling for erosion); ``return_validity=True`` additionally returns the mask
of pixels whose value came from at least one real pair.
"""

from __future__ import annotations

import enum

import numpy as np

from . import fft_conv
from .tensor import full_output_range, intersect_ranges
from .umbra import CountVolume, GridFunction, build_umbra, project_with_validity, required_lr

# Sentinel magnitude for "no pair yet"; far outside any reachable value.
_BIG = np.int64(1) << 40


class MorphMethod(enum.Enum):
    NAIVE = "naive"
    FFT_UMBRA = "fft"

    @classmethod
    def parse(cls, name) -> "MorphMethod":
        if isinstance(name, cls):
            return name
        for m in cls:
            if name in (m.value, m.name, m.name.lower()):
                return m
        raise ValueError(f"unknown method {name!r}")


def _se_entries(b: GridFunction):
    """(offset-coordinates, value) pairs for the defined filter entries."""
    coords = np.argwhere(b.defined)
    vals = b.values[tuple(coords.T)]
    return coords, vals


def _paste(f_ranges, src, src_ranges, fill):
    """Embed src (over src_ranges) into an array over f_ranges, filled elsewhere."""
    shape = tuple(hi - lo + 1 for lo, hi in f_ranges)
    out = np.full(shape, fill, dtype=src.dtype)
    inter = intersect_ranges(f_ranges, src_ranges)
    if inter is not None:
        dst_sl = tuple(slice(lo - flo, hi - flo + 1)
                       for (lo, hi), (flo, _) in zip(inter, f_ranges))
        src_sl = tuple(slice(lo - slo, hi - slo + 1)
                       for (lo, hi), (slo, _) in zip(inter, src_ranges))
        out[dst_sl] = src[src_sl]
    return out


def dilate_naive(f: GridFunction, b: GridFunction, *, crop: bool = True,
                 return_validity: bool = False):
    """Sliding max of f(x-y)+b(y) over all defined pairs."""
    out_ranges = full_output_range(f.ranges, b.ranges)
    shape = tuple(hi - lo + 1 for lo, hi in out_ranges)
    acc = np.full(shape, -_BIG, dtype=np.int64)
    fv = np.where(f.defined, f.values, -_BIG)
    coords, vals = _se_entries(b)
    for idx, w in zip(coords, vals):
        sl = tuple(slice(i, i + n) for i, n in zip(idx, f.shape))
        np.maximum(acc[sl], fv + w, out=acc[sl])
    valid = acc > -(_BIG >> 1)
    values = np.where(valid, acc, np.int64(0))
    if crop:
        values = _paste(f.ranges, values, out_ranges, np.int64(0))
        valid = _paste(f.ranges, valid, out_ranges, False)
        out_ranges = f.ranges
    tonal_max = max(f.tonal_max + b.max_defined(), 1)
    g = GridFunction(values, lo=tuple(lo for lo, _ in out_ranges),
                     tonal_max=tonal_max, signed=f.signed)
    return (g, valid) if return_validity else g


def erode_naive(f: GridFunction, b: GridFunction, *, crop: bool = True,
                return_validity: bool = False):
    """Sliding min of f(x+y)-b(y); partial overlap at borders, neutral value
    ``f.tonal_max`` where no pair exists.  Values may go negative."""
    out_ranges = tuple((flo - bhi, fhi - blo)
                       for (flo, fhi), (blo, bhi) in zip(f.ranges, b.ranges))
    shape = tuple(hi - lo + 1 for lo, hi in out_ranges)
    acc = np.full(shape, _BIG, dtype=np.int64)
    fv = np.where(f.defined, f.values, _BIG)
    coords, vals = _se_entries(b)
    for idx, w in zip(coords, vals):
        # SE entry at logical y contributes f(x+y): shift by hiB - y per axis.
        off = tuple(bhi - (blo + i)
                    for i, (blo, bhi) in zip(idx, b.ranges))
        sl = tuple(slice(o, o + n) for o, n in zip(off, f.shape))
        np.minimum(acc[sl], fv - w, out=acc[sl])
    valid = acc < (_BIG >> 1)
    neutral = np.int64(f.tonal_max)
    values = np.where(valid, acc, neutral)
    if crop:
        values = _paste(f.ranges, values, out_ranges, neutral)
        valid = _paste(f.ranges, valid, out_ranges, False)
        out_ranges = f.ranges
    g = GridFunction(values, lo=tuple(lo for lo, _ in out_ranges),
                     tonal_max=f.tonal_max, signed=True)
    return (g, valid) if return_validity else g


def dilate_fft(f: GridFunction, b: GridFunction, *, crop: bool = True,
               return_validity: bool = False, stats: dict | None = None):
    """Exact dilation via the tonal lift; equals dilate_naive pixel for pixel."""
    if f.min_defined() < 0 or b.min_defined() < 0:
        raise ValueError("tonal lift needs non-negative values")
    l_r = required_lr(f, b)
    fu = build_umbra(f, l_r)
    bu = build_umbra(b, l_r)
    counts, fft_stats = fft_conv.conv_full_fft_with_stats(fu.bits, bu.bits)
    if stats is not None:
        stats["max_abs_deviation"] = max(stats.get("max_abs_deviation", 0.0),
                                         fft_stats.max_abs_deviation)
        stats["padded_shape"] = fft_stats.padded_shape
    volume = CountVolume(counts, l_r)
    conv_spatial = volume.spatial_ranges
    if crop:
        inter = intersect_ranges(f.ranges, conv_spatial)
        proj, mask = project_with_validity(volume, inter)
        values = _paste(f.ranges, proj.values, inter, np.int64(0))
        valid = _paste(f.ranges, mask, inter, False)
        out_ranges = f.ranges
    else:
        proj, valid = project_with_validity(volume, conv_spatial)
        values = proj.values
        out_ranges = conv_spatial
    tonal_max = max(f.tonal_max + b.max_defined(), 1)
    g = GridFunction(values, lo=tuple(lo for lo, _ in out_ranges),
                     tonal_max=tonal_max)
    return (g, valid) if return_validity else g


def reflect(b: GridFunction) -> GridFunction:
    """Index negation about the origin; values and gaps carried along."""
    rev = (slice(None, None, -1),) * b.ndim
    lo = tuple(-hi for hi in b.hi)
    return GridFunction(b.values[rev], b.defined[rev], lo=lo,
                        tonal_max=b.tonal_max, signed=b.signed)


def negate(f: GridFunction, l: int) -> GridFunction:
    """Pointwise l - f(x); gaps preserved."""
    l = int(l)
    if f.min_defined() < 0:
        raise ValueError("cannot negate a grid with negative values")
    if l < f.max_defined():
        raise ValueError(f"l={l} below max value {f.max_defined()}")
    values = np.where(f.defined, l - f.values, np.int64(0))
    return GridFunction(values, f.defined.copy(), lo=f.lo, tonal_max=max(l, 1))


def erode_fft(f: GridFunction, b: GridFunction, l: int | None = None, *,
              return_validity: bool = False, stats: dict | None = None):
    """Erosion by duality: l - dilate_fft(negate(f, l), reflect(b)).

    With partial-overlap semantics on both sides the pair sets coincide, so
    this equals erode_naive on every pixel of the image domain.
    """
    if l is None:
        l = f.tonal_max
    d, valid = dilate_fft(negate(f, l), reflect(b), crop=True,
                          return_validity=True, stats=stats)
    # Invalid pixels projected to 0 become l, the erosion neutral value.
    values = l - d.values
    g = GridFunction(values, lo=f.lo, tonal_max=max(f.tonal_max, l), signed=True)
    return (g, valid) if return_validity else g


def dilate(f: GridFunction, b: GridFunction, method=MorphMethod.NAIVE, **kw):
    method = MorphMethod.parse(method)
    if method is MorphMethod.NAIVE:
        return dilate_naive(f, b, **kw)
    return _dilate_fft_signed(f, b, **kw)


def erode(f: GridFunction, b: GridFunction, method=MorphMethod.NAIVE,
          l: int | None = None, **kw):
    method = MorphMethod.parse(method)
    if method is MorphMethod.NAIVE:
        return erode_naive(f, b, **kw)
    return erode_fft(f, b, l=l, **kw)


def _dilate_fft_signed(f: GridFunction, b: GridFunction, **kw):
    """dilate_fft, extended to signed inputs by a value shift.

    Dilation commutes with adding a constant to the image, so a negative-valued
    intermediate (from an erosion stage) is shifted up, dilated, and shifted
    back.  Pixels without any pair keep the neutral value 0.
    """
    m = f.min_defined()
    if m >= 0:
        return dilate_fft(f, b, **kw)
    shift = -m
    fs = GridFunction(np.where(f.defined, f.values + shift, np.int64(0)),
                      f.defined.copy(), lo=f.lo,
                      tonal_max=f.tonal_max + shift)
    want_validity = kw.pop("return_validity", False)
    d, valid = dilate_fft(fs, b, return_validity=True, **kw)
    values = np.where(valid, d.values - shift, np.int64(0))
    g = GridFunction(values, lo=d.lo, tonal_max=d.tonal_max, signed=True)
    return (g, valid) if want_validity else g


def opening(f: GridFunction, b: GridFunction, method=MorphMethod.NAIVE,
            l: int | None = None, stats: dict | None = None) -> GridFunction:
    kw = {} if MorphMethod.parse(method) is MorphMethod.NAIVE else {"stats": stats}
    return dilate(erode(f, b, method, l=l, **kw), b, method, **kw)


def closing(f: GridFunction, b: GridFunction, method=MorphMethod.NAIVE,
            l: int | None = None, stats: dict | None = None) -> GridFunction:
    kw = {} if MorphMethod.parse(method) is MorphMethod.NAIVE else {"stats": stats}
    d = dilate(f, b, method, **kw)
    return erode(d, b, method, l=d.tonal_max if l is None else l, **kw)


def beucher_gradient(f: GridFunction, b: GridFunction, method=MorphMethod.NAIVE,
                     l: int | None = None, stats: dict | None = None) -> GridFunction:
    kw = {} if MorphMethod.parse(method) is MorphMethod.NAIVE else {"stats": stats}
    d = dilate(f, b, method, **kw)
    e = erode(f, b, method, l=l, **kw)
    values = np.maximum(d.values - e.values, np.int64(0))
    return GridFunction(values, lo=f.lo,
                        tonal_max=max(int(values.max()), 1))
