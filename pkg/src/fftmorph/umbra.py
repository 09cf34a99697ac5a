"""Grid functions and their 0/1 tonal lift.

An image or structuring element becomes an (N+1)-dimensional indicator
volume with a 1 at (x, value(x)) for every defined pixel; undefined pixels
(gaps) get an all-zero tonal column.  Convolving two such volumes in full
mode gives, per spatial index, the coefficient vector of a sum of monomial
products, and taking the top nonzero tonal index projects back to the
dilated image.

The tonal axis is stored last, so per-pixel coefficient columns are
contiguous.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor import IndexRange, OffsetArray, intersect_ranges


class GridFunction:
    """Integer-valued function on an N-d logical grid, with gaps.

    ``defined`` marks which pixels carry a value; undefined entries of
    ``values`` are kept at 0 and never read.  ``tonal_max`` is the declared
    tonal ceiling (255 for 8-bit data).  ``signed`` admits negative values,
    which arise inside erosion; file output is where clamping happens.
    """

    __slots__ = ("values", "defined", "lo", "tonal_max", "signed")

    def __init__(self, values, defined=None, lo=None, tonal_max: int = 255,
                 signed: bool = False):
        values = np.ascontiguousarray(np.asarray(values, dtype=np.int64))
        if values.size == 0:
            raise ValueError("empty grid")
        if defined is None:
            defined = np.ones(values.shape, dtype=bool)
        else:
            defined = np.ascontiguousarray(np.asarray(defined, dtype=bool))
            if defined.shape != values.shape:
                raise ValueError("defined mask shape mismatch")
        if not defined.any():
            raise ValueError("grid needs at least one defined pixel")
        if lo is None:
            lo = (0,) * values.ndim
        lo = tuple(int(x) for x in lo)
        if len(lo) != values.ndim:
            raise ValueError("lo rank mismatch")
        tonal_max = int(tonal_max)
        if tonal_max < 1:
            raise ValueError("tonal_max must be positive")
        dv = values[defined]
        if dv.max() > tonal_max:
            raise ValueError(f"value {dv.max()} exceeds tonal_max {tonal_max}")
        if not signed and dv.min() < 0:
            raise ValueError("negative value in an unsigned grid")
        values.flags.writeable = False
        defined.flags.writeable = False
        self.values = values
        self.defined = defined
        self.lo = lo
        self.tonal_max = tonal_max
        self.signed = signed

    @property
    def shape(self) -> tuple[int, ...]:
        return self.values.shape

    @property
    def ndim(self) -> int:
        return self.values.ndim

    @property
    def hi(self) -> tuple[int, ...]:
        return tuple(l + n - 1 for l, n in zip(self.lo, self.shape))

    @property
    def ranges(self) -> tuple[IndexRange, ...]:
        return tuple(zip(self.lo, self.hi))

    @property
    def gap_free(self) -> bool:
        return bool(self.defined.all())

    def max_defined(self) -> int:
        return int(self.values[self.defined].max())

    def min_defined(self) -> int:
        return int(self.values[self.defined].min())

    def at(self, x) -> int | None:
        """Value at logical index x, or None at a gap."""
        if isinstance(x, int):
            x = (x,)
        off = tuple(xj - lj for xj, lj in zip(x, self.lo))
        for o, n in zip(off, self.shape):
            if not 0 <= o < n:
                raise IndexError(f"index {x} outside {self.ranges}")
        if not self.defined[off]:
            return None
        return int(self.values[off])

    def to_list(self):
        """Nested lists with None at gaps (test convenience)."""
        out = np.where(self.defined, self.values, np.int64(0)).astype(object)
        out[~self.defined] = None
        return out.tolist()

    @classmethod
    def from_tokens(cls, tokens, lo=None, tonal_max: int | None = None):
        """Build from nested lists where None marks a gap."""
        arr = np.asarray(tokens, dtype=object)
        defined = np.vectorize(lambda t: t is not None)(arr).astype(bool)
        values = np.where(defined, arr, 0).astype(np.int64)
        if tonal_max is None:
            tonal_max = max(int(values[defined].max()), 1)
        return cls(values, defined, lo=lo, tonal_max=tonal_max)

    def __eq__(self, other):
        if not isinstance(other, GridFunction):
            return NotImplemented
        return (self.lo == other.lo
                and self.shape == other.shape
                and bool((self.defined == other.defined).all())
                and bool((self.values[self.defined]
                          == other.values[other.defined]).all()))

    def __repr__(self):
        return (f"GridFunction(shape={self.shape}, lo={self.lo}, "
                f"tonal_max={self.tonal_max})")


@dataclass(frozen=True)
class UmbraVolume:
    """(N+1)-d 0/1 volume: spatial axes of the source grid x tonal axis [0..l_R]."""
    bits: OffsetArray
    l_R: int

    @property
    def spatial_ranges(self):
        return self.bits.ranges[:-1]

    def verify(self) -> None:
        data = self.bits.data
        if not np.isin(data, (0, 1)).all():
            raise AssertionError("umbra entries must be 0/1")
        if (data.sum(axis=-1) > 1).any():
            raise AssertionError("more than one 1 in a tonal column")


@dataclass(frozen=True)
class CountVolume:
    """(N+1)-d non-negative counts: full-conv output of two umbra volumes."""
    counts: OffsetArray
    l_R: int

    @property
    def spatial_ranges(self):
        return self.counts.ranges[:-1]

    def verify(self) -> None:
        data = self.counts.data
        if data.min() < 0:
            raise AssertionError("negative count")
        if data.shape[-1] > self.l_R + 1 and data[..., self.l_R + 1:].any():
            raise AssertionError("nonzero count above the achievable degree")


def required_lr(f: GridFunction, b: GridFunction) -> int:
    """Shared tonal extent of the two lifted volumes: max f + max b."""
    return f.max_defined() + b.max_defined()


def build_umbra(g: GridFunction, l_R: int) -> UmbraVolume:
    l_R = int(l_R)
    if l_R < g.max_defined():
        raise ValueError(f"l_R={l_R} below max value {g.max_defined()}")
    if g.min_defined() < 0:
        raise ValueError("cannot lift negative values")
    bits = np.zeros(g.shape + (l_R + 1,), dtype=np.int64)
    where = np.nonzero(g.defined)
    bits[where + (g.values[where],)] = 1
    return UmbraVolume(OffsetArray(bits, g.lo + (0,)), l_R)


def project_with_validity(c: CountVolume, out_range: tuple[IndexRange, ...],
                          ) -> tuple[GridFunction, np.ndarray]:
    """Like :func:`project`, also returning the mask of non-empty columns."""
    spatial = c.spatial_ranges
    if intersect_ranges(spatial, out_range) != tuple(tuple(r) for r in out_range):
        raise ValueError(f"out_range {out_range} outside volume {spatial}")
    sl = tuple(slice(lo - clo, hi - clo + 1)
               for (lo, hi), (clo, _) in zip(out_range, spatial))
    window = c.counts.data[sl]
    nonzero = window >= 1
    has_any = nonzero.any(axis=-1)
    t = window.shape[-1]
    top = t - 1 - np.argmax(nonzero[..., ::-1], axis=-1)
    values = np.where(has_any, top, 0).astype(np.int64)
    g = GridFunction(values, lo=tuple(lo for lo, _ in out_range),
                     tonal_max=max(c.l_R, int(values.max()), 1))
    return g, has_any


def project(c: CountVolume, out_range: tuple[IndexRange, ...]) -> GridFunction:
    """Top nonzero tonal index per spatial pixel; 0 where the column is empty."""
    return project_with_validity(c, out_range)[0]
