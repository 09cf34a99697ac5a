"""Dense N-dimensional arrays with per-axis logical index offsets.

Indices are "logical": axis j covers lo[j] .. lo[j]+shape[j]-1, where lo may
be negative.  Storage is a row-major numpy array; all index arithmetic is done
in logical coordinates, never by re-zeroing the data.
"""

from __future__ import annotations

import numpy as np

IndexRange = tuple[int, int]  # inclusive (lo, hi)

_ALLOWED_DTYPES = (np.int64, np.float64)


class OffsetArray:
    """Immutable dense array whose lowest logical index per axis may be nonzero."""

    __slots__ = ("data", "lo")

    def __init__(self, data: np.ndarray, lo: tuple[int, ...] | None = None):
        data = np.asarray(data)
        if data.dtype not in _ALLOWED_DTYPES:
            if np.issubdtype(data.dtype, np.integer) or data.dtype == bool:
                data = data.astype(np.int64)
            elif np.issubdtype(data.dtype, np.floating):
                data = data.astype(np.float64)
            else:
                raise TypeError(f"unsupported dtype {data.dtype}")
        if data.size == 0:
            raise ValueError("empty arrays are not supported")
        if lo is None:
            lo = (0,) * data.ndim
        lo = tuple(int(x) for x in lo)
        if len(lo) != data.ndim:
            raise ValueError(f"lo has {len(lo)} entries for a {data.ndim}-d array")
        data = np.ascontiguousarray(data)
        data.flags.writeable = False
        self.data = data
        self.lo = lo

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def hi(self) -> tuple[int, ...]:
        return tuple(l + n - 1 for l, n in zip(self.lo, self.shape))

    @property
    def ranges(self) -> tuple[IndexRange, ...]:
        return tuple(zip(self.lo, self.hi))

    def at(self, x: tuple[int, ...] | int):
        """Value at logical index ``x``; out-of-bounds is a hard error."""
        if isinstance(x, int):
            x = (x,)
        if len(x) != self.ndim:
            raise IndexError(f"index {x} for a {self.ndim}-d array")
        off = []
        for j, (xj, lj, nj) in enumerate(zip(x, self.lo, self.shape)):
            if not lj <= xj <= lj + nj - 1:
                raise IndexError(f"axis {j}: index {xj} outside [{lj}, {lj + nj - 1}]")
            off.append(xj - lj)
        return self.data[tuple(off)].item()

    def __repr__(self):
        return f"OffsetArray(shape={self.shape}, lo={self.lo}, dtype={self.data.dtype})"


def full_output_range(ra: tuple[IndexRange, ...],
                      rb: tuple[IndexRange, ...]) -> tuple[IndexRange, ...]:
    """Per-axis index range of a full-mode convolution output.

    This is the Minkowski sum of the two input ranges: [loA+loB, hiA+hiB].
    """
    if len(ra) != len(rb):
        raise ValueError("rank mismatch")
    out = []
    for (la, ha), (lb, hb) in zip(ra, rb):
        if ha < la or hb < lb:
            raise ValueError("empty index range")
        out.append((la + lb, ha + hb))
    return tuple(out)


def intersect_ranges(ra: tuple[IndexRange, ...],
                     rb: tuple[IndexRange, ...]) -> tuple[IndexRange, ...] | None:
    """Per-axis intersection, or None if empty on some axis."""
    out = []
    for (la, ha), (lb, hb) in zip(ra, rb):
        lo, hi = max(la, lb), min(ha, hb)
        if hi < lo:
            return None
        out.append((lo, hi))
    return tuple(out)
