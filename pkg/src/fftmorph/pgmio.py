"""File formats: portable graymaps, the structuring-element text format,
requantization, and histograms.

PGM support covers P2 (ASCII) and P5 (binary) with maxval <= 255.  The SE
format is a text grid: an ``origin: <row> <col>`` header, then rows of
whitespace-separated tokens where each token is a non-negative integer or
``X`` for an index outside the domain; ``#`` starts a comment.
1-D signals travel as 1 x n grids in both formats.
"""

from __future__ import annotations

import numpy as np

from .umbra import GridFunction


class ParseError(ValueError):
    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class _Tokenizer:
    """Whitespace/comment-skipping tokenizer over raw bytes."""

    def __init__(self, blob: bytes):
        self.blob = blob
        self.pos = 0

    def _skip(self):
        b = self.blob
        while self.pos < len(b):
            c = b[self.pos]
            if c in b"\t\n\r\x0b\x0c ":
                self.pos += 1
            elif c == ord("#"):
                while self.pos < len(b) and b[self.pos] not in b"\r\n":
                    self.pos += 1
            else:
                return

    def token(self) -> tuple[bytes, int]:
        self._skip()
        if self.pos >= len(self.blob):
            raise ParseError("unexpected end of file", self.pos)
        start = self.pos
        while self.pos < len(self.blob) and self.blob[self.pos] not in b"\t\n\r\x0b\x0c #":
            self.pos += 1
        return self.blob[start:self.pos], start

    def int_token(self, what: str) -> int:
        tok, start = self.token()
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"{what}: expected an integer, got {tok!r}", start) from None


def read_pgm(path) -> GridFunction:
    with open(path, "rb") as fh:
        blob = fh.read()
    tk = _Tokenizer(blob)
    magic, off = tk.token()
    if magic not in (b"P2", b"P5"):
        raise ParseError(f"not a P2/P5 graymap (magic {magic!r})", off)
    width = tk.int_token("width")
    height = tk.int_token("height")
    maxval = tk.int_token("maxval")
    if width < 1 or height < 1:
        raise ParseError(f"bad dimensions {width}x{height}")
    if not 0 < maxval <= 255:
        raise ParseError(f"maxval {maxval} outside 1..255")
    n = width * height
    if magic == b"P5":
        start = tk.pos + 1  # single whitespace byte after maxval
        if len(blob) < start + n:
            raise ParseError(f"truncated payload: need {n} bytes", len(blob))
        values = np.frombuffer(blob[start:start + n], dtype=np.uint8)
        values = values.astype(np.int64).reshape(height, width)
        if values.max() > maxval:
            raise ParseError(f"sample {values.max()} exceeds maxval {maxval}", start)
    else:
        values = np.empty(n, dtype=np.int64)
        for i in range(n):
            v = tk.int_token("sample")
            if not 0 <= v <= maxval:
                raise ParseError(f"sample {v} outside 0..{maxval}", tk.pos)
            values[i] = v
        values = values.reshape(height, width)
    return GridFunction(values, tonal_max=maxval)


def write_pgm(g: GridFunction, path, binary: bool = True) -> None:
    if g.ndim != 2:
        raise ValueError("PGM output needs a 2-D grid")
    if not g.gap_free:
        raise ValueError("PGM output needs a gap-free grid")
    if g.tonal_max > 255:
        raise ValueError(f"tonal_max {g.tonal_max} exceeds 255")
    if g.values.min() < 0:
        raise ValueError("negative values; clamp before writing")
    h, w = g.shape
    header = f"{'P5' if binary else 'P2'}\n{w} {h}\n{g.tonal_max}\n"
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        if binary:
            fh.write(g.values.astype(np.uint8).tobytes())
        else:
            for row in g.values:
                fh.write((" ".join(str(int(v)) for v in row) + "\n").encode("ascii"))


def clamp(g: GridFunction, lo: int = 0, hi: int | None = None) -> GridFunction:
    """Clamp values into [lo, hi] (hi defaults to the tonal ceiling)."""
    if hi is None:
        hi = g.tonal_max
    values = np.clip(g.values, lo, hi)
    values = np.where(g.defined, values, np.int64(0))
    return GridFunction(values, g.defined.copy(), lo=g.lo, tonal_max=g.tonal_max)


def read_se(path) -> GridFunction:
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.readlines()
    rows: list[list[int | None]] = []
    origin = None
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if origin is None:
            if not line.startswith("origin:"):
                raise ParseError(f"expected 'origin: <row> <col>', got {line!r}")
            parts = line[len("origin:"):].split()
            if len(parts) != 2:
                raise ParseError(f"origin needs two coordinates, got {parts}")
            try:
                origin = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise ParseError(f"non-integer origin {parts}") from None
            continue
        row: list[int | None] = []
        for tok in line.split():
            if tok in ("X", "x"):
                row.append(None)
            else:
                try:
                    v = int(tok)
                except ValueError:
                    raise ParseError(f"token {tok!r} is not an integer or X") from None
                if v < 0:
                    raise ParseError(f"negative filter value {v} not supported")
                row.append(v)
        rows.append(row)
    if origin is None:
        raise ParseError("missing origin line")
    if not rows:
        raise ParseError("no grid rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("ragged grid rows")
    if not (0 <= origin[0] < len(rows) and 0 <= origin[1] < width):
        raise ParseError(f"origin {origin} outside {len(rows)}x{width} grid")
    if all(t is None for r in rows for t in r):
        raise ParseError("filter needs at least one non-gap token")
    return GridFunction.from_tokens(rows, lo=(-origin[0], -origin[1]))


def write_se(b: GridFunction, path) -> None:
    if b.ndim != 2:
        raise ValueError("SE output needs a 2-D grid")
    origin = (-b.lo[0], -b.lo[1])
    if not (0 <= origin[0] < b.shape[0] and 0 <= origin[1] < b.shape[1]):
        raise ValueError("origin must lie inside the grid")
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"origin: {origin[0]} {origin[1]}\n")
        for r in range(b.shape[0]):
            toks = [str(int(v)) if d else "X"
                    for v, d in zip(b.values[r], b.defined[r])]
            fh.write(" ".join(toks) + "\n")


def requantize(g: GridFunction, bits: int) -> GridFunction:
    """Map values into 0..2^bits-1 by v * (2^bits - 1) // tonal_max."""
    if not 1 <= bits <= 8:
        raise ValueError("bits must be in 1..8")
    if not g.gap_free:
        raise ValueError("requantize needs a gap-free grid")
    top = (1 << bits) - 1
    values = (g.values * top) // g.tonal_max
    return GridFunction(values, lo=g.lo, tonal_max=top)


def histogram(g: GridFunction) -> np.ndarray:
    """Counts per tonal value 0..tonal_max; sums to the pixel count."""
    if not g.gap_free:
        raise ValueError("histogram needs a gap-free grid")
    if g.values.min() < 0:
        raise ValueError("histogram needs non-negative values")
    return np.bincount(g.values.ravel(), minlength=g.tonal_max + 1)


def write_histogram_csv(counts: np.ndarray, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("value,count\n")
        for v, c in enumerate(counts):
            fh.write(f"{v},{int(c)}\n")
