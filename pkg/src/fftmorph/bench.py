"""Benchmark harness: seeded random image/filter pairs, per-operator timing,
and FFT-vs-naive equality checks, emitted as CSV rows.

Inputs are drawn with numpy's seeded PCG64 generator; the per-case seed mixes
the top-level seed with the case parameters, so a config reruns to identical
inputs regardless of row order.  Timing brackets only the operator call.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field

import numpy as np

from . import fft_conv, morphology
from .morphology import MorphMethod
from .umbra import GridFunction

CSV_COLUMNS = ("mode", "bits", "image_edge", "filter_edge", "method",
               "repeat", "seconds", "max_abs_diff_vs_naive", "input_digest")

MODES = ("filter-sweep", "image-sweep")


@dataclass
class BenchConfig:
    mode: str
    bits: list[int]
    seed: int
    sizes: list[tuple[int, int]]  # (image_edge, filter_edge)
    repeats: int = 1
    methods: tuple[MorphMethod, ...] = (MorphMethod.NAIVE, MorphMethod.FFT_UMBRA)
    memory_ceiling_bytes: int = 4 << 30
    threads: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if not self.sizes:
            raise ValueError("no sizes configured")
        if self.repeats < 1:
            raise ValueError("repeats must be positive")
        self.methods = tuple(MorphMethod.parse(m) for m in self.methods)
        if not self.methods:
            raise ValueError("no methods configured")
        for bits in self.bits:
            if not 1 <= bits <= 8:
                raise ValueError(f"bits {bits} outside 1..8")
        for ie, fe in self.sizes:
            if fe > ie:
                raise ValueError(f"filter edge {fe} exceeds image edge {ie}")
            if ie < 1:
                raise ValueError("image edge must be positive")
        for bits in self.bits:
            for ie, fe in self.sizes:
                need = self.umbra_bytes(ie, fe, bits)
                if need > self.memory_ceiling_bytes:
                    raise ValueError(
                        f"case {ie}x{ie}/{fe}x{fe} at {bits}-bit needs "
                        f"{need / 2**30:.2f} GiB of tonal-lift storage, over the "
                        f"{self.memory_ceiling_bytes / 2**30:.2f} GiB ceiling")

    @staticmethod
    def umbra_bytes(image_edge: int, filter_edge: int, bits: int) -> int:
        l_r = 2 * ((1 << bits) - 1)
        entries = (image_edge**2 + filter_edge**2) * (l_r + 1)
        return entries * 8


@dataclass
class BenchRow:
    mode: str
    bits: int
    image_edge: int
    filter_edge: int
    method: str
    repeat: int
    seconds: float
    max_abs_diff_vs_naive: int | None
    input_digest: str
    threads: int = 1


def _case_inputs(cfg: BenchConfig, bits: int, ie: int, fe: int, repeat: int):
    rng = np.random.default_rng([cfg.seed, bits, ie, fe, repeat])
    top = (1 << bits) - 1
    img = rng.integers(0, top + 1, size=(ie, ie), dtype=np.int64)
    se = rng.integers(0, top + 1, size=(fe, fe), dtype=np.int64)
    digest = hashlib.sha256(img.tobytes() + se.tobytes()).hexdigest()[:16]
    f = GridFunction(img, tonal_max=max(top, 1))
    # Anchor the filter at its centre.
    b = GridFunction(se, lo=(-(fe // 2), -(fe // 2)), tonal_max=max(top, 1))
    return f, b, digest


def run_bench(cfg: BenchConfig) -> list[BenchRow]:
    rows: list[BenchRow] = []
    prev_workers = fft_conv.get_fft_workers()
    fft_conv.set_fft_workers(cfg.threads)
    try:
        for bits in cfg.bits:
            for ie, fe in cfg.sizes:
                for rep in range(cfg.repeats):
                    f, b, digest = _case_inputs(cfg, bits, ie, fe, rep)
                    naive_result = None
                    for method in cfg.methods:
                        t0 = time.perf_counter()
                        if method is MorphMethod.NAIVE:
                            result = morphology.dilate_naive(f, b)
                        else:
                            result = morphology.dilate_fft(f, b)
                        seconds = time.perf_counter() - t0
                        if method is MorphMethod.NAIVE:
                            naive_result = result
                            diff = 0
                        elif MorphMethod.NAIVE in cfg.methods:
                            if naive_result is None:
                                naive_result = morphology.dilate_naive(f, b)
                            diff = int(np.abs(result.values
                                              - naive_result.values).max())
                        else:
                            diff = None
                        rows.append(BenchRow(cfg.mode, bits, ie, fe,
                                             method.value, rep, seconds, diff,
                                             digest, cfg.threads))
    finally:
        fft_conv.set_fft_workers(prev_workers)
    return rows


def write_csv(rows: list[BenchRow], path, threads_column: bool = False) -> None:
    cols = CSV_COLUMNS + (("threads",) if threads_column else ())
    with open(path, "w", encoding="ascii") as fh:
        fh.write(",".join(cols) + "\n")
        for r in rows:
            vals = [r.mode, r.bits, r.image_edge, r.filter_edge, r.method,
                    r.repeat, f"{r.seconds:.6f}",
                    "" if r.max_abs_diff_vs_naive is None else r.max_abs_diff_vs_naive,
                    r.input_digest]
            if threads_column:
                vals.append(r.threads)
            fh.write(",".join(str(v) for v in vals) + "\n")
