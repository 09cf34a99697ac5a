"""Command-line frontend: morphological operators on PGM files, a benchmark
harness, histograms, and image diffs.

Verbs:
    morph {dilate|erode|open|close|gradient} --image P --se P --method {naive|fft} --out P
    morph bench --mode {filter-sweep|image-sweep} --bits LIST --seed N --sizes LIST ...
    morph hist --image P --csv P [--plot P]
    morph diff A B [--out P]
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import bench as bench_mod
from . import morphology, pgmio
from .fft_conv import PrecisionBudgetError
from .morphology import MorphMethod
from .umbra import GridFunction

_OPS = ("dilate", "erode", "open", "close", "gradient")


def _add_morph_parser(sub, name):
    p = sub.add_parser(name, help=f"{name} an image by a structuring element")
    p.add_argument("--image", required=True, help="input PGM (P2/P5)")
    p.add_argument("--se", required=True, help="structuring-element text file")
    p.add_argument("--method", choices=("naive", "fft"), default="naive")
    p.add_argument("--out", required=True, help="output PGM")
    p.add_argument("--clamp", action="store_true",
                   help="clamp output into the writable 0..255 range")
    p.add_argument("--tonal-max", type=int, default=None,
                   help="tonal ceiling used by the erosion duality "
                        "(default: the image's declared maxval)")
    return p


def _run_morph(op: str, args) -> int:
    f = pgmio.read_pgm(args.image)
    b = pgmio.read_se(args.se)
    method = MorphMethod.parse(args.method)
    stats: dict = {}
    kw = {} if method is MorphMethod.NAIVE else {"stats": stats}
    t0 = time.perf_counter()
    if op == "dilate":
        g = morphology.dilate(f, b, method, **kw)
    elif op == "erode":
        g = morphology.erode(f, b, method, l=args.tonal_max, **kw)
    elif op == "open":
        g = morphology.opening(f, b, method, l=args.tonal_max, **kw)
    elif op == "close":
        g = morphology.closing(f, b, method, l=args.tonal_max, **kw)
    else:
        g = morphology.beucher_gradient(f, b, method, l=args.tonal_max, **kw)
    seconds = time.perf_counter() - t0
    if args.clamp:
        hi = min(g.tonal_max, 255)
        g = GridFunction(np.clip(g.values, 0, hi), lo=g.lo, tonal_max=hi)
    pgmio.write_pgm(g, args.out)
    print(f"{op}: {seconds:.4f} s ({method.value})")
    if "max_abs_deviation" in stats:
        print(f"max pre-rounding FFT deviation: {stats['max_abs_deviation']:.3g}")
    return 0


def _parse_int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t]


def _parse_sizes(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        if not part:
            continue
        ie, _, fe = part.partition(":")
        out.append((int(ie), int(fe)))
    return out


def _run_bench(args) -> int:
    cfg = bench_mod.BenchConfig(
        mode=args.mode,
        bits=_parse_int_list(args.bits),
        seed=args.seed,
        sizes=_parse_sizes(args.sizes),
        repeats=args.repeats,
        methods=tuple(args.methods.split(",")),
        memory_ceiling_bytes=int(args.memory_ceiling_gib * 2**30),
        threads=args.threads,
    )
    rows = bench_mod.run_bench(cfg)
    bench_mod.write_csv(rows, args.csv, threads_column=cfg.threads > 1)
    print(f"wrote {len(rows)} rows to {args.csv}")
    if args.plot_dir:
        from . import report
        for p in report.bench_figures(rows, args.plot_dir):
            print(f"wrote {p}")
    return 0


def _run_hist(args) -> int:
    g = pgmio.read_pgm(args.image)
    counts = pgmio.histogram(g)
    pgmio.write_histogram_csv(counts, args.csv)
    print(f"wrote {args.csv}")
    if args.plot:
        from . import report
        report.histogram_figure(counts, args.plot)
        print(f"wrote {args.plot}")
    return 0


def _run_diff(args) -> int:
    a = pgmio.read_pgm(args.a)
    b = pgmio.read_pgm(args.b)
    if a.shape != b.shape:
        print(f"shape mismatch: {a.shape} vs {b.shape}", file=sys.stderr)
        return 2
    diff = np.abs(a.values - b.values)
    print(f"max abs difference:  {int(diff.max())}")
    print(f"mean abs difference: {diff.mean():.6f}")
    if args.out:
        m = max(a.tonal_max, b.tonal_max)
        neg = GridFunction(m - np.minimum(diff, m), tonal_max=m)
        pgmio.write_pgm(neg, args.out)
        print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="morph",
                                 description="Exact grayscale morphology "
                                             "via FFT of tonal-lift volumes")
    sub = ap.add_subparsers(dest="command", required=True)
    for op in _OPS:
        _add_morph_parser(sub, op)

    p = sub.add_parser("bench", help="timed random-input benchmark, CSV output")
    p.add_argument("--mode", choices=bench_mod.MODES, required=True)
    p.add_argument("--bits", default="8", help="comma list of tonal depths")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sizes", required=True,
                   help="comma list of image:filter edge pairs, e.g. 256:16,256:32")
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--methods", default="naive,fft")
    p.add_argument("--csv", required=True)
    p.add_argument("--threads", type=int, default=1,
                   help="FFT worker threads (reported in a CSV column when >1)")
    p.add_argument("--memory-ceiling-gib", type=float, default=4.0)
    p.add_argument("--plot-dir", default=None,
                   help="also render timing figures into this directory")

    p = sub.add_parser("hist", help="tonal histogram of a PGM, CSV output")
    p.add_argument("--image", required=True)
    p.add_argument("--csv", required=True)
    p.add_argument("--plot", default=None, help="also render a bar chart PNG")

    p = sub.add_parser("diff", help="pixelwise absolute difference of two PGMs")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--out", default=None,
                   help="write the negative of the absolute difference as PGM")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in _OPS:
            return _run_morph(args.command, args)
        if args.command == "bench":
            return _run_bench(args)
        if args.command == "hist":
            return _run_hist(args)
        return _run_diff(args)
    except PrecisionBudgetError as exc:
        print(f"error: {exc}\nhint: rerun with --method naive", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
