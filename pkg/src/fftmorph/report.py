"""Figure rendering for benchmark CSVs and histograms (matplotlib, file output)."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .bench import BenchRow  # noqa: E402


def bench_timing_figure(rows: list[BenchRow], path) -> None:
    """Mean seconds per case, one line per (method, bits) series.

    Filter sweeps plot against filter area, image sweeps against image area.
    """
    if not rows:
        raise ValueError("no rows to plot")
    mode = rows[0].mode
    xkey = (lambda r: r.filter_edge**2) if mode == "filter-sweep" \
        else (lambda r: r.image_edge**2)
    series: dict[tuple[str, int], dict[int, list[float]]] = {}
    for r in rows:
        series.setdefault((r.method, r.bits), {}).setdefault(xkey(r), []).append(r.seconds)
    fig, ax = plt.subplots(figsize=(6, 4))
    for (method, bits), pts in sorted(series.items()):
        xs = sorted(pts)
        ys = [sum(pts[x]) / len(pts[x]) for x in xs]
        ax.plot(xs, ys, marker="o", label=f"{method} {bits}-bit")
    ax.set_xlabel("filter size [pixels]" if mode == "filter-sweep"
                  else "image size [pixels]")
    ax.set_ylabel("time [s]")
    ax.set_title(f"Dilation timing ({mode})")
    ax.grid(True, linestyle="--", alpha=0.5)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def bench_figures(rows: list[BenchRow], outdir) -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    out = os.path.join(outdir, "timing.png")
    bench_timing_figure(rows, out)
    return [out]


def histogram_figure(counts, path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(counts)), counts, width=1.0)
    ax.set_xlabel("tonal value")
    ax.set_ylabel("count")
    ax.set_title("Histogram")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
