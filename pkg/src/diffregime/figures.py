"""Figure rendering for analysis runs.

Renders the four standard charts (input series with cluster spans, the
normalized bifurcation indicator, momentary transport with increments, and
the rolling generalized Hurst exponent) as PNG files next to the CSV tables.
The CSVs stay the canonical plot data; these are convenience renderings.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .pipeline import AnalysisResult

__all__ = ["render_figures"]

R_SPAN_COLOR = "#d62728"
D_SPAN_COLOR = "#1f77b4"


def _date_ticks(ax, series, indices):
    step = max(1, len(indices) // 8)
    ticks = list(indices[::step])
    ax.set_xticks(ticks)
    ax.set_xticklabels([series.label(i) for i in ticks], rotation=30, ha="right", fontsize=7)


def _shade_clusters(ax, clusters, color, label):
    first = True
    for c in clusters:
        ax.axvspan(
            c.start_index,
            c.end_index,
            color=color,
            alpha=0.18,
            label=label if first else None,
        )
        first = False


def render_figures(result: AnalysisResult, out_dir: str) -> dict:
    written: dict = {}
    s = result.series
    idx = np.arange(len(s))

    fig, ax = plt.subplots(figsize=(9, 4))
    ax.plot(idx, s.values, lw=1.0, color="black")
    _shade_clusters(ax, result.report.r_clusters, R_SPAN_COLOR, "R clusters")
    _shade_clusters(ax, result.report.d_clusters, D_SPAN_COLOR, "D clusters")
    ax.set_ylabel("value")
    ax.set_title("input series with critical-point clusters")
    if result.report.r_clusters or result.report.d_clusters:
        ax.legend(loc="best", fontsize=8)
    _date_ticks(ax, s, idx)
    written["series.png"] = _save(fig, out_dir, "series.png")

    rey = result.reynolds
    ri = np.arange(rey.start_offset, rey.start_offset + len(rey))
    fig, ax = plt.subplots(figsize=(9, 4))
    ax.plot(ri, rey.bif_norm, lw=0.9, color="black")
    ax.axhline(0.0, lw=0.6, color="gray")
    crit = np.array(result.r_points, dtype=int)
    if crit.size:
        ax.plot(crit, rey.bif_norm[crit - rey.start_offset], ".", color=R_SPAN_COLOR, ms=4)
    ax.set_ylabel("normalized bifurcation indicator")
    _date_ticks(ax, s, ri)
    written["bifurcation.png"] = _save(fig, out_dir, "bifurcation.png")

    trans = result.transport
    ti = np.arange(trans.start_offset, trans.start_offset + trans.d_values.size)
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(9, 5.5), sharex=True)
    ax1.plot(ti, trans.d_values, lw=0.9, color="black")
    ax1.set_ylabel("momentary transport")
    ax2.plot(ti[1:], trans.delta_d, lw=0.9, color=D_SPAN_COLOR)
    ax2.axhline(0.0, lw=0.6, color="gray")
    dpts = np.array(result.d_points, dtype=int)
    if dpts.size:
        ax2.plot(dpts, trans.delta_d[dpts - trans.delta_offset], ".", color=R_SPAN_COLOR, ms=4)
    ax2.set_ylabel("transport increment")
    _date_ticks(ax2, s, ti)
    written["transport.png"] = _save(fig, out_dir, "transport.png")

    fig, ax = plt.subplots(figsize=(9, 4))
    pts = [(o, f.hurst) for o, f in result.fits if f is not None]
    if pts:
        origins, hs = zip(*pts)
        ax.plot(origins, hs, lw=0.9, color="black")
        _date_ticks(ax, s, np.array(origins))
    ax.axhline(0.5, lw=0.6, color="gray", ls="--")
    ax.set_ylabel("rolling generalized Hurst")
    written["hurst.png"] = _save(fig, out_dir, "hurst.png")
    return written


def _save(fig, out_dir: str, name: str) -> str:
    path = os.path.join(out_dir, name)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
