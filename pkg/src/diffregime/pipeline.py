"""End-to-end analysis: both detectors, rolling fits, overlap and reports.

One call to :func:`run_analysis` produces everything the CLI writes:
the per-index indicator and transport tables, the rolling generalized-Hurst
fits, clustered critical points from both detectors, their overlap with the
efficiency figure, regime labels, and the indicator extremes.  The document
written to ``report.json`` is deterministic for a fixed input and config
(no timestamps).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from .clusters import (
    DateCluster,
    RegimeReport,
    classify_regimes,
    cluster_points,
    overlap_analysis,
)
from .config import AnalysisConfig
from .diffusion import (
    PowerLawFit,
    TransportSeries,
    d_bifurcation_points,
    rolling_hurst,
    transport_increments,
)
from .reynolds import ReynoldsSeries, r_critical_points, reynolds_series
from .series import DataShapeError, UniformSeries

__all__ = [
    "AnalysisResult",
    "run_analysis",
    "build_report_document",
    "REPORT_SCHEMA",
    "write_outputs",
]


@dataclass(frozen=True)
class AnalysisResult:
    series: UniformSeries
    config: AnalysisConfig
    reynolds: ReynoldsSeries
    transport: TransportSeries
    r_points: list[int]
    d_points: list[int]
    fits: list[tuple[int, PowerLawFit | None]]
    report: RegimeReport
    extremes: dict
    sensitivity: dict


def minimum_length(config: AnalysisConfig) -> int:
    """Shortest series the configured pipeline can analyze."""
    return max(4, config.window_n + 2)


def run_analysis(series: UniformSeries, config: AnalysisConfig) -> AnalysisResult:
    n = len(series)
    need = minimum_length(config)
    if n < need:
        raise DataShapeError(
            f"series of length {n} too short for the configured windows "
            f"(minimum length {need})"
        )
    rey = reynolds_series(series)
    r_pts = r_critical_points(rey)
    trans = transport_increments(series, config.window_n, config.msd_normalization)
    d_pts = d_bifurcation_points(trans)
    labels = series.labels
    r_clusters = cluster_points(r_pts, config.cluster_gap, labels, source="R")
    d_clusters = cluster_points(d_pts, config.cluster_gap, labels, source="D")
    report = classify_regimes(overlap_analysis(r_clusters, d_clusters))

    # rolling power-law fits wherever history allows; an input too short for
    # any origin simply yields no fits
    first_origin = config.msd_window + config.lag_max
    if first_origin < n:
        fits = rolling_hurst(series, config.lags(), config.msd_window)
    else:
        fits = []

    extremes = _extremes(series, rey, trans)
    sensitivity = _alignment_sensitivity(rey)
    return AnalysisResult(
        series=series,
        config=config,
        reynolds=rey,
        transport=trans,
        r_points=r_pts,
        d_points=d_pts,
        fits=fits,
        report=report,
        extremes=extremes,
        sensitivity=sensitivity,
    )


def _extremes(series: UniformSeries, rey: ReynoldsSeries, trans: TransportSeries) -> dict:
    extremes: dict = {"bif_min_date": None, "dmax_date": None}
    if rey.bif.size and np.any(rey.bif != 0.0):
        i = int(np.argmin(rey.bif_norm)) + rey.start_offset
        extremes["bif_min_date"] = series.label(i)
    if trans.delta_d.size and np.any(trans.delta_d != 0.0):
        i = int(np.argmax(np.abs(trans.delta_d))) + trans.delta_offset
        extremes["dmax_date"] = series.label(i)
    return extremes


def _alignment_sensitivity(rey: ReynoldsSeries) -> dict:
    """Critical sets under the two admissible energy-increment alignments.

    The method leaves open whether the energy increment pairs with the
    acceleration at the same index or one step later; the analysis uses the
    same-index convention and reports how much the critical set would move
    under the lagged one.
    """
    same = {int(k) for k in np.nonzero(rey.bif < 0.0)[0]}
    lagged_prod = rey.delta_eps[:-1] * rey.acc[1:]
    lagged = {int(k) + 1 for k in np.nonzero(lagged_prod < 0.0)[0]}
    return {
        "delta_eps_alignment": {
            "same_index_points": len(same),
            "lagged_points": len(lagged),
            "shared_points": len(same & lagged),
        }
    }


# --------------------------------------------------------------------------
# report.json document and schema

REPORT_SCHEMA: dict = {
    "type": "object",
    "required": [
        "config",
        "r_clusters",
        "d_clusters",
        "confirmed",
        "efficiency",
        "regimes",
        "extremes",
    ],
    "properties": {
        "config": {
            "type": "object",
            "required": [
                "input_path",
                "window_n",
                "msd_window",
                "lag_min",
                "lag_max",
                "cluster_gap",
                "msd_normalization",
                "output_dir",
                "seed",
            ],
            "properties": {
                "input_path": {"type": ["string", "null"]},
                "window_n": {"type": "integer", "minimum": 1},
                "msd_window": {"type": "integer", "minimum": 8},
                "lag_min": {"type": "integer", "minimum": 1},
                "lag_max": {"type": "integer", "minimum": 2},
                "cluster_gap": {"type": "integer", "minimum": 1},
                "msd_normalization": {"enum": ["literal", "mean"]},
                "output_dir": {"type": "string"},
                "seed": {"type": ["integer", "null"]},
            },
        },
        "r_clusters": {"type": "array", "items": {"$ref": "#/$defs/cluster"}},
        "d_clusters": {"type": "array", "items": {"$ref": "#/$defs/cluster"}},
        "confirmed": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["r", "d"],
                "properties": {
                    "r": {"type": "integer", "minimum": 0},
                    "d": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                },
            },
        },
        "efficiency": {"type": ["number", "null"], "minimum": 0, "maximum": 1},
        "regimes": {
            "type": "array",
            "items": {"enum": ["short-memory", "long-memory"]},
        },
        "extremes": {
            "type": "object",
            "required": ["bif_min_date", "dmax_date"],
            "properties": {
                "bif_min_date": {"type": ["string", "null"]},
                "dmax_date": {"type": ["string", "null"]},
            },
        },
        "sensitivity": {"type": "object"},
    },
    "$defs": {
        "cluster": {
            "type": "object",
            "required": [
                "start_index",
                "end_index",
                "start_label",
                "end_label",
                "source",
                "point_count",
            ],
            "properties": {
                "start_index": {"type": "integer", "minimum": 0},
                "end_index": {"type": "integer", "minimum": 0},
                "start_label": {"type": "string"},
                "end_label": {"type": "string"},
                "source": {"enum": ["R", "D"]},
                "point_count": {"type": "integer", "minimum": 1},
                "scenarios": {"type": "object"},
            },
        }
    },
}


def _cluster_doc(c: DateCluster, rey: ReynoldsSeries | None = None) -> dict:
    doc = {
        "start_index": c.start_index,
        "end_index": c.end_index,
        "start_label": c.start_label,
        "end_label": c.end_label,
        "source": c.source,
        "point_count": c.point_count,
    }
    if c.source == "R" and rey is not None:
        tally = {"a": 0, "b": 0}
        for p in c.points:
            label = rey.scenarios[p - rey.start_offset]
            if label:
                tally[label] += 1
        doc["scenarios"] = tally
    return doc


def build_report_document(result: AnalysisResult) -> dict:
    rep = result.report
    return {
        "config": result.config.as_dict(),
        "r_clusters": [_cluster_doc(c, result.reynolds) for c in rep.r_clusters],
        "d_clusters": [_cluster_doc(c) for c in rep.d_clusters],
        "confirmed": [{"r": ri, "d": list(dis)} for ri, dis in rep.confirmed],
        "efficiency": rep.efficiency,
        "regimes": list(rep.regimes),
        "extremes": result.extremes,
        "sensitivity": result.sensitivity,
    }


# --------------------------------------------------------------------------
# file outputs

def _fmt(v: float) -> str:
    return repr(float(v))


def reynolds_csv(result: AnalysisResult) -> str:
    rey = result.reynolds
    s = result.series
    crit = set(result.r_points)
    rows = ["index,date,v,a,eps,deltaEps,bif,bifNorm,critical"]
    for k in range(len(rey)):
        i = rey.start_offset + k
        rows.append(
            ",".join(
                [
                    str(i),
                    s.label(i),
                    _fmt(rey.vel[k]),
                    _fmt(rey.acc[k]),
                    _fmt(rey.eps[k]),
                    _fmt(rey.delta_eps[k]),
                    _fmt(rey.bif[k]),
                    _fmt(rey.bif_norm[k]),
                    "1" if i in crit else "0",
                ]
            )
        )
    return "\n".join(rows) + "\n"


def transport_csv(result: AnalysisResult) -> str:
    trans = result.transport
    s = result.series
    rows = ["index,date,D,deltaD"]
    for k in range(trans.d_values.size):
        i = trans.start_offset + k
        delta = "" if k == 0 else _fmt(trans.delta_d[k - 1])
        rows.append(f"{i},{s.label(i)},{_fmt(trans.d_values[k])},{delta}")
    return "\n".join(rows) + "\n"


def hurst_csv(result: AnalysisResult) -> str:
    s = result.series
    rows = ["origin,date,d0,kappa,hurst,r2,n_points,dropped_zeros"]
    for origin, fit in result.fits:
        if fit is None:
            continue
        rows.append(
            ",".join(
                [
                    str(origin),
                    s.label(origin),
                    _fmt(fit.d0),
                    _fmt(fit.kappa),
                    _fmt(fit.hurst),
                    _fmt(fit.r2),
                    str(fit.n_points),
                    str(fit.dropped_zeros),
                ]
            )
        )
    return "\n".join(rows) + "\n"


def write_outputs(result: AnalysisResult, out_dir: str, figures: bool = True) -> dict:
    """Write report.json and the three CSV tables (plus figures) to out_dir.

    Returns a name -> path map of everything written.
    """
    os.makedirs(out_dir, exist_ok=True)
    written: dict = {}
    doc = build_report_document(result)
    path = os.path.join(out_dir, "report.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    written["report"] = path
    for name, text in (
        ("reynolds.csv", reynolds_csv(result)),
        ("transport.csv", transport_csv(result)),
        ("hurst.csv", hurst_csv(result)),
    ):
        path = os.path.join(out_dir, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        written[name] = path
    if figures:
        from .figures import render_figures

        written.update(render_figures(result, out_dir))
    return written
