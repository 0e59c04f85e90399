"""Command-line front end: synthesize paths, run analyses, render reports.

Exit codes: 0 success, 2 usage/config error, 3 I/O failure, 4 data-shape
error (input too short or malformed for the configured windows).
"""

from __future__ import annotations

import json
import sys

import click
import jsonschema

from .config import AnalysisConfig, ConfigError, load_config
from .pipeline import REPORT_SCHEMA, run_analysis, write_outputs
from .series import DataShapeError, SeriesFormatError, parse_csv, series_to_csv
from .synth import FbmSpec, gen_fbm, gen_sbm

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_SHAPE = 4


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
def main() -> None:
    """Diffusion-based regime analysis for uniform time series."""


@main.command()
@click.argument("kind", type=click.Choice(["sbm", "fbm"]))
@click.option("--hurst", type=float, default=None, help="Hurst exponent in (0,1); fbm only.")
@click.option("--length", type=int, required=True, help="Number of samples.")
@click.option("--dt", type=float, default=1.0, show_default=True)
@click.option("--scale", type=float, default=1.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
def synth(kind, hurst, length, dt, scale, seed, out_path):
    """Generate a seeded Brownian path and write it as date,close CSV."""
    try:
        if kind == "sbm":
            if hurst is not None:
                _fail(EXIT_USAGE, "--hurst applies to fbm only (sbm is fixed at 0.5)")
            series = gen_sbm(length, dt=dt, scale=scale, seed=seed)
        else:
            if hurst is None:
                _fail(EXIT_USAGE, "fbm requires --hurst")
            if not 0.0 < hurst < 1.0:
                _fail(EXIT_USAGE, f"--hurst must lie in the open interval (0, 1), got {hurst}")
            series = gen_fbm(FbmSpec(hurst=hurst, length=length, dt=dt, scale=scale, seed=seed))
    except ValueError as exc:
        _fail(EXIT_USAGE, str(exc))
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(series_to_csv(series))
    except OSError as exc:
        _fail(EXIT_IO, f"cannot write {out_path}: {exc}")
    click.echo(
        json.dumps(
            {
                "kind": kind,
                "hurst": 0.5 if kind == "sbm" else hurst,
                "length": length,
                "dt": dt,
                "scale": scale,
                "seed": seed,
                "out": out_path,
            }
        )
    )


@main.command()
@click.argument("input_file", type=click.Path(dir_okay=False), required=False)
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="Flat key=value config file.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None, help="Output directory.")
@click.option("--window-n", type=int, default=None, help="Momentary-transport window N.")
@click.option("--msd-window", type=int, default=None, help="Start points averaged per lag.")
@click.option("--lag-min", type=int, default=None)
@click.option("--lag-max", type=int, default=None)
@click.option("--cluster-gap", type=int, default=None)
@click.option("--msd-normalization", type=click.Choice(["literal", "mean"]), default=None)
@click.option("--seed", type=int, default=None)
@click.option("--figures/--no-figures", default=True, show_default=True, help="Render PNG charts next to the CSVs.")
def analyze(input_file, config_path, out_dir, window_n, msd_window, lag_min,
            lag_max, cluster_gap, msd_normalization, seed, figures):
    """Run the combined R/D analysis and write report.json plus plot tables."""
    try:
        cfg = load_config(config_path) if config_path else AnalysisConfig()
        cfg = cfg.override(
            input_path=input_file,
            output_dir=out_dir,
            window_n=window_n,
            msd_window=msd_window,
            lag_min=lag_min,
            lag_max=lag_max,
            cluster_gap=cluster_gap,
            msd_normalization=msd_normalization,
            seed=seed,
        )
    except ConfigError as exc:
        _fail(EXIT_USAGE, str(exc))
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    if cfg.input_path is None:
        _fail(EXIT_USAGE, "no input file (pass INPUT_FILE or set input_path in the config)")
    try:
        with open(cfg.input_path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        _fail(EXIT_IO, f"cannot read {cfg.input_path}: {exc}")
    try:
        series = parse_csv(text)
        result = run_analysis(series, cfg)
    except SeriesFormatError as exc:
        _fail(EXIT_SHAPE, f"{cfg.input_path}: {exc}")
    except DataShapeError as exc:
        _fail(EXIT_SHAPE, str(exc))
    try:
        written = write_outputs(result, cfg.output_dir, figures=figures)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot write outputs to {cfg.output_dir}: {exc}")
    click.echo(f"wrote {len(written)} files to {cfg.output_dir}")


def _format_report(doc: dict, fmt: str) -> str:
    rows = []
    for kind in ("r_clusters", "d_clusters"):
        for k, c in enumerate(doc[kind]):
            regime = ""
            if kind == "r_clusters":
                regimes = doc["regimes"]
                regime = regimes[k] if k < len(regimes) else ""
            rows.append(
                (
                    c["source"],
                    f"{c['start_label']} .. {c['end_label']}",
                    str(c["point_count"]),
                    regime,
                )
            )
    rows.sort(key=lambda r: r[1])
    header = ("source", "date range", "points", "regime")
    eff = doc["efficiency"]
    eff_text = "n/a" if eff is None else f"{eff:.2f}"
    extremes = doc["extremes"]
    lines = []
    if fmt == "markdown":
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "|".join(["---"] * len(header)) + "|")
        lines.extend("| " + " | ".join(r) + " |" for r in rows)
        lines.append("")
        lines.append(f"- confirmed fraction of R clusters: {eff_text}")
        lines.append(f"- indicator minimum at: {extremes['bif_min_date']}")
        lines.append(f"- largest transport increment at: {extremes['dmax_date']}")
    else:
        widths = [max(len(header[i]), max((len(r[i]) for r in rows), default=0)) for i in range(4)]
        lines.append("  ".join(h.ljust(widths[i]) for i, h in enumerate(header)))
        lines.extend("  ".join(r[i].ljust(widths[i]) for i in range(4)) for r in rows)
        lines.append("")
        lines.append(f"confirmed fraction of R clusters: {eff_text}")
        lines.append(f"indicator minimum at: {extremes['bif_min_date']}")
        lines.append(f"largest transport increment at: {extremes['dmax_date']}")
    return "\n".join(lines)


@main.command()
@click.argument("report_path", type=click.Path(dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["text", "markdown"]), default="text", show_default=True)
def report(report_path, fmt):
    """Render a report.json as a human-readable chronology."""
    try:
        with open(report_path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot read {report_path}: {exc}")
    except json.JSONDecodeError as exc:
        _fail(EXIT_USAGE, f"{report_path} is not valid JSON: {exc}")
    try:
        jsonschema.validate(doc, REPORT_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "(document root)"
        _fail(EXIT_USAGE, f"report schema mismatch at {path}: {exc.message}")
    click.echo(_format_report(doc, fmt))


if __name__ == "__main__":
    main()
