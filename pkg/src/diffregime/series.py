"""Uniform time-series container, CSV ingestion and finite-difference kinematics.

Every analysis in this package runs on a :class:`UniformSeries`: samples on a
fixed grid with step ``dt`` (1 sample-unit by default; calendar dates are
carried as labels only, so market holidays do not break uniformity).
"""

from __future__ import annotations

import datetime
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SeriesFormatError",
    "DataShapeError",
    "UniformSeries",
    "DerivedSeries",
    "parse_csv",
    "series_to_csv",
    "derived_to_csv",
    "velocity",
    "acceleration",
]

CSV_HEADER = "date,close"


class SeriesFormatError(ValueError):
    """Input text does not satisfy the ``date,close`` CSV contract."""


class DataShapeError(ValueError):
    """Series is too short or otherwise mis-shaped for the requested operation."""


def _format_value(v: float) -> str:
    # repr of a Python float is the shortest string that round-trips
    return repr(float(v))


@dataclass(frozen=True)
class UniformSeries:
    """Uniformly sampled scalar series.

    values    -- sample values x_i (read-only float array)
    epoch     -- calendar date of the first sample
    dt        -- grid step in sample-units (> 0)
    labels    -- optional per-sample ISO date strings, same length as values
    """

    values: np.ndarray
    epoch: datetime.date
    dt: float = 1.0
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 2:
            raise DataShapeError(f"series needs at least 2 samples, got {arr.size}")
        if not np.all(np.isfinite(arr)):
            raise SeriesFormatError("series contains non-finite values")
        if not (isinstance(self.dt, (int, float)) and math.isfinite(self.dt) and self.dt > 0):
            raise SeriesFormatError(f"dt must be a positive real, got {self.dt!r}")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != arr.size:
                raise SeriesFormatError(
                    f"{len(labels)} labels for {arr.size} samples"
                )
            object.__setattr__(self, "labels", labels)
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "dt", float(self.dt))

    def __len__(self) -> int:
        return int(self.values.size)

    def label(self, i: int) -> str:
        """Date label of sample ``i`` (falls back to the plain index)."""
        if self.labels is not None:
            return self.labels[i]
        return str(i)


@dataclass(frozen=True)
class DerivedSeries:
    """Finite-difference series; values[k] lives at parent index k + start_offset."""

    values: np.ndarray
    start_offset: int

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=float)
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)


def parse_csv(text: str) -> UniformSeries:
    """Parse ``date,close`` CSV text into a UniformSeries with dt = 1.

    Dates must be ISO-8601 and strictly increasing; any increasing sequence
    is accepted as uniform (holiday gaps are a labelling concern only).
    Errors report the offending line number.
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != CSV_HEADER:
        raise SeriesFormatError("missing or invalid header, expected 'date,close'")
    dates: list[datetime.date] = []
    labels: list[str] = []
    values: list[float] = []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise SeriesFormatError(f"line {lineno}: expected 'date,close', got {raw!r}")
        ds, vs = parts[0].strip(), parts[1].strip()
        try:
            d = datetime.date.fromisoformat(ds)
        except ValueError:
            raise SeriesFormatError(f"line {lineno}: invalid ISO date {ds!r}") from None
        try:
            v = float(vs)
        except ValueError:
            raise SeriesFormatError(f"line {lineno}: invalid decimal value {vs!r}") from None
        if not math.isfinite(v):
            raise SeriesFormatError(f"line {lineno}: non-finite value {vs!r}")
        if dates and d <= dates[-1]:
            raise SeriesFormatError(
                f"line {lineno}: dates must be strictly increasing ({ds} after {dates[-1]})"
            )
        dates.append(d)
        labels.append(ds)
        values.append(v)
    if len(values) < 2:
        raise SeriesFormatError(f"need at least 2 data rows, got {len(values)}")
    return UniformSeries(
        values=np.array(values), epoch=dates[0], dt=1.0, labels=tuple(labels)
    )


def series_to_csv(s: UniformSeries) -> str:
    """Serialize back to ``date,close`` text; inverse of parse_csv."""
    if s.labels is not None:
        labels = s.labels
    else:
        labels = tuple(
            (s.epoch + datetime.timedelta(days=7 * i)).isoformat() for i in range(len(s))
        )
    rows = [CSV_HEADER]
    rows.extend(f"{d},{_format_value(v)}" for d, v in zip(labels, s.values))
    return "\n".join(rows) + "\n"


def derived_to_csv(d: DerivedSeries) -> str:
    """Serialize a derived series as ``index,value`` rows (parent indices)."""
    rows = ["index,value"]
    rows.extend(
        f"{d.start_offset + k},{_format_value(v)}" for k, v in enumerate(d.values)
    )
    return "\n".join(rows) + "\n"


def velocity(s: UniformSeries) -> DerivedSeries:
    """First finite difference v_i = (x_i - x_{i-1}) / dt, defined from index 1."""
    if len(s) < 2:
        raise DataShapeError("velocity needs at least 2 samples")
    return DerivedSeries(values=np.diff(s.values) / s.dt, start_offset=1)


def acceleration(s: UniformSeries) -> DerivedSeries:
    """Second finite difference of x (first of v), defined from index 2."""
    if len(s) < 3:
        raise DataShapeError("acceleration needs at least 3 samples")
    return DerivedSeries(values=np.diff(s.values, n=2) / (s.dt * s.dt), start_offset=2)
