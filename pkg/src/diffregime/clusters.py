"""Critical-point clustering, R/D overlap analysis and regime labels.

Detected critical indices are merged into dated clusters by a greedy 1-D
gap rule.  A disruption cluster found by the energy-increment indicator
(R source) counts as confirmed when its index interval intersects any
transport-detector cluster (D source); confirmed clusters are short-memory
(markovian) stages, unconfirmed ones long-memory stages.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

__all__ = [
    "DateCluster",
    "RegimeReport",
    "SHORT_MEMORY",
    "LONG_MEMORY",
    "cluster_points",
    "overlap_analysis",
    "classify_regimes",
]

SHORT_MEMORY = "short-memory"
LONG_MEMORY = "long-memory"


@dataclass(frozen=True)
class DateCluster:
    """Contiguous run of critical points with its date range."""

    start_index: int
    end_index: int
    start_label: str
    end_label: str
    source: str  # "R" or "D"
    point_count: int
    points: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.start_index > self.end_index:
            raise ValueError("cluster start after end")
        if self.source not in ("R", "D"):
            raise ValueError(f"source must be 'R' or 'D', got {self.source!r}")
        if self.point_count < 1:
            raise ValueError("a cluster holds at least one point")
        if self.points and not all(
            self.start_index <= p <= self.end_index for p in self.points
        ):
            raise ValueError("member points outside the cluster interval")

    def intersects(self, other: "DateCluster") -> bool:
        return self.start_index <= other.end_index and other.start_index <= self.end_index


@dataclass(frozen=True)
class RegimeReport:
    """Combined R/D verdict: clusters, confirmations, efficiency and regimes."""

    r_clusters: tuple[DateCluster, ...]
    d_clusters: tuple[DateCluster, ...]
    confirmed: tuple[tuple[int, tuple[int, ...]], ...] = ()
    efficiency: float | None = None
    regimes: tuple[str, ...] = ()


def cluster_points(
    points: Sequence[int],
    gap: int,
    labels: Sequence[str] | None,
    source: str = "R",
) -> list[DateCluster]:
    """Greedy 1-D merge: consecutive points at most ``gap`` indices apart join.

    Points must be ascending and unique; an empty list yields no clusters.
    """
    if gap < 1:
        raise ValueError(f"gap must be >= 1, got {gap}")
    pts = list(points)
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise ValueError("points must be ascending and unique")
    if not pts:
        return []

    def label_of(i: int) -> str:
        if labels is not None and 0 <= i < len(labels):
            return labels[i]
        return str(i)

    clusters: list[DateCluster] = []
    run = [pts[0]]
    for p in pts[1:]:
        if p - run[-1] <= gap:
            run.append(p)
        else:
            clusters.append(_make_cluster(run, label_of, source))
            run = [p]
    clusters.append(_make_cluster(run, label_of, source))
    return clusters


def _make_cluster(run: list[int], label_of, source: str) -> DateCluster:
    return DateCluster(
        start_index=run[0],
        end_index=run[-1],
        start_label=label_of(run[0]),
        end_label=label_of(run[-1]),
        source=source,
        point_count=len(run),
        points=tuple(run),
    )


def overlap_analysis(
    r_clusters: Sequence[DateCluster], d_clusters: Sequence[DateCluster]
) -> RegimeReport:
    """Mark every R-cluster whose interval intersects any D-cluster interval.

    efficiency = confirmed fraction of R-clusters, or None when there are no
    R-clusters to confirm.
    """
    confirmed: list[tuple[int, tuple[int, ...]]] = []
    for ri, rc in enumerate(r_clusters):
        hits = tuple(di for di, dc in enumerate(d_clusters) if rc.intersects(dc))
        if hits:
            confirmed.append((ri, hits))
    efficiency = len(confirmed) / len(r_clusters) if r_clusters else None
    return RegimeReport(
        r_clusters=tuple(r_clusters),
        d_clusters=tuple(d_clusters),
        confirmed=tuple(confirmed),
        efficiency=efficiency,
    )


def classify_regimes(report: RegimeReport) -> RegimeReport:
    """Label every R-cluster: confirmed by the markovian transport detector
    means short-memory, unconfirmed means long-memory."""
    confirmed_ids = {ri for ri, _ in report.confirmed}
    regimes = tuple(
        SHORT_MEMORY if ri in confirmed_ids else LONG_MEMORY
        for ri in range(len(report.r_clusters))
    )
    return replace(report, regimes=regimes)
