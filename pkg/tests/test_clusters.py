import pytest
from hypothesis import given, strategies as st

from diffregime.clusters import (
    DateCluster,
    classify_regimes,
    cluster_points,
    overlap_analysis,
)

LABELS = [f"2008-{1 + i // 28:02d}-{1 + i % 28:02d}" for i in range(200)]


def _cluster(lo, hi, source="R"):
    return DateCluster(start_index=lo, end_index=hi, start_label=str(lo),
                       end_label=str(hi), source=source, point_count=hi - lo + 1,
                       points=tuple(range(lo, hi + 1)))


class TestClusterPoints:
    def test_gap_rule_by_hand(self):
        out = cluster_points([3, 4, 9], gap=2, labels=LABELS)
        assert [(c.start_index, c.end_index) for c in out] == [(3, 4), (9, 9)]
        assert out[0].start_label == LABELS[3]
        assert out[1].point_count == 1

    def test_empty_points(self):
        assert cluster_points([], gap=3, labels=LABELS) == []

    def test_unsorted_rejected(self):
        with pytest.raises(ValueError, match="ascending"):
            cluster_points([5, 3], gap=2, labels=LABELS)
        with pytest.raises(ValueError, match="ascending"):
            cluster_points([3, 3], gap=2, labels=LABELS)

    def test_boundary_gap_merges(self):
        out = cluster_points([1, 4, 8], gap=3, labels=LABELS)
        assert [(c.start_index, c.end_index) for c in out] == [(1, 4), (8, 8)]
        merged = cluster_points([1, 4, 8], gap=4, labels=LABELS)
        assert [(c.start_index, c.end_index) for c in merged] == [(1, 8)]

    @given(st.sets(st.integers(0, 150), min_size=1, max_size=40),
           st.integers(1, 6))
    def test_partition_property(self, pts, gap):
        points = sorted(pts)
        out = cluster_points(points, gap=gap, labels=LABELS)
        covered = [p for c in out for p in c.points]
        assert covered == points  # every point in exactly one cluster, in order
        for a, b in zip(out, out[1:]):
            assert b.start_index - a.end_index > gap  # clusters cannot touch
        bigger = cluster_points(points, gap=gap + 1, labels=LABELS)
        assert len(bigger) <= len(out)  # growing the gap never splits clusters


class TestOverlap:
    def test_identical_lists_full_efficiency(self):
        r = [_cluster(0, 5), _cluster(10, 12)]
        d = [_cluster(0, 5, "D"), _cluster(10, 12, "D")]
        rep = overlap_analysis(r, d)
        assert rep.efficiency == 1.0
        assert [ri for ri, _ in rep.confirmed] == [0, 1]

    def test_disjoint_lists_zero_efficiency(self):
        rep = overlap_analysis([_cluster(0, 5)], [_cluster(10, 12, "D")])
        assert rep.efficiency == 0.0
        assert rep.confirmed == ()

    def test_no_r_clusters_undefined(self):
        rep = overlap_analysis([], [_cluster(0, 5, "D")])
        assert rep.efficiency is None

    def test_intersection_is_symmetric(self):
        r = _cluster(3, 8)
        d = _cluster(8, 15, "D")
        assert r.intersects(d) and d.intersects(r)
        rep = overlap_analysis([r], [d])
        assert rep.efficiency == 1.0

    def test_efficiency_monotone_under_superset(self):
        r = [_cluster(0, 5), _cluster(20, 25), _cluster(40, 45)]
        small = [_cluster(4, 6, "D")]
        big = small + [_cluster(24, 24, "D")]
        assert overlap_analysis(r, big).efficiency >= overlap_analysis(r, small).efficiency


class TestRegimes:
    def test_all_confirmed_all_short(self):
        r = [_cluster(0, 5), _cluster(10, 12)]
        d = [_cluster(2, 11, "D")]
        rep = classify_regimes(overlap_analysis(r, d))
        assert rep.regimes == ("short-memory", "short-memory")

    def test_none_confirmed_all_long(self):
        rep = classify_regimes(overlap_analysis([_cluster(0, 5)], []))
        assert rep.regimes == ("long-memory",)

    def test_mixed(self):
        r = [_cluster(0, 5), _cluster(20, 25)]
        d = [_cluster(5, 7, "D")]
        rep = classify_regimes(overlap_analysis(r, d))
        assert rep.regimes == ("short-memory", "long-memory")
        assert rep.efficiency == 0.5
