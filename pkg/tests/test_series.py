import datetime

import numpy as np
import pytest
from hypothesis import given, strategies as st

from diffregime.series import (
    DataShapeError,
    SeriesFormatError,
    acceleration,
    derived_to_csv,
    parse_csv,
    series_to_csv,
    velocity,
)

from conftest import make_series


MINIMAL = "date,close\n2006-07-16,10739.35\n2006-07-23,11090.67"


class TestParseCsv:
    def test_minimal_two_rows(self):
        s = parse_csv(MINIMAL)
        assert len(s) == 2
        assert s.dt == 1.0
        assert s.labels == ("2006-07-16", "2006-07-23")
        assert s.values[0] == 10739.35
        assert s.epoch == datetime.date(2006, 7, 16)

    def test_non_monotone_dates_rejected(self):
        with pytest.raises(SeriesFormatError, match="strictly increasing"):
            parse_csv("date,close\n2006-07-23,1\n2006-07-16,2")

    def test_duplicate_dates_rejected(self):
        with pytest.raises(SeriesFormatError, match="strictly increasing"):
            parse_csv("date,close\n2006-07-16,1\n2006-07-16,2")

    def test_malformed_row_reports_line_number(self):
        with pytest.raises(SeriesFormatError, match="line 3"):
            parse_csv("date,close\n2006-07-16,1.0\nnot-a-row")

    def test_bad_value_reports_line_number(self):
        with pytest.raises(SeriesFormatError, match="line 2"):
            parse_csv("date,close\n2006-07-16,abc\n2006-07-23,2")

    def test_non_finite_value_rejected(self):
        with pytest.raises(SeriesFormatError, match="non-finite"):
            parse_csv("date,close\n2006-07-16,nan\n2006-07-23,2")

    def test_fewer_than_two_rows(self):
        with pytest.raises(SeriesFormatError, match="at least 2"):
            parse_csv("date,close\n2006-07-16,1.0")

    def test_missing_header(self):
        with pytest.raises(SeriesFormatError, match="header"):
            parse_csv("2006-07-16,1.0\n2006-07-23,2.0")

    def test_bundled_weekly_file_has_189_rows(self, dji_csv_path):
        with open(dji_csv_path, encoding="utf-8") as fh:
            s = parse_csv(fh.read())
        assert len(s) == 189
        assert s.labels[0] == "2006-07-16"
        assert s.labels[-1] == "2010-02-21"

    def test_round_trip(self, dji_csv_path):
        with open(dji_csv_path, encoding="utf-8") as fh:
            text = fh.read()
        s = parse_csv(text)
        again = parse_csv(series_to_csv(s))
        assert np.array_equal(again.values, s.values)
        assert again.labels == s.labels


class TestDifferences:
    def test_velocity_constant_slope(self):
        v = velocity(make_series([0, 1, 2]))
        assert np.array_equal(v.values, [1.0, 1.0])
        assert v.start_offset == 1

    def test_velocity_hand_case(self):
        v = velocity(make_series([1, 0, 0.5]))
        assert np.array_equal(v.values, [-1.0, 0.5])

    def test_velocity_constant_series(self):
        assert np.array_equal(velocity(make_series([5, 5, 5])).values, [0.0, 0.0])

    def test_velocity_too_short(self):
        with pytest.raises(Exception):
            make_series([1.0])  # the container itself refuses length 1

    def test_acceleration_linear(self):
        a = acceleration(make_series([0, 1, 2]))
        assert np.array_equal(a.values, [0.0])
        assert a.start_offset == 2

    def test_acceleration_hand_case(self):
        assert np.array_equal(acceleration(make_series([1, 0, 0.5])).values, [1.5])

    def test_acceleration_quadratic(self):
        assert np.array_equal(acceleration(make_series([0, 1, 4, 9])).values, [2.0, 2.0])

    def test_acceleration_too_short(self):
        with pytest.raises(DataShapeError):
            acceleration(make_series([0, 1]))

    def test_affine_series_has_constant_velocity_zero_acceleration(self):
        x = 3.0 + 0.5 * np.arange(12)
        s = make_series(x, dt=0.5)
        assert np.all(velocity(s).values == velocity(s).values[0])
        assert np.all(acceleration(s).values == 0.0)

    @given(st.lists(st.integers(-1000, 1000), min_size=2, max_size=40),
           st.integers(-500, 500))
    def test_velocity_commutes_with_constant_shift(self, xs, c):
        s = make_series(xs)
        shifted = make_series([x + c for x in xs])
        assert np.array_equal(velocity(s).values, velocity(shifted).values)


def test_derived_csv_uses_parent_indices():
    d = velocity(make_series([0, 1, 3]))
    assert derived_to_csv(d) == "index,value\n1,1.0\n2,2.0\n"
