import numpy as np
import pytest

from diffregime.diffusion import (
    DiffusionCurve,
    d_bifurcation_points,
    diffusion_spectrum,
    diffusive_acceleration,
    diffusive_scale,
    fit_power_law,
    momentary_transport,
    msd_curve,
    rolling_hurst,
    stabilization_factor,
    transport_increments,
    transport_integral_ratio,
)
from diffregime.series import DataShapeError
from diffregime.synth import FbmSpec, gen_fbm

from conftest import dyadic_series, make_series


def power_curve(fn, lo=1.0, hi=8.0, n=8, origin=100, window=32):
    lags = np.linspace(lo, hi, n)
    return DiffusionCurve(origin_index=origin, lags=lags, msd=fn(lags), window=window)


class TestMsdCurve:
    def test_constant_series_is_zero(self):
        s = make_series([7.0] * 64)
        curve = msd_curve(s, origin=60, lags=[1, 2, 4], window=8)
        assert np.array_equal(curve.msd, [0.0, 0.0, 0.0])

    def test_ballistic_line(self):
        s = make_series(np.arange(64, dtype=float))
        curve = msd_curve(s, origin=60, lags=[1, 2, 4, 8], window=8)
        assert np.allclose(curve.msd, [1.0, 4.0, 16.0, 64.0])

    def test_fbm_scaling_exponent(self):
        path = gen_fbm(FbmSpec(hurst=0.7, length=2048, seed=5))
        curve = msd_curve(path, origin=2000, lags=list(range(1, 33)), window=256)
        fit = fit_power_law(curve)
        assert fit.kappa + 1 == pytest.approx(1.4, abs=0.25)

    def test_insufficient_history(self):
        s = make_series(np.arange(32, dtype=float))
        with pytest.raises(DataShapeError, match="insufficient history"):
            msd_curve(s, origin=20, lags=[1, 2, 16], window=8)

    def test_empty_lags(self):
        s = make_series(np.arange(64, dtype=float))
        with pytest.raises(DataShapeError):
            msd_curve(s, origin=60, lags=[], window=8)


class TestPowerLawFit:
    def test_exact_brownian_law(self):
        fit = fit_power_law(power_curve(lambda t: 4.0 * t))
        assert fit.kappa == pytest.approx(0.0, abs=1e-10)
        assert fit.d0 == pytest.approx(4.0, rel=1e-10)
        assert fit.hurst == pytest.approx(0.5, abs=1e-10)
        assert fit.r2 >= 1.0 - 1e-12

    def test_exact_persistent_law(self):
        fit = fit_power_law(power_curve(lambda t: t**1.4))
        assert fit.kappa == pytest.approx(0.4, rel=1e-10)
        assert fit.hurst == pytest.approx(0.7, rel=1e-10)
        assert fit.r2 >= 1.0 - 1e-12

    def test_hurst_identity_exact(self):
        fit = fit_power_law(power_curve(lambda t: 2.0 * t**0.73))
        assert fit.hurst == (fit.kappa + 1.0) / 2.0

    def test_unbounded_hurst(self):
        # a cubic msd gives kappa = 2, hurst = 1.5; no clamping to (0, 1)
        fit = fit_power_law(power_curve(lambda t: t**3))
        assert fit.hurst == pytest.approx(1.5, rel=1e-10)

    def test_zero_drop_accounting(self):
        curve = DiffusionCurve(origin_index=50, lags=np.array([1.0, 2, 3, 4, 5]),
                               msd=np.array([0.0, 2.0, 3.0, 4.0, 5.0]), window=8)
        fit = fit_power_law(curve)
        assert fit.dropped_zeros == 1
        assert fit.n_points == 4

    def test_too_few_positive_points(self):
        curve = DiffusionCurve(origin_index=50, lags=np.array([1.0, 2, 3, 4]),
                               msd=np.array([0.0, 0.0, 3.0, 4.0]), window=8)
        with pytest.raises(DataShapeError, match="3 positive"):
            fit_power_law(curve)

    def test_record_interface(self):
        fit = fit_power_law(power_curve(lambda t: 4.0 * t))
        rec = fit.as_record(origin=100)
        assert set(rec) == {"origin", "d0", "kappa", "hurst", "r2", "n_points",
                            "dropped_zeros"}
        assert rec["origin"] == 100


class TestClosedForms:
    def test_diffusive_scale_hand_value(self):
        fit = fit_power_law(power_curve(lambda t: 4.0 * t))
        assert diffusive_scale(fit, 9.0) == pytest.approx(6.0, rel=1e-9)
        assert diffusive_scale(fit, 1.0) == pytest.approx(2.0, rel=1e-9)

    def test_diffusive_scale_ballistic(self):
        fit = fit_power_law(power_curve(lambda t: t**2))
        assert diffusive_scale(fit, 5.0) == pytest.approx(5.0, rel=1e-9)

    def test_diffusive_acceleration_hand_values(self):
        fit = fit_power_law(power_curve(lambda t: 1.0 * t))
        assert diffusive_acceleration(fit, 1.0) == pytest.approx(-0.25, rel=1e-9)
        fit2 = fit_power_law(power_curve(lambda t: 4.0 * t**1.4))
        assert diffusive_acceleration(fit2, 2.0) == pytest.approx(
            2.0 * 0.7 * (-0.3) * 2.0 ** (-1.3), rel=1e-9)

    def test_diffusive_acceleration_vanishes_at_one(self):
        fit = fit_power_law(power_curve(lambda t: t**2))  # hurst exactly 1
        for t in (0.5, 1.0, 7.0):
            assert diffusive_acceleration(fit, t) == 0.0

    def test_diffusive_acceleration_negative_inside_unit_interval(self):
        fit = fit_power_law(power_curve(lambda t: t**1.4))
        assert diffusive_acceleration(fit, 3.0) < 0

    def test_spectrum(self):
        flat = fit_power_law(power_curve(lambda t: 4.0 * t))  # kappa 0
        for f in (0.5, 1.0, 8.0):
            assert diffusion_spectrum(flat, f) == pytest.approx(4.0, rel=1e-9)
        fit = fit_power_law(power_curve(lambda t: t**1.4))
        assert diffusion_spectrum(fit, 2.0) == pytest.approx(2.0 ** -0.4, rel=1e-9)
        assert diffusion_spectrum(fit, 1.0) == pytest.approx(fit.d0, rel=1e-12)


class TestStabilization:
    def test_constant_transport_from_origin(self):
        t = np.linspace(0.0, 4.0, 65)
        assert transport_integral_ratio(t, np.full(65, 3.7)) == pytest.approx(1.0)

    def test_linear_transport_from_origin(self):
        t = np.linspace(0.0, 4.0, 65)
        assert transport_integral_ratio(t, t) == pytest.approx(3.0)

    def test_interpolated_split(self):
        # odd grid without the midpoint: split at 2.5 interpolates linearly
        t = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
        got = transport_integral_ratio(t, t)
        assert got == pytest.approx((25 - 6.25) / (6.25 - 1), rel=1e-12)

    def test_power_law_curve_close_to_closed_form(self):
        lags = np.arange(1, 129, dtype=float)
        for kappa in (-0.5, 0.5, 1.0):
            curve = DiffusionCurve(origin_index=500, lags=lags,
                                   msd=lags ** (kappa + 1.0), window=32)
            t0, t1 = lags[0], lags[-1]
            p = kappa + 1.0
            exact = (t1**p - (t1 / 2) ** p) / ((t1 / 2) ** p - t0**p)
            assert stabilization_factor(curve) == pytest.approx(exact, rel=0.01)

    def test_decreasing_transport_below_one(self):
        lags = np.arange(1, 65, dtype=float)
        curve = DiffusionCurve(origin_index=500, lags=lags, msd=lags**0.5, window=32)
        assert stabilization_factor(curve) < 1.0

    def test_degenerate_zero_curve(self):
        t = np.linspace(0.0, 4.0, 16)
        with pytest.raises(DataShapeError, match="flat-zero"):
            transport_integral_ratio(t, np.zeros(16))

    def test_needs_four_lags(self):
        with pytest.raises(DataShapeError):
            transport_integral_ratio(np.array([1.0, 2, 3]), np.array([1.0, 1, 1]))


class TestMomentaryTransport:
    def test_constant_series(self):
        s = make_series([3.0] * 10)
        for n in (1, 3, 5):
            assert momentary_transport(s, 8, n) == 0.0

    def test_hand_value(self):
        s = make_series([0.0, 1.0, 2.0])
        assert momentary_transport(s, 2, 2) == pytest.approx(2.5)

    def test_mean_normalization_divides_by_window_terms(self):
        s = make_series([0.0, 1.0, 2.0])
        lit = momentary_transport(s, 2, 2, "literal")
        mean = momentary_transport(s, 2, 2, "mean")
        assert mean == pytest.approx(lit / 3.0)

    def test_window_before_start(self):
        s = make_series([0.0, 1.0, 2.0])
        with pytest.raises(DataShapeError):
            momentary_transport(s, 1, 2)

    def test_shift_invariance_exact(self, rng):
        s = dyadic_series(rng, 32)
        shifted = make_series(s.values + 64.0)
        for i in (10, 20, 31):
            assert momentary_transport(shifted, i, 8) == momentary_transport(s, i, 8)

    def test_quadratic_scale_covariance_exact(self, rng):
        s = dyadic_series(rng, 32)
        scaled = make_series(s.values * 2.0)
        for i in (10, 20, 31):
            assert momentary_transport(scaled, i, 8) == 4.0 * momentary_transport(s, i, 8)


class TestTransportIncrements:
    def test_linear_series_constant_transport(self):
        s = make_series(np.arange(20, dtype=float))
        t = transport_increments(s, 5)
        assert np.all(t.d_values == t.d_values[0])
        assert np.all(t.delta_d == 0.0)

    def test_constant_series_all_zero(self):
        t = transport_increments(make_series([2.0] * 15), 4)
        assert np.all(t.d_values == 0.0)

    def test_step_series_positive_increment_at_entry(self):
        x = [0.0] * 7 + [1.0] * 3
        t = transport_increments(make_series(x), 3)
        step_k = 7 - t.delta_offset  # delta at the step index
        assert t.delta_d[step_k] > 0.0
        assert np.all(t.delta_d[:step_k] == 0.0)

    def test_alignment(self):
        s = make_series(np.sin(np.arange(20.0)))
        t = transport_increments(s, 4)
        assert t.start_offset == 4
        assert t.d_values.size == 16
        assert t.delta_d.size == 15
        assert t.d_values[3] == momentary_transport(s, 7, 4)

    def test_too_short(self):
        with pytest.raises(DataShapeError):
            transport_increments(make_series([1.0, 2.0, 3.0]), 2)


class TestBifurcationPoints:
    def _series(self, delta_d, n=2):
        # build a TransportSeries-like carrier through the real constructor
        from diffregime.diffusion import TransportSeries

        d = np.concatenate([[10.0], 10.0 + np.cumsum(delta_d)])
        return TransportSeries(d_values=d, delta_d=np.asarray(delta_d, dtype=float),
                               window_n=n, start_offset=n)

    def test_direct_sign_product(self):
        t = self._series([0.5, -0.2])
        assert d_bifurcation_points(t) == [t.delta_offset + 1]

    def test_exact_zero_never_counts(self):
        t = self._series([0.5, 0.0, -0.2])
        assert d_bifurcation_points(t) == []

    def test_monotone_has_no_points(self):
        t = self._series([0.5, 0.4, 0.3, 0.2])
        assert d_bifurcation_points(t) == []

    def test_points_satisfy_strict_product(self, rng):
        s = make_series(rng.normal(size=100))
        t = transport_increments(s, 6)
        pts = d_bifurcation_points(t)
        assert pts, "expected sign changes on a rough random walk"
        for i in pts:
            k = i - t.delta_offset
            assert t.delta_d[k - 1] * t.delta_d[k] < 0.0


class TestRollingHurst:
    def test_matches_single_origin_path(self):
        path = gen_fbm(FbmSpec(hurst=0.6, length=512, seed=9))
        lags = list(range(1, 17))
        fits = rolling_hurst(path, lags, 64)
        by_origin = dict(fits)
        for origin in (100, 256, 511):
            direct = fit_power_law(msd_curve(path, origin, lags, 64))
            assert by_origin[origin].hurst == pytest.approx(direct.hurst, abs=1e-9)
            assert by_origin[origin].d0 == pytest.approx(direct.d0, rel=1e-9)
            assert by_origin[origin].r2 == pytest.approx(direct.r2, abs=1e-9)

    def test_unfittable_origins_return_none(self):
        s = make_series([5.0] * 80)
        fits = rolling_hurst(s, [1, 2, 4], 8)
        assert fits and all(f is None for _, f in fits)

    def test_first_origin_respects_history(self):
        s = make_series(np.arange(64, dtype=float))
        fits = rolling_hurst(s, [1, 2, 4], 16)
        assert fits[0][0] == 16 + 4
