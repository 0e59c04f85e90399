"""Diffusion analysis: empirical transport curves, power-law fits and the
generalized Hurst exponent, the macro/micro stabilization ratio, rolling
momentary transport, and markovian bifurcation detection.

The central estimator chain is

    msd_curve  ->  fit_power_law  ->  hurst = slope / 2

where the mean squared displacement at lag T is fitted as D0 * T^(kappa+1)
and the generalized Hurst exponent H = (kappa+1)/2 is deliberately left
unclamped (values outside (0,1) are meaningful for strongly trending or
strongly mean-reverting stretches).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .series import DataShapeError, UniformSeries

__all__ = [
    "DiffusionCurve",
    "PowerLawFit",
    "TransportSeries",
    "msd_curve",
    "fit_power_law",
    "rolling_hurst",
    "diffusive_scale",
    "diffusive_acceleration",
    "diffusion_spectrum",
    "stabilization_factor",
    "transport_integral_ratio",
    "momentary_transport",
    "transport_increments",
    "d_bifurcation_points",
]

NORMALIZATIONS = ("literal", "mean")


@dataclass(frozen=True)
class DiffusionCurve:
    """Empirical lag -> mean-squared-displacement pairs anchored at one origin.

    Lags are in sample-units.  msd_curve always produces integer lags >= 1;
    the type itself accepts any ascending positive grid so that analytically
    constructed curves (e.g. dense grids for integral checks) fit too.
    """

    origin_index: int
    lags: np.ndarray
    msd: np.ndarray
    window: int

    def __post_init__(self) -> None:
        lags = np.asarray(self.lags, dtype=float)
        msd = np.asarray(self.msd, dtype=float)
        if lags.ndim != 1 or lags.size == 0:
            raise DataShapeError("empty lag grid")
        if lags.size != msd.size:
            raise DataShapeError(f"{lags.size} lags vs {msd.size} msd values")
        if np.any(lags <= 0) or np.any(np.diff(lags) <= 0):
            raise DataShapeError("lags must be strictly ascending and positive")
        if np.any(~np.isfinite(msd)) or np.any(msd < 0):
            raise DataShapeError("msd values must be finite and nonnegative")
        for name, arr in (("lags", lags), ("msd", msd)):
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class PowerLawFit:
    """Fitted D(T) = d0 * T^kappa with the derived generalized Hurst exponent."""

    d0: float
    kappa: float
    hurst: float
    r2: float
    n_points: int
    dropped_zeros: int = 0

    def __post_init__(self) -> None:
        if self.d0 <= 0:
            raise ValueError(f"d0 must be positive, got {self.d0}")
        if self.hurst != (self.kappa + 1.0) / 2.0:
            raise ValueError("hurst must equal (kappa + 1) / 2 exactly")
        if not 0.0 <= self.r2 <= 1.0:
            raise ValueError(f"r2 out of [0, 1]: {self.r2}")
        if self.n_points < 3:
            raise ValueError(f"a power-law fit needs >= 3 points, got {self.n_points}")

    def as_record(self, origin: int) -> dict:
        return {
            "origin": origin,
            "d0": self.d0,
            "kappa": self.kappa,
            "hurst": self.hurst,
            "r2": self.r2,
            "n_points": self.n_points,
            "dropped_zeros": self.dropped_zeros,
        }


@dataclass(frozen=True)
class TransportSeries:
    """Rolling momentary transport D(x_i, T) and its first differences.

    d_values[k] lives at series index start_offset + k; delta_d[k] at
    start_offset + 1 + k (a difference needs two transport values).
    """

    d_values: np.ndarray
    delta_d: np.ndarray
    window_n: int
    start_offset: int

    def __post_init__(self) -> None:
        d = np.asarray(self.d_values, dtype=float)
        dd = np.asarray(self.delta_d, dtype=float)
        if np.any(d < 0):
            raise DataShapeError("momentary transport cannot be negative")
        if dd.size != d.size - 1:
            raise DataShapeError("delta_d must hold first differences of d_values")
        for name, arr in (("d_values", d), ("delta_d", dd)):
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def delta_offset(self) -> int:
        return self.start_offset + 1


def msd_curve(
    s: UniformSeries, origin: int, lags: list[int] | np.ndarray, window: int
) -> DiffusionCurve:
    """Single-path mean squared displacement around sample ``origin``.

    The expectation is estimated causally: for each lag T the squared
    displacements (x_{j+T} - x_j)^2 are averaged over the ``window`` start
    points j in [origin - window - T + 1, origin - T], i.e. the most recent
    ``window`` displacements that are fully observable at the origin.
    """
    lag_arr = np.asarray(lags, dtype=int)
    if lag_arr.size == 0:
        raise DataShapeError("empty lag list")
    if np.any(lag_arr < 1) or np.any(np.diff(lag_arr) <= 0):
        raise DataShapeError("lags must be ascending integers >= 1")
    if window < 8:
        raise DataShapeError(f"msd window must be >= 8, got {window}")
    max_lag = int(lag_arr[-1])
    if origin - window - max_lag < 0:
        raise DataShapeError(
            f"origin {origin} has insufficient history for window {window} "
            f"and max lag {max_lag} (needs origin >= {window + max_lag})"
        )
    if origin >= len(s):
        raise DataShapeError(f"origin {origin} beyond series of length {len(s)}")
    x = s.values
    out = np.empty(lag_arr.size)
    for k, lag in enumerate(lag_arr):
        j0 = origin - window - lag + 1
        disp = x[j0 + lag : origin + 1] - x[j0 : origin - lag + 1]
        out[k] = np.mean(disp * disp)
    return DiffusionCurve(origin_index=origin, lags=lag_arr, msd=out, window=window)


def _loglog_fit(lags: np.ndarray, msd: np.ndarray, dropped: int) -> PowerLawFit:
    ln_t = np.log(lags)
    ln_b = np.log(msd)
    design = np.column_stack([ln_t, np.ones_like(ln_t)])
    (slope, intercept), *_ = np.linalg.lstsq(design, ln_b, rcond=None)
    fitted = design @ (slope, intercept)
    ss_res = float(np.sum((ln_b - fitted) ** 2))
    ss_tot = float(np.sum((ln_b - np.mean(ln_b)) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    r2 = min(1.0, max(0.0, r2))
    kappa = float(slope) - 1.0
    return PowerLawFit(
        d0=float(np.exp(intercept)),
        kappa=kappa,
        hurst=(kappa + 1.0) / 2.0,
        r2=r2,
        n_points=int(lags.size),
        dropped_zeros=dropped,
    )


def fit_power_law(curve: DiffusionCurve) -> PowerLawFit:
    """Ordinary least squares on (ln T, ln msd).

    The fitted slope is kappa + 1, so hurst = slope / 2.  Zero-msd points
    carry no diffusion information and are dropped with a recorded count;
    fewer than 3 survivors is an error.
    """
    keep = curve.msd > 0
    dropped = int(np.sum(~keep))
    if int(np.sum(keep)) < 3:
        raise DataShapeError(
            f"power-law fit needs >= 3 positive msd points, has {int(np.sum(keep))} "
            f"after dropping {dropped} zeros"
        )
    return _loglog_fit(curve.lags[keep], curve.msd[keep], dropped)


def rolling_hurst(
    s: UniformSeries,
    lags: list[int] | np.ndarray,
    window: int,
    origins: np.ndarray | None = None,
) -> list[tuple[int, PowerLawFit | None]]:
    """Power-law fit at every admissible origin (vectorized msd + batch OLS).

    Returns (origin, fit) pairs in origin order; origins whose curve cannot
    be fitted (fewer than 3 positive msd points) carry None.
    """
    lag_arr = np.asarray(lags, dtype=int)
    if lag_arr.size == 0 or np.any(lag_arr < 1) or np.any(np.diff(lag_arr) <= 0):
        raise DataShapeError("lags must be ascending integers >= 1")
    if window < 8:
        raise DataShapeError(f"msd window must be >= 8, got {window}")
    n = len(s)
    first = window + int(lag_arr[-1])
    if origins is None:
        origins = np.arange(first, n)
    else:
        origins = np.asarray(origins, dtype=int)
        if origins.size and (origins.min() < first or origins.max() >= n):
            raise DataShapeError(
                f"origins must lie in [{first}, {n - 1}] for window {window} "
                f"and max lag {int(lag_arr[-1])}"
            )
    if origins.size == 0:
        return []
    x = s.values
    # msd matrix: rows = origins, cols = lags, via cumulative sums of the
    # squared displacement sequence per lag (identical windows to msd_curve)
    msd_mat = np.empty((origins.size, lag_arr.size))
    for k, lag in enumerate(lag_arr):
        d2 = (x[lag:] - x[:-lag]) ** 2
        csum = np.concatenate([[0.0], np.cumsum(d2)])
        hi = origins - lag + 1  # exclusive end in j-space
        msd_mat[:, k] = (csum[hi] - csum[hi - window]) / window
    fits: list[tuple[int, PowerLawFit | None]] = []
    all_positive = np.all(msd_mat > 0, axis=1)
    ln_t = np.log(lag_arr.astype(float))
    design = np.column_stack([ln_t, np.ones_like(ln_t)])
    pinv = np.linalg.pinv(design)
    ln_b = np.where(msd_mat > 0, np.log(np.where(msd_mat > 0, msd_mat, 1.0)), 0.0)
    betas = ln_b @ pinv.T  # rows: (slope, intercept), valid where all_positive
    fitted = betas @ design.T
    ss_res = np.sum((ln_b - fitted) ** 2, axis=1)
    ss_tot = np.sum((ln_b - ln_b.mean(axis=1, keepdims=True)) ** 2, axis=1)
    for row, origin in enumerate(origins):
        if all_positive[row]:
            slope = float(betas[row, 0])
            kappa = slope - 1.0
            r2 = 1.0 if ss_tot[row] == 0.0 else 1.0 - float(ss_res[row] / ss_tot[row])
            fits.append(
                (
                    int(origin),
                    PowerLawFit(
                        d0=float(np.exp(betas[row, 1])),
                        kappa=kappa,
                        hurst=(kappa + 1.0) / 2.0,
                        r2=min(1.0, max(0.0, r2)),
                        n_points=int(lag_arr.size),
                        dropped_zeros=0,
                    ),
                )
            )
        else:
            keep = msd_mat[row] > 0
            if int(np.sum(keep)) >= 3:
                fits.append(
                    (
                        int(origin),
                        _loglog_fit(
                            lag_arr[keep].astype(float),
                            msd_mat[row][keep],
                            int(np.sum(~keep)),
                        ),
                    )
                )
            else:
                fits.append((int(origin), None))
    return fits


def diffusive_scale(fit: PowerLawFit, t_lag: float) -> float:
    """Attraction scale sqrt(d0) * T^H."""
    if t_lag <= 0:
        raise ValueError(f"lag must be positive, got {t_lag}")
    return math.sqrt(fit.d0) * t_lag**fit.hurst


def diffusive_acceleration(fit: PowerLawFit, t_lag: float) -> float:
    """Second lag-derivative of the diffusive scale: sqrt(d0) H (H-1) T^(H-2).

    Negative throughout 0 < H < 1, zero at H in {0, 1}.
    """
    if t_lag <= 0:
        raise ValueError(f"lag must be positive, got {t_lag}")
    h = fit.hurst
    return math.sqrt(fit.d0) * h * (h - 1.0) * t_lag ** (h - 2.0)


def diffusion_spectrum(fit: PowerLawFit, freq: float) -> float:
    """Spectral form of the fitted transport law: d0 * f^(-kappa)."""
    if freq <= 0:
        raise ValueError(f"frequency must be positive, got {freq}")
    return fit.d0 * freq ** (-fit.kappa)


def transport_integral_ratio(lags: np.ndarray, d_values: np.ndarray) -> float:
    """Ratio of trapezoid integrals of D(T) over [Tmax/2, Tmax] vs [Tmin, Tmax/2].

    The split point is exactly the midpoint lag; when it falls between grid
    points the curve is interpolated linearly there.  This is the numeric core
    shared by stabilization_factor; it accepts any ascending grid including
    T = 0 so closed-form curves can be integrated from the origin.
    """
    t = np.asarray(lags, dtype=float)
    d = np.asarray(d_values, dtype=float)
    if t.size != d.size or t.size < 4:
        raise DataShapeError("need >= 4 grid points for the integral ratio")
    if np.any(np.diff(t) <= 0):
        raise DataShapeError("lag grid must be strictly ascending")
    split = t[-1] / 2.0
    if not t[0] < split:
        raise DataShapeError(f"T_min {t[0]} must be below the split point {split}")
    if split not in t:
        d_split = float(np.interp(split, t, d))
        idx = int(np.searchsorted(t, split))
        t = np.insert(t, idx, split)
        d = np.insert(d, idx, d_split)
    cut = int(np.searchsorted(t, split))
    low = float(np.trapezoid(d[: cut + 1], t[: cut + 1]))
    high = float(np.trapezoid(d[cut:], t[cut:]))
    if low == 0.0:
        raise DataShapeError("degenerate flat-zero curve: short-lag integral is 0")
    return high / low


def stabilization_factor(curve: DiffusionCurve) -> float:
    """Macro/micro stabilization ratio of the empirical transport D(T) = msd(T)/T.

    Values above 1 mean long lags carry more transport than short ones
    (macro-scale expansion); below 1 the short-lag band dominates.
    """
    if curve.lags.size < 4:
        raise DataShapeError("stabilization factor needs a curve spanning >= 4 lags")
    return transport_integral_ratio(curve.lags, curve.msd / curve.lags)


def _transport_normalizer(n: int, dt: float, normalization: str) -> float:
    if normalization not in NORMALIZATIONS:
        raise ValueError(
            f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}"
        )
    t_span = n * dt
    if normalization == "mean":
        return t_span * (n + 1)
    return t_span


def momentary_transport(
    s: UniformSeries, index: int, n: int, normalization: str = "literal"
) -> float:
    """Momentary transport at one sample: trailing squared deviations over T.

    D(x_i, T) = sum_{j=i-N..i} (x_i - x_j)^2 / T with T = N * dt.  The
    'literal' normalization divides by T only; 'mean' additionally divides by
    the N+1 window terms (the two differ by a constant factor, which cancels
    in sign-change detection).
    """
    if n < 1:
        raise ValueError(f"window must be >= 1, got {n}")
    if index < n:
        raise DataShapeError(
            f"index {index} has no room for a trailing window of {n} steps"
        )
    if index >= len(s):
        raise DataShapeError(f"index {index} beyond series of length {len(s)}")
    x = s.values
    dev = x[index] - x[index - n : index + 1]
    return float(np.sum(dev * dev)) / _transport_normalizer(n, s.dt, normalization)


def transport_increments(
    s: UniformSeries, n: int, normalization: str = "literal"
) -> TransportSeries:
    """Momentary transport at every admissible index plus first differences."""
    if n < 1:
        raise ValueError(f"window must be >= 1, got {n}")
    if len(s) <= n + 1:
        raise DataShapeError(
            f"series of length {len(s)} too short for transport window {n} "
            f"(needs length > {n + 1})"
        )
    x = s.values
    norm = _transport_normalizer(n, s.dt, normalization)
    count = len(s) - n
    d = np.empty(count)
    for k in range(count):
        i = n + k
        dev = x[i] - x[i - n : i + 1]
        d[k] = np.sum(dev * dev) / norm
    return TransportSeries(
        d_values=d, delta_d=np.diff(d), window_n=n, start_offset=n
    )


def d_bifurcation_points(t: TransportSeries) -> list[int]:
    """Series indices where the transport increment strictly changes sign.

    A point at index i means delta_d(i-1) * delta_d(i) < 0; exact zeros never
    produce points (strict inequality).
    """
    dd = t.delta_d
    if dd.size < 2:
        raise DataShapeError("need at least 2 transport increments")
    prod = dd[:-1] * dd[1:]
    hits = np.nonzero(prod < 0.0)[0]
    return [int(t.delta_offset + 1 + k) for k in hits]
