"""diffregime: diffusion-based regime analysis for uniform time series."""

from .clusters import (
    DateCluster,
    RegimeReport,
    classify_regimes,
    cluster_points,
    overlap_analysis,
)
from .config import AnalysisConfig, ConfigError, load_config, save_config
from .diffusion import (
    DiffusionCurve,
    PowerLawFit,
    TransportSeries,
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
from .pipeline import AnalysisResult, run_analysis, write_outputs
from .reynolds import ReynoldsSeries, r_critical_points, reynolds_series
from .series import (
    DataShapeError,
    DerivedSeries,
    SeriesFormatError,
    UniformSeries,
    acceleration,
    parse_csv,
    series_to_csv,
    velocity,
)
from .synth import FbmSpec, compute_vh, fbm_covariance, gen_fbm, gen_sbm

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "AnalysisResult",
    "ConfigError",
    "DataShapeError",
    "DateCluster",
    "DerivedSeries",
    "DiffusionCurve",
    "FbmSpec",
    "PowerLawFit",
    "RegimeReport",
    "ReynoldsSeries",
    "SeriesFormatError",
    "TransportSeries",
    "UniformSeries",
    "acceleration",
    "classify_regimes",
    "cluster_points",
    "compute_vh",
    "d_bifurcation_points",
    "diffusion_spectrum",
    "diffusive_acceleration",
    "diffusive_scale",
    "fbm_covariance",
    "fit_power_law",
    "gen_fbm",
    "gen_sbm",
    "load_config",
    "momentary_transport",
    "msd_curve",
    "overlap_analysis",
    "parse_csv",
    "r_critical_points",
    "reynolds_series",
    "rolling_hurst",
    "run_analysis",
    "save_config",
    "series_to_csv",
    "stabilization_factor",
    "transport_increments",
    "transport_integral_ratio",
    "velocity",
    "write_outputs",
]
