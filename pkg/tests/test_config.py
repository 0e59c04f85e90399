import pytest

from diffregime.config import (
    AnalysisConfig,
    ConfigError,
    dumps_config,
    load_config,
    loads_config,
    save_config,
)


def test_defaults():
    cfg = AnalysisConfig()
    assert cfg.window_n == 8
    assert cfg.msd_window == 32
    assert (cfg.lag_min, cfg.lag_max) == (1, 16)
    assert cfg.cluster_gap == 3
    assert cfg.msd_normalization == "literal"
    assert cfg.seed is None
    assert cfg.lags() == list(range(1, 17))


def test_round_trip_lossless(tmp_path):
    cfg = AnalysisConfig(input_path="data/x.csv", window_n=5, msd_window=16,
                         lag_min=2, lag_max=9, cluster_gap=2,
                         msd_normalization="mean", output_dir="results", seed=77)
    path = tmp_path / "a.cfg"
    save_config(cfg, str(path))
    assert load_config(str(path)) == cfg


def test_round_trip_none_fields():
    cfg = AnalysisConfig()
    assert loads_config(dumps_config(cfg)) == cfg


def test_comments_and_blank_lines():
    cfg = loads_config("# comment\n\nwindow_n = 4  # trailing\nlag_max = 20\n")
    assert cfg.window_n == 4
    assert cfg.lag_max == 20


def test_unknown_key():
    with pytest.raises(ConfigError, match="unknown key"):
        loads_config("windowing = 4\n")


def test_bad_int():
    with pytest.raises(ConfigError, match="integer"):
        loads_config("window_n = four\n")


def test_invalid_values():
    with pytest.raises(ConfigError):
        AnalysisConfig(window_n=0)
    with pytest.raises(ConfigError):
        AnalysisConfig(lag_min=5, lag_max=5)
    with pytest.raises(ConfigError):
        AnalysisConfig(cluster_gap=0)
    with pytest.raises(ConfigError):
        AnalysisConfig(msd_normalization="median")
    with pytest.raises(ConfigError):
        AnalysisConfig(msd_window=4)


def test_override_ignores_none():
    cfg = AnalysisConfig().override(window_n=None, cluster_gap=5)
    assert cfg.window_n == 8
    assert cfg.cluster_gap == 5


def test_checked_in_config_matches_defaults(dji_config_path):
    cfg = load_config(dji_config_path)
    defaults = AnalysisConfig()
    for name in ("window_n", "msd_window", "lag_min", "lag_max", "cluster_gap",
                 "msd_normalization"):
        assert getattr(cfg, name) == getattr(defaults, name)
