"""Analysis configuration: every free parameter the method leaves open.

Configs live in flat ``key = value`` text files so acceptance runs can be
checked in and reproduced; CLI flags override file values.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

from .diffusion import NORMALIZATIONS

__all__ = ["ConfigError", "AnalysisConfig", "load_config", "loads_config", "dumps_config", "save_config"]


class ConfigError(ValueError):
    """Invalid configuration value or file."""


@dataclass(frozen=True)
class AnalysisConfig:
    input_path: str | None = None
    window_n: int = 8
    msd_window: int = 32
    lag_min: int = 1
    lag_max: int = 16
    cluster_gap: int = 3
    msd_normalization: str = "literal"
    output_dir: str = "out"
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.window_n < 1:
            raise ConfigError(f"window_n must be >= 1, got {self.window_n}")
        if not 1 <= self.lag_min < self.lag_max:
            raise ConfigError(
                f"need 1 <= lag_min < lag_max, got {self.lag_min}..{self.lag_max}"
            )
        if self.cluster_gap < 1:
            raise ConfigError(f"cluster_gap must be >= 1, got {self.cluster_gap}")
        if self.msd_window < 8:
            raise ConfigError(f"msd_window must be >= 8, got {self.msd_window}")
        if self.msd_normalization not in NORMALIZATIONS:
            raise ConfigError(
                f"msd_normalization must be one of {NORMALIZATIONS}, "
                f"got {self.msd_normalization!r}"
            )

    def lags(self) -> list[int]:
        return list(range(self.lag_min, self.lag_max + 1))

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def override(self, **kwargs) -> "AnalysisConfig":
        given = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **given)


_INT_KEYS = {"window_n", "msd_window", "lag_min", "lag_max", "cluster_gap", "seed"}
_STR_KEYS = {"input_path", "msd_normalization", "output_dir"}


def loads_config(text: str) -> AnalysisConfig:
    """Parse flat ``key = value`` lines; '#' starts a comment, blanks ignored."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key in _INT_KEYS:
            if val == "":
                values[key] = None
            else:
                try:
                    values[key] = int(val)
                except ValueError:
                    raise ConfigError(f"line {lineno}: {key} needs an integer, got {val!r}") from None
        elif key in _STR_KEYS:
            values[key] = val if val else None
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    for key, v in values.items():
        if v is None and key not in ("seed", "input_path"):
            raise ConfigError(f"{key} may not be empty")
    return AnalysisConfig(**values)


def dumps_config(cfg: AnalysisConfig) -> str:
    lines = []
    for f in fields(cfg):
        v = getattr(cfg, f.name)
        lines.append(f"{f.name} = {'' if v is None else v}")
    return "\n".join(lines) + "\n"


def load_config(path: str) -> AnalysisConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_config(fh.read())


def save_config(cfg: AnalysisConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_config(cfg))
