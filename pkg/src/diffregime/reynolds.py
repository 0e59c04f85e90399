"""Energy-increment bifurcation indicator.

Per step: specific energy eps_i = v_i^2 / 2, its increment delta_eps_i, the
finite-difference acceleration, and the product bif_i = delta_eps_i * vdot_i.
A strictly negative product flags disruption; it covers exactly the two
admissible sign patterns (energy draining while accelerating, or energy
building while decelerating), so no separate accelerator/decelerator mode
flag is needed.  The per-point pattern label is still kept for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import DataShapeError, UniformSeries, acceleration, velocity

__all__ = ["ReynoldsSeries", "reynolds_series", "r_critical_points"]

START_OFFSET = 2  # acceleration and delta_eps both first exist at index 2


@dataclass(frozen=True)
class ReynoldsSeries:
    """Per-step kinematics and bifurcation indicator, aligned at series index 2.

    All arrays have length n - 2; entry k belongs to series index k + 2.
    scenarios[k] is 'a' (accelerating, energy draining), 'b' (decelerating,
    energy building) or '' when neither strict pattern holds.
    """

    vel: np.ndarray
    acc: np.ndarray
    eps: np.ndarray
    delta_eps: np.ndarray
    bif: np.ndarray
    bif_norm: np.ndarray
    scenarios: tuple[str, ...]
    start_offset: int = START_OFFSET

    def __post_init__(self) -> None:
        size = self.vel.size
        for name in ("vel", "acc", "eps", "delta_eps", "bif", "bif_norm"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.size != size:
                raise DataShapeError("all indicator arrays must share one length")
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def __len__(self) -> int:
        return int(self.vel.size)


def reynolds_series(s: UniformSeries) -> ReynoldsSeries:
    """Compute velocity, acceleration, energy increments and the indicator."""
    if len(s) < 4:
        raise DataShapeError(
            f"indicator needs at least 4 samples (velocity, acceleration and "
            f"an energy increment must coexist), got {len(s)}"
        )
    v_full = velocity(s).values          # index 1 ..
    acc = acceleration(s).values         # index 2 ..
    eps_full = v_full * v_full / 2.0     # index 1 ..
    delta_eps = np.diff(eps_full)        # index 2 ..
    vel = v_full[1:]
    eps = eps_full[1:]
    bif = delta_eps * acc
    peak = float(np.max(np.abs(bif))) if bif.size else 0.0
    bif_norm = bif / peak if peak > 0.0 else np.zeros_like(bif)
    scenarios = tuple(
        "a" if (a > 0 and de < 0) else "b" if (a < 0 and de > 0) else ""
        for a, de in zip(acc, delta_eps)
    )
    return ReynoldsSeries(
        vel=vel,
        acc=acc,
        eps=eps,
        delta_eps=delta_eps,
        bif=bif,
        bif_norm=bif_norm,
        scenarios=scenarios,
    )


def r_critical_points(r: ReynoldsSeries) -> list[int]:
    """Series indices with a strictly negative bifurcation product.

    Zero is the equilibrium state, so exact zeros are never critical.
    """
    if r.bif.size == 0:
        raise DataShapeError("empty indicator series")
    hits = np.nonzero(r.bif < 0.0)[0]
    return [int(r.start_offset + k) for k in hits]
