"""Fire-front location and spread-rate estimation from temperature profiles."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


def locate_front(x, values, threshold: float, direction: int = +1) -> Optional[float]:
    """Outermost crossing of `values` through `threshold` along a 1D profile.

    The crossing is linearly interpolated between the bracketing cells;
    direction +1 picks the crossing with the largest coordinate, -1 the
    smallest. Returns None when no crossing exists (profile entirely below
    the threshold, or saturated entirely above it).
    """
    if direction not in (-1, +1):
        raise ValueError("direction must be +1 or -1")
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.shape != values.shape:
        raise ValueError("locate_front expects matching 1D coordinate/value arrays")
    d = values - threshold
    positions = list(x[d == 0.0])
    strict = d[:-1] * d[1:] < 0.0
    for i in np.nonzero(strict)[0]:
        frac = d[i] / (d[i] - d[i + 1])
        positions.append(x[i] + frac * (x[i + 1] - x[i]))
    if not positions:
        return None
    return float(max(positions) if direction > 0 else min(positions))


def estimate_speed(times, positions, window: tuple[float, float]) -> tuple[float, float]:
    """Least-squares spread rate over a time window.

    Returns (speed, residual) where residual is the RMS deviation of the
    linear fit. Requires at least five finite samples inside the window.
    """
    times = np.asarray(times, dtype=float)
    positions = np.asarray(positions, dtype=float)
    lo, hi = window
    mask = (times >= lo) & (times <= hi) & np.isfinite(positions)
    t, s = times[mask], positions[mask]
    if t.size < 5:
        raise ValueError(f"speed fit needs >= 5 samples in window, got {t.size}")
    slope, intercept = np.polyfit(t, s, 1)
    residual = float(np.sqrt(np.mean((s - (slope * t + intercept)) ** 2)))
    return float(slope), residual


@dataclass
class FrontTrace:
    """Time series of front positions with an optional fitted speed."""

    times: list = field(default_factory=list)
    positions: list = field(default_factory=list)
    window: Optional[tuple[float, float]] = None
    speed: Optional[float] = None
    residual: Optional[float] = None

    def add(self, t: float, position: Optional[float]) -> None:
        if self.times and t <= self.times[-1]:
            raise ValueError("front trace times must be strictly increasing")
        self.times.append(float(t))
        self.positions.append(float("nan") if position is None else float(position))

    def __len__(self) -> int:
        return len(self.times)

    def fit(self, window: tuple[float, float]) -> tuple[float, float]:
        """Fit and store the spread rate over `window`."""
        self.speed, self.residual = estimate_speed(self.times, self.positions, window)
        self.window = (float(window[0]), float(window[1]))
        return self.speed, self.residual

    def speed_to_date(self) -> np.ndarray:
        """Running least-squares slope using all finite samples so far;
        NaN until five samples are available."""
        t = np.asarray(self.times, dtype=float)
        s = np.asarray(self.positions, dtype=float)
        ok = np.isfinite(s)
        tm = np.where(ok, t, 0.0)
        sm = np.where(ok, s, 0.0)
        n = np.cumsum(ok)
        st = np.cumsum(tm)
        ss = np.cumsum(sm)
        stt = np.cumsum(tm * tm)
        sts = np.cumsum(tm * sm)
        with np.errstate(divide="ignore", invalid="ignore"):
            denom = n * stt - st * st
            slope = (n * sts - st * ss) / denom
        slope[(n < 5) | ~np.isfinite(slope)] = np.nan
        return slope
