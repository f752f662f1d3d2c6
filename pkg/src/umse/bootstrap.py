"""Percentile bootstrap intervals for uMSE and uPSNR.

Resample ``k`` draws ``n`` pixel indices with replacement from its own
generator seeded with ``derive_seed(config.seed, "bootstrap", k)``, so the
resample set does not depend on evaluation order. Quantiles use linear
interpolation between order statistics (numpy's default, Hyndman-Fan
type 7).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .rng import generator

DEFAULT_RESAMPLES = 1000


@dataclass(frozen=True)
class BootstrapConfig:
    resamples_k: int = DEFAULT_RESAMPLES
    alpha: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.resamples_k < 2:
            raise ValueError("resamples_k must be at least 2")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")


@dataclass(frozen=True)
class Interval:
    low: float
    high: float

    def __contains__(self, value) -> bool:
        return self.low <= value <= self.high

    @property
    def width(self) -> float:
        return self.high - self.low


@dataclass(frozen=True)
class BootstrapResult:
    ci_umse: Interval
    ci_upsnr: Optional[Interval]
    # resamples with uMSE_k <= 0, left out of the uPSNR quantiles
    excluded: int
    resample_umse: np.ndarray


def resample_means(values: np.ndarray, resamples_k: int, seed: int) -> np.ndarray:
    """Means of ``resamples_k`` with-replacement resamples of ``values``."""
    values = np.ascontiguousarray(values, dtype=np.float64).ravel()
    n = values.size
    out = np.empty(resamples_k)
    for k in range(resamples_k):
        idx = generator(seed, "bootstrap", k).integers(0, n, size=n)
        out[k] = np.add.reduce(values[idx]) / n
    return out


def interval_from_resamples(
    resample_umse: np.ndarray, peak: float, alpha: float
) -> tuple[Interval, Optional[Interval], int]:
    q = (alpha / 2, 1 - alpha / 2)
    lo, hi = np.quantile(resample_umse, q)
    ci_umse = Interval(float(lo), float(hi))
    positive = resample_umse[resample_umse > 0]
    excluded = resample_umse.size - positive.size
    ci_upsnr = None
    if positive.size > 0 and excluded <= resample_umse.size / 2:
        db = 10.0 * np.log10(peak * peak / positive)
        lo, hi = np.quantile(db, q)
        ci_upsnr = Interval(float(lo), float(hi))
    return ci_umse, ci_upsnr, excluded


def bootstrap_ci(use_values, peak: float, config: BootstrapConfig = BootstrapConfig()) -> BootstrapResult:
    """Confidence intervals from per-pixel uSE terms.

    The uPSNR interval is computed from the resamples with positive uMSE
    and is omitted when more than half of them are non-positive.
    """
    values = np.asarray(use_values, dtype=np.float64).ravel()
    if values.size == 0:
        raise ValueError("bootstrap needs at least one value")
    if not peak > 0:
        raise ValueError(f"peak must be positive, got {peak}")
    means = resample_means(values, config.resamples_k, config.seed)
    ci_umse, ci_upsnr, excluded = interval_from_resamples(means, peak, config.alpha)
    return BootstrapResult(ci_umse, ci_upsnr, excluded, means)
