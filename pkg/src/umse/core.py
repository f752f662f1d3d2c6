"""Supervised and unsupervised error metrics.

All n-term means use numpy's pairwise summation over a contiguous float64
vector, so ``umse(refs, f)`` is computed as the mean of ``use_per_pixel``
and the two agree bit for bit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .grid import ImageGrid, ReferenceSet, ShapeError, as_array, check_same_shape


class UndefinedMetricError(ValueError):
    """PSNR of a non-positive MSE estimate has no finite value."""


class MetricKind(str, enum.Enum):
    MSE = "MSE"
    UMSE = "uMSE"
    PSNR = "PSNR"
    UPSNR = "uPSNR"
    MSE_AVG = "MSE_avg"


@dataclass(frozen=True)
class MetricReport:
    metric_kind: MetricKind
    value: Optional[float]
    n: int
    peak: Optional[float] = None
    valid: bool = True
    ci_low: Optional[float] = None
    ci_high: Optional[float] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.valid and self.value is None:
            raise ValueError("a valid report needs a value")
        if (self.ci_low is None) != (self.ci_high is None):
            raise ValueError("ci_low and ci_high must be given together")
        if self.ci_low is not None and self.ci_low > self.ci_high:
            raise ValueError("ci_low must not exceed ci_high")


def mean(values: np.ndarray) -> float:
    """Pairwise-summed mean of all entries, accumulated in float64."""
    flat = np.ascontiguousarray(values, dtype=np.float64).ravel()
    if flat.size == 0:
        raise ValueError("mean of empty vector")
    return float(np.add.reduce(flat) / flat.size)


def _pair(first, second) -> tuple[np.ndarray, np.ndarray]:
    x, y = as_array(first), as_array(second)
    check_same_shape(x, y)
    return x, y


def se_per_pixel(clean, denoised) -> np.ndarray:
    """Squared error of every pixel, flattened row-major."""
    x, f = _pair(clean, denoised)
    return ((x - f) ** 2).ravel()


def mse(clean, denoised) -> float:
    return mean(se_per_pixel(clean, denoised))


def use_values(a: np.ndarray, b: np.ndarray, c: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Per-pixel unsupervised squared error on raw arrays (no shape checks)."""
    d = b - c
    return ((a - f) ** 2 - 0.5 * d * d).ravel()


def _refs_arrays(refs: ReferenceSet, denoised):
    a, b, c = as_array(refs.ref_a), as_array(refs.ref_b), as_array(refs.ref_c)
    f = as_array(denoised)
    check_same_shape(a, b, c, f)
    return a, b, c, f


def use_per_pixel(refs: ReferenceSet, denoised) -> np.ndarray:
    """Per-pixel terms whose mean is the uMSE; entries may be negative.

    This vector is the resampling unit of the bootstrap.
    """
    return use_values(*_refs_arrays(refs, denoised))


def umse(refs: ReferenceSet, denoised) -> float:
    """Unsupervised MSE of ``denoised`` against references a, b, c.

    Unbiased for the true MSE when the references are independent noisy
    copies of the clean signal. Can be negative for a very good denoiser.
    """
    return mean(use_per_pixel(refs, denoised))


def noise_variance_estimate(ref_b, ref_c) -> float:
    b, c = _pair(ref_b, ref_c)
    d = b - c
    return mean(0.5 * d * d)


def psnr(mse_value: float, peak: float) -> float:
    """``10 log10(peak^2 / mse_value)`` in dB."""
    if not peak > 0:
        raise ValueError(f"peak must be positive, got {peak}")
    if not mse_value > 0:
        raise UndefinedMetricError(f"PSNR undefined for MSE estimate {mse_value!r} <= 0")
    return 10.0 * math.log10(peak * peak / mse_value)


def psnr_report(kind: MetricKind, mse_value: float, n: int, peak: float) -> MetricReport:
    try:
        value = psnr(mse_value, peak)
    except UndefinedMetricError:
        return MetricReport(kind, None, n, peak=peak, valid=False)
    return MetricReport(kind, value, n, peak=peak)


def upsnr(refs: ReferenceSet, denoised, peak: float) -> MetricReport:
    """Unsupervised PSNR. ``valid`` is False when the uMSE is not positive."""
    if not peak > 0:
        raise ValueError(f"peak must be positive, got {peak}")
    values = use_per_pixel(refs, denoised)
    return psnr_report(MetricKind.UPSNR, mean(values), values.size, peak)


def mse_avg(references: Sequence, denoised) -> float:
    """MSE against the pixel-wise average of ``m`` noisy references."""
    if len(references) == 0:
        raise ValueError("mse_avg needs at least one reference")
    f = as_array(denoised)
    total = np.zeros_like(f)
    for ref in references:
        r = as_array(ref)
        check_same_shape(r, f)
        total = total + r
    return mse(total / len(references), f)


def dataset_umse(
    ref_sets: Sequence[ReferenceSet],
    denoised: Sequence,
    peak: float,
) -> tuple[list[tuple[MetricReport, MetricReport]], tuple[MetricReport, MetricReport]]:
    """Per-image and pooled (uMSE, uPSNR) reports for a set of images.

    The pooled estimate concatenates every image's pixels into one sample,
    which is the setting in which the estimator's consistency holds.
    """
    if len(ref_sets) != len(denoised):
        raise ShapeError(f"{len(ref_sets)} reference sets for {len(denoised)} denoised images")
    if not ref_sets:
        raise ValueError("empty dataset")
    per_image = []
    chunks = []
    for refs, f in zip(ref_sets, denoised):
        values = use_per_pixel(refs, f)
        chunks.append(values)
        per_image.append(_umse_pair(values, peak))
    pooled = _umse_pair(np.concatenate(chunks), peak)
    return per_image, pooled


def _umse_pair(values: np.ndarray, peak: float) -> tuple[MetricReport, MetricReport]:
    value = mean(values)
    return (
        MetricReport(MetricKind.UMSE, value, values.size),
        psnr_report(MetricKind.UPSNR, value, values.size, peak),
    )


def mean_psnr_db(reports: Sequence[MetricReport]) -> Optional[float]:
    """Average of per-image dB values; None if any image is invalid."""
    if not reports or any(not r.valid for r in reports):
        return None
    return float(np.mean([r.value for r in reports]))


__all__ = [
    "ImageGrid",
    "MetricKind",
    "MetricReport",
    "ReferenceSet",
    "UndefinedMetricError",
    "dataset_umse",
    "mean",
    "mean_psnr_db",
    "mse",
    "mse_avg",
    "noise_variance_estimate",
    "psnr",
    "psnr_report",
    "se_per_pixel",
    "umse",
    "upsnr",
    "use_per_pixel",
    "use_values",
]
