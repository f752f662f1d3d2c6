"""Unsupervised MSE and PSNR for evaluating denoisers from noisy data alone."""

from .bootstrap import BootstrapConfig, BootstrapResult, Interval, bootstrap_ci
from .core import (
    MetricKind,
    MetricReport,
    UndefinedMetricError,
    dataset_umse,
    mse,
    mse_avg,
    noise_variance_estimate,
    psnr,
    se_per_pixel,
    umse,
    upsnr,
    use_per_pixel,
)
from .grid import ImageGrid, ReferenceSet, ShapeError
from .subsample import SubsampleMode, SubsampleOutput, crop_to_even, spatial_subsample
from .synth import NoiseModel, add_noise, box_filter, gaussian_smooth, identity_denoiser, make_reference_set

__version__ = "0.1.0"
