"""Noise simulation, builtin clean patterns and baseline denoisers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.ndimage import convolve1d

from .grid import ImageGrid, ReferenceSet, as_array
from .rng import generator


@dataclass(frozen=True)
class NoiseModel:
    """Pixel-wise independent noise: ``kind`` is "gaussian" or "poisson"."""

    kind: str
    sigma: Optional[float] = None

    def __post_init__(self):
        if self.kind == "gaussian":
            if self.sigma is None or not self.sigma > 0:
                raise ValueError("Gaussian noise needs sigma > 0")
        elif self.kind == "poisson":
            if self.sigma is not None:
                raise ValueError("Poisson noise takes no sigma")
        else:
            raise ValueError(f"unknown noise kind {self.kind!r}")

    @classmethod
    def gaussian(cls, sigma: float) -> "NoiseModel":
        return cls("gaussian", float(sigma))

    @classmethod
    def poisson(cls) -> "NoiseModel":
        return cls("poisson")

    @classmethod
    def parse(cls, text: str) -> "NoiseModel":
        """Parse ``gaussian:SIGMA`` or ``poisson``."""
        name, _, arg = text.strip().partition(":")
        name = name.lower()
        if name == "gaussian":
            if not arg:
                raise ValueError("gaussian noise needs a sigma, e.g. gaussian:55")
            return cls.gaussian(float(arg))
        if name == "poisson" and not arg:
            return cls.poisson()
        raise ValueError(f"cannot parse noise model {text!r}")

    def __str__(self):
        return f"gaussian:{self.sigma:g}" if self.kind == "gaussian" else "poisson"

    def variance(self, clean: np.ndarray) -> np.ndarray:
        """Per-pixel noise variance for the given clean intensities."""
        if self.kind == "gaussian":
            return np.full(clean.shape, self.sigma**2)
        return np.array(clean, dtype=np.float64)

    def check(self, clean: np.ndarray) -> None:
        if self.kind == "poisson" and np.any(clean < 0):
            raise ValueError("Poisson noise needs non-negative clean intensities")

    def sample(self, clean: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        # no clipping: clipped noise is no longer zero-mean
        if self.kind == "gaussian":
            return clean + self.sigma * rng.standard_normal(clean.shape)
        return rng.poisson(clean).astype(np.float64)


def add_noise(clean, model: NoiseModel, seed: int) -> ImageGrid:
    x = as_array(clean)
    model.check(x)
    return ImageGrid(model.sample(x, generator(seed, "noise")))


def make_reference_set(clean, model: NoiseModel, seed: int) -> ReferenceSet:
    """Four independent noisy copies of ``clean`` (input y and references a, b, c)."""
    x = as_array(clean)
    model.check(x)
    grids = [ImageGrid(model.sample(x, generator(seed, "refs", role))) for role in ("y", "a", "b", "c")]
    return ReferenceSet(*grids)


def gaussian_kernel(sigma: float) -> np.ndarray:
    radius = math.ceil(3 * sigma)
    t = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-0.5 * (t / sigma) ** 2)
    return k / k.sum()


def _separable(arr: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    out = convolve1d(arr, kernel, axis=0, mode="nearest")
    return convolve1d(out, kernel, axis=1, mode="nearest")


def gaussian_smooth(image, filter_sigma: float) -> ImageGrid:
    """Gaussian blur truncated at ``ceil(3 sigma)`` with edge replication."""
    if not filter_sigma > 0:
        raise ValueError("filter_sigma must be positive")
    return ImageGrid(_separable(as_array(image), gaussian_kernel(filter_sigma)))


def box_filter(image, radius: int) -> ImageGrid:
    """Mean over the (2r+1)^2 neighborhood with edge replication."""
    if int(radius) != radius or radius < 1:
        raise ValueError("radius must be a positive integer")
    size = 2 * int(radius) + 1
    return ImageGrid(_separable(as_array(image), np.full(size, 1.0 / size)))


def identity_denoiser(image) -> ImageGrid:
    return image if isinstance(image, ImageGrid) else ImageGrid(image)


# --- builtin clean patterns -------------------------------------------------

PATTERNS = ("constant", "gradient", "checkerboard", "texture")


def constant_image(size: int, value: float = 128.0) -> ImageGrid:
    return ImageGrid(np.full((size, size), float(value)))


def gradient_image(size: int, high: float = 255.0) -> ImageGrid:
    """Linear ramp from 0 at the top-left to ``high`` at the bottom-right."""
    r = np.arange(size)
    ramp = (r[:, None] + r[None, :]) / max(2 * (size - 1), 1)
    return ImageGrid(high * ramp)


def checkerboard_image(size: int, amplitude: float = 255.0) -> ImageGrid:
    """Pixel-level checkerboard: 0 where row+col is even, ``amplitude`` elsewhere."""
    r = np.arange(size)
    return ImageGrid(amplitude * ((r[:, None] + r[None, :]) % 2))


def texture_image(size: int, correlation: float = 1.0, seed: int = 0, high: float = 255.0) -> ImageGrid:
    """Band-limited random field rescaled to [0, high].

    White noise smoothed by a Gaussian of width ``correlation`` pixels; small
    widths give rough texture, large widths give smooth blobs.
    """
    white = generator(seed, "texture").standard_normal((size, size))
    field = as_array(gaussian_smooth(white, correlation)) if correlation > 0 else white
    lo, hi = field.min(), field.max()
    return ImageGrid(high * (field - lo) / (hi - lo))


def make_pattern(spec: str, seed: int = 0) -> ImageGrid:
    """Build a pattern from ``name:size[:param]``, e.g. ``texture:128:1.5``."""
    parts = spec.strip().split(":")
    name = parts[0].lower()
    if name not in PATTERNS:
        raise ValueError(f"unknown pattern {name!r}; choose from {', '.join(PATTERNS)}")
    if len(parts) < 2 or len(parts) > 3:
        raise ValueError(f"pattern spec must look like {name}:SIZE[:PARAM], got {spec!r}")
    size = int(parts[1])
    if size < 1:
        raise ValueError("pattern size must be positive")
    param = float(parts[2]) if len(parts) == 3 else None
    if name == "constant":
        return constant_image(size, 128.0 if param is None else param)
    if name == "gradient":
        return gradient_image(size, 255.0 if param is None else param)
    if name == "checkerboard":
        return checkerboard_image(size, 255.0 if param is None else param)
    return texture_image(size, 1.0 if param is None else param, seed=seed)


def parse_denoiser(text: str):
    """Return a callable for ``identity``, ``gaussian:SIGMA`` or ``box:R``."""
    name, _, arg = text.strip().partition(":")
    name = name.lower()
    if name == "identity" and not arg:
        return identity_denoiser
    if name == "gaussian" and arg:
        sigma = float(arg)
        if not sigma > 0:
            raise ValueError("gaussian denoiser needs sigma > 0")
        return lambda img: gaussian_smooth(img, sigma)
    if name == "box" and arg:
        radius = int(arg)
        if radius < 1:
            raise ValueError("box denoiser needs radius >= 1")
        return lambda img: box_filter(img, radius)
    raise ValueError(f"cannot parse denoiser {text!r}")
