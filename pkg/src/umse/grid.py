"""Image containers shared by every module."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ShapeError(ValueError):
    """Raised when grids that must agree in size do not."""


class ImageGrid:
    """A 2D raster of finite float64 values.

    The array is stored row-major with shape ``(height, width)`` and is
    marked read-only so a grid can be shared freely. One-dimensional input
    is treated as a single row.
    """

    __slots__ = ("_data",)

    def __init__(self, data):
        arr = np.array(data, dtype=np.float64, copy=True)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise ValueError(f"ImageGrid needs 1D or 2D data, got {arr.ndim}D")
        if arr.size == 0:
            raise ValueError("ImageGrid cannot be empty")
        if not np.all(np.isfinite(arr)):
            raise ValueError("ImageGrid values must be finite")
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        self._data = arr

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def width(self) -> int:
        return self._data.shape[1]

    @property
    def height(self) -> int:
        return self._data.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    @property
    def size(self) -> int:
        return self._data.size

    def ravel(self) -> np.ndarray:
        return self._data.ravel()

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._data
        return self._data.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, ImageGrid):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    def __repr__(self):
        return f"ImageGrid(width={self.width}, height={self.height})"


def as_array(image) -> np.ndarray:
    """Return the float64 2D array behind ``image`` (grid or array-like)."""
    if isinstance(image, ImageGrid):
        return image.data
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return arr


def check_same_shape(*arrays: np.ndarray) -> None:
    first = arrays[0].shape
    for arr in arrays[1:]:
        if arr.shape != first:
            raise ShapeError(f"shape mismatch: {first} vs {arr.shape}")


@dataclass(frozen=True)
class ReferenceSet:
    """Noisy input plus three noisy references of the same clean signal."""

    input_y: ImageGrid
    ref_a: ImageGrid
    ref_b: ImageGrid
    ref_c: ImageGrid

    def __post_init__(self):
        check_same_shape(*(as_array(g) for g in (self.input_y, self.ref_a, self.ref_b, self.ref_c)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.ref_a.shape
