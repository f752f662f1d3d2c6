"""Split one noisy image into four half-resolution noisy copies.

Each 2x2 block of the input contributes one pixel to each of the sub-images
Y, A, B, C. Block positions are numbered 1..4 as

    1 = (row 0, col 0)    3 = (row 0, col 1)
    2 = (row 1, col 0)    4 = (row 1, col 1)

and the deterministic mode sends position k to the k-th sub-image
(1 -> Y, 2 -> A, 3 -> B, 4 -> C).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .grid import ImageGrid, ReferenceSet, as_array
from .rng import generator

# (row offset, col offset) of block positions 1..4
BLOCK_OFFSETS = ((0, 0), (1, 0), (0, 1), (1, 1))
ROLES = ("y", "a", "b", "c")


class SubsampleMode(str, enum.Enum):
    DETERMINISTIC = "det"
    RANDOMIZED = "rand"


@dataclass(frozen=True)
class SubsampleOutput:
    sub_y: ImageGrid
    sub_a: ImageGrid
    sub_b: ImageGrid
    sub_c: ImageGrid
    # assignment[i, j, k] is the block position (1..4) that fed sub-image k
    # (0=Y, 1=A, 2=B, 3=C) at block (i, j).
    assignment: np.ndarray

    def reference_set(self) -> ReferenceSet:
        return ReferenceSet(self.sub_y, self.sub_a, self.sub_b, self.sub_c)

    def subimages(self) -> tuple[ImageGrid, ImageGrid, ImageGrid, ImageGrid]:
        return self.sub_y, self.sub_a, self.sub_b, self.sub_c


def crop_to_even(image) -> ImageGrid:
    arr = as_array(image)
    h, w = arr.shape
    if h < 2 or w < 2:
        raise ValueError(f"image must be at least 2x2, got {w}x{h}")
    return ImageGrid(arr[: h - h % 2, : w - w % 2])


def block_stack(arr: np.ndarray) -> np.ndarray:
    """View an even-sized image as (N_rows, N_cols, 4) block entries in position order."""
    return np.stack([arr[dr::2, dc::2] for dr, dc in BLOCK_OFFSETS], axis=-1)


def deterministic_assignment(rows: int, cols: int) -> np.ndarray:
    return np.broadcast_to(np.arange(1, 5, dtype=np.int8), (rows, cols, 4)).copy()


def random_assignment(rows: int, cols: int, seed: int) -> np.ndarray:
    """One independent uniform permutation of {1,2,3,4} per block."""
    rng = generator(seed, "subsample")
    keys = rng.random((rows, cols, 4))
    return (np.argsort(keys, axis=-1) + 1).astype(np.int8)


def apply_assignment(arr: np.ndarray, assignment: np.ndarray) -> np.ndarray:
    """Gather block entries into four sub-images, shape (4, N_rows, N_cols)."""
    blocks = block_stack(arr)
    picked = np.take_along_axis(blocks, assignment.astype(np.intp) - 1, axis=-1)
    return np.moveaxis(picked, -1, 0)


def spatial_subsample(image, mode=SubsampleMode.DETERMINISTIC, seed: int = 0) -> SubsampleOutput:
    """Decompose a 2N x 2N image into sub-images Y, A, B, C of size N x N.

    Odd dimensions are rejected; call :func:`crop_to_even` first. In
    randomized mode the output is a deterministic function of ``seed``;
    deterministic mode ignores it.
    """
    arr = as_array(image)
    mode = SubsampleMode(mode)
    if arr.size == 0:
        raise ValueError("empty image")
    h, w = arr.shape
    if h % 2 or w % 2:
        raise ValueError(f"image dimensions must be even, got {w}x{h}; crop first")
    rows, cols = h // 2, w // 2
    if mode is SubsampleMode.DETERMINISTIC:
        assignment = deterministic_assignment(rows, cols)
    else:
        assignment = random_assignment(rows, cols, seed)
    subs = apply_assignment(arr, assignment)
    assignment.flags.writeable = False
    return SubsampleOutput(*(ImageGrid(s) for s in subs), assignment=assignment)
