"""Raster file formats: binary PGM (8/16-bit) and the UMF1 float32 raster.

UMF1 layout (all little-endian)::

    b"UMF1" | width: uint32 | height: uint32 | width*height float32, row-major
"""

from __future__ import annotations

import enum
import os
import struct

import numpy as np

from .grid import ImageGrid, as_array

F32_MAGIC = b"UMF1"
_F32_HEADER = struct.Struct("<4sII")


class RasterFormat(str, enum.Enum):
    PGM8 = "pgm8"
    PGM16 = "pgm16"
    F32 = "f32"


class FormatError(ValueError):
    """Malformed, truncated or unsupported raster file."""


def format_for_path(path) -> RasterFormat:
    """Default output format from the extension: .pgm -> PGM8, anything else -> F32."""
    return RasterFormat.PGM8 if str(path).lower().endswith(".pgm") else RasterFormat.F32


def read_image(path) -> ImageGrid:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] == F32_MAGIC:
        return _decode_f32(data, path)
    if data[:2] == b"P5":
        return _decode_pgm(data, path)
    raise FormatError(f"{path}: unrecognised magic bytes {data[:4]!r}")


def write_image(grid, path, fmt=None) -> None:
    arr = as_array(grid)
    fmt = format_for_path(path) if fmt is None else RasterFormat(fmt)
    if not np.all(np.isfinite(arr)):
        raise FormatError("refusing to write non-finite values")
    payload = encode_image(arr, fmt)
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(payload)
    os.replace(tmp, path)


def encode_image(arr: np.ndarray, fmt: RasterFormat) -> bytes:
    h, w = arr.shape
    if fmt is RasterFormat.F32:
        if np.any(np.abs(arr) > np.finfo(np.float32).max):
            raise FormatError("values overflow float32")
        return _F32_HEADER.pack(F32_MAGIC, w, h) + arr.astype("<f4").tobytes()
    maxval = 255 if fmt is RasterFormat.PGM8 else 65535
    if np.any(arr != np.round(arr)):
        raise FormatError("PGM holds integers only; write non-integer data as f32")
    if arr.min() < 0 or arr.max() > maxval:
        raise FormatError(f"values outside 0..{maxval} for {fmt.value}")
    dtype = np.uint8 if maxval == 255 else ">u2"
    header = f"P5\n{w} {h}\n{maxval}\n".encode("ascii")
    return header + arr.astype(dtype).tobytes()


def _decode_f32(data: bytes, path) -> ImageGrid:
    if len(data) < _F32_HEADER.size:
        raise FormatError(f"{path}: truncated UMF1 header")
    _, w, h = _F32_HEADER.unpack_from(data)
    if w == 0 or h == 0:
        raise FormatError(f"{path}: empty raster {w}x{h}")
    expected = _F32_HEADER.size + 4 * w * h
    if len(data) != expected:
        raise FormatError(f"{path}: expected {expected} bytes for {w}x{h}, got {len(data)}")
    values = np.frombuffer(data, dtype="<f4", offset=_F32_HEADER.size).reshape(h, w)
    if not np.all(np.isfinite(values)):
        raise FormatError(f"{path}: non-finite values in payload")
    return ImageGrid(values.astype(np.float64))


def _pgm_tokens(data: bytes, count: int):
    """Read ``count`` whitespace-separated header tokens after the magic, skipping comments."""
    pos = 2
    tokens = []
    while len(tokens) < count:
        if pos >= len(data):
            raise FormatError("truncated PGM header")
        ch = data[pos : pos + 1]
        if ch == b"#":
            end = data.find(b"\n", pos)
            pos = len(data) if end < 0 else end + 1
        elif ch.isspace():
            pos += 1
        else:
            start = pos
            while pos < len(data) and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
                pos += 1
            tokens.append(data[start:pos])
    # exactly one whitespace byte separates the header from the raster
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise FormatError("malformed PGM header")
    return tokens, pos + 1


def _decode_pgm(data: bytes, path) -> ImageGrid:
    try:
        tokens, start = _pgm_tokens(data, 3)
        w, h, maxval = (int(t) for t in tokens)
    except (FormatError, ValueError) as exc:
        raise FormatError(f"{path}: bad PGM header ({exc})") from None
    if w <= 0 or h <= 0:
        raise FormatError(f"{path}: empty raster {w}x{h}")
    if maxval == 255:
        dtype, width_bytes = np.uint8, 1
    elif maxval == 65535:
        dtype, width_bytes = np.dtype(">u2"), 2
    else:
        raise FormatError(f"{path}: unsupported maxval {maxval} (need 255 or 65535)")
    expected = w * h * width_bytes
    if len(data) - start < expected:
        raise FormatError(f"{path}: truncated PGM payload")
    values = np.frombuffer(data, dtype=dtype, count=w * h, offset=start).reshape(h, w)
    return ImageGrid(values.astype(np.float64))
