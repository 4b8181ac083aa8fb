"""2D raster container helpers and file I/O.

Images and sinograms are plain ``numpy.ndarray`` objects of dtype float64 and
shape ``(rows, cols)``. Sinograms are laid out as (detector bin, angle).
Computation is done in float64; files store float32.

SGF1 layout (little-endian)::

    bytes 0-3    b"SGF1"
    bytes 4-7    rows (uint32)
    bytes 8-11   cols (uint32)
    bytes 12-15  reserved, zero
    payload      rows*cols float32, row-major
"""

from __future__ import annotations

import os
import struct

import numpy as np

MAGIC = b"SGF1"
HEADER = struct.Struct("<4sIII")
# Largest payload accepted by load_raw/save_raw (elements).
MAX_ELEMENTS = 2**31 - 1


class RawFormatError(ValueError):
    """Malformed SGF1 file."""


class BadMagicError(RawFormatError):
    pass


class TruncatedPayloadError(RawFormatError):
    pass


class DimensionOverflowError(RawFormatError):
    pass


def as_image(values, name: str = "image") -> np.ndarray:
    """Validate and return ``values`` as a finite 2D float64 array."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2D grid, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def new_filled(rows: int, cols: int, value: float) -> np.ndarray:
    if rows < 1 or cols < 1:
        raise ValueError(f"grid dimensions must be positive, got {rows}x{cols}")
    return np.full((rows, cols), float(value), dtype=np.float64)


def save_raw(path, image) -> None:
    img = as_image(image)
    rows, cols = img.shape
    if rows * cols > MAX_ELEMENTS:
        raise DimensionOverflowError(f"{rows}x{cols} exceeds {MAX_ELEMENTS} elements")
    payload = img.astype("<f4")
    if not np.all(np.isfinite(payload)):
        raise ValueError("image values overflow float32")
    with open(path, "wb") as fh:
        fh.write(HEADER.pack(MAGIC, rows, cols, 0))
        fh.write(payload.tobytes(order="C"))


def load_raw(path) -> np.ndarray:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < HEADER.size:
        raise TruncatedPayloadError(f"{os.fspath(path)}: file shorter than the 16-byte header")
    magic, rows, cols, _reserved = HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise BadMagicError(f"{os.fspath(path)}: bad magic {magic!r}, expected {MAGIC!r}")
    if rows == 0 or cols == 0 or rows * cols > MAX_ELEMENTS:
        raise DimensionOverflowError(f"{os.fspath(path)}: invalid dimensions {rows}x{cols}")
    expected = rows * cols * 4
    got = len(blob) - HEADER.size
    if got < expected:
        raise TruncatedPayloadError(
            f"{os.fspath(path)}: header claims {rows}x{cols} ({expected} bytes), payload has {got}"
        )
    if got > expected:
        raise RawFormatError(f"{os.fspath(path)}: {got - expected} trailing bytes after payload")
    data = np.frombuffer(blob, dtype="<f4", count=rows * cols, offset=HEADER.size)
    return data.reshape(rows, cols).astype(np.float64)


def to_gray8(image, window_min: float, window_max: float) -> np.ndarray:
    """Map ``[window_min, window_max]`` linearly onto 0..255, round half up, clamp."""
    if not window_max > window_min:
        raise ValueError(f"degenerate window [{window_min}, {window_max}]")
    img = as_image(image)
    scaled = (img - window_min) / (window_max - window_min) * 255.0
    return np.clip(np.floor(scaled + 0.5), 0, 255).astype(np.uint8)


def save_pgm(path, image, window_min: float, window_max: float) -> None:
    pixels = to_gray8(image, window_min, window_max)
    rows, cols = pixels.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{cols} {rows}\n255\n".encode("ascii"))
        fh.write(pixels.tobytes(order="C"))
