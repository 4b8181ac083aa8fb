"""Ray-driven fan-beam forward projection (Joseph's method)."""

from __future__ import annotations

import numpy as np

from ..grid import as_image
from .geometry import FanBeamGeometry, pixel_centers

_ANGLE_CHUNK = 32


def _interp_along(lines: np.ndarray, frac: np.ndarray, line_idx: np.ndarray) -> np.ndarray:
    """Linear interpolation inside each of ``lines`` (zero outside).

    ``lines[k]`` is a padded 1D profile (one zero sample on each end);
    ``frac`` holds unpadded fractional positions, shape (m, n), and
    ``line_idx`` selects the profile for each column of ``frac``.
    """
    n = lines.shape[1] - 2
    lo = np.floor(frac)
    w = frac - lo
    lo = lo.astype(np.intp)
    inside = (lo >= -1) & (lo <= n - 1)
    lo = np.clip(lo, -1, n - 1) + 1
    vals = lines[line_idx, lo] * (1.0 - w) + lines[line_idx, lo + 1] * w
    return np.where(inside, vals, 0.0)


def line_integrals(image, sources: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """Joseph line integrals of a square image along rays.

    Each ray is sampled once per pixel column (or row, whichever axis the
    ray is more aligned with), interpolating linearly across the other axis.
    ``sources`` and ``directions`` have shape (m, 2); directions need not be
    normalised. Lengths are in image half-widths.
    """
    img = as_image(image)
    n = img.shape[0]
    if img.shape[1] != n:
        raise ValueError(f"projector needs a square image, got {img.shape}")
    sources = np.asarray(sources, dtype=np.float64).reshape(-1, 2)
    directions = np.asarray(directions, dtype=np.float64).reshape(-1, 2)
    directions = directions / np.linalg.norm(directions, axis=1, keepdims=True)
    h = 2.0 / n
    centers = pixel_centers(n)
    out = np.zeros(len(sources))

    sx, sy = sources[:, 0:1], sources[:, 1:2]
    dx, dy = directions[:, 0:1], directions[:, 1:2]
    along_x = (np.abs(dx) >= np.abs(dy))[:, 0]

    if along_x.any():
        # step over columns; interpolate down each column (row index grows as y falls)
        cols = np.pad(img.T, ((0, 0), (1, 1)))
        m = along_x
        t = (centers[None, :] - sx[m]) / dx[m]
        y = sy[m] + t * dy[m]
        frac = (1.0 - y) / h - 0.5
        vals = _interp_along(cols, frac, np.arange(n)[None, :])
        out[m] = vals.sum(axis=1) * h / np.abs(dx[m, 0])
    if (~along_x).any():
        rows = np.pad(img, ((0, 0), (1, 1)))
        m = ~along_x
        y_rows = 1.0 - (np.arange(n) + 0.5) * h
        t = (y_rows[None, :] - sy[m]) / dy[m]
        x = sx[m] + t * dx[m]
        frac = (x + 1.0) / h - 0.5
        vals = _interp_along(rows, frac, np.arange(n)[None, :])
        out[m] = vals.sum(axis=1) * h / np.abs(dy[m, 0])
    return out


def forward_project_fan(image, geom: FanBeamGeometry) -> np.ndarray:
    """Sinogram of shape (n_bins, n_angles), scaled by ``geom.value_scale``."""
    img = as_image(image)
    sino = np.empty(geom.shape)
    for start in range(0, geom.n_angles, _ANGLE_CHUNK):
        idx = range(start, min(start + _ANGLE_CHUNK, geom.n_angles))
        srcs, dirs = [], []
        for a in idx:
            src, d = geom.rays(a)
            srcs.append(np.broadcast_to(src, d.shape))
            dirs.append(d)
        vals = line_integrals(img, np.concatenate(srcs), np.concatenate(dirs))
        sino[:, idx.start : idx.stop] = vals.reshape(len(idx), geom.n_bins).T
    return sino * geom.value_scale
