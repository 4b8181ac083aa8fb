"""Equiangular fan-beam filtered backprojection.

Reconstruction follows the classic three steps: weight each bin by
``D cos(gamma)``, convolve each view with the fan-beam ramp kernel
``0.5 * (gamma / sin gamma)**2 * h(gamma)``, and backproject with a
``1 / L**2`` weight, ``L`` being the source-to-pixel distance.
"""

from __future__ import annotations

import numpy as np
import scipy.fft
from scipy.signal import fftconvolve

from ..grid import as_image
from .geometry import FanBeamGeometry, ReconFilter, pixel_centers


def bandlimited_ramp(x: np.ndarray, bandwidth: float) -> np.ndarray:
    """Impulse response of ``|w|`` restricted to ``|w| <= bandwidth``."""
    w = bandwidth
    return w * w * (2.0 * np.sinc(2.0 * w * x) - np.sinc(w * x) ** 2)


def ramp_kernel(spacing: float, n: int, filt: ReconFilter) -> np.ndarray:
    """Samples of the (apodized) ramp at offsets ``k * spacing``, ``|k| < n``.

    The Hann taper ``0.5 + 0.5 cos(pi w / W)`` in frequency is a three-tap
    combination of shifted ramps in space, so the kernel stays exact for
    any cutoff.
    """
    x = np.arange(-(n - 1), n) * spacing
    bw = filt.cutoff / (2.0 * spacing)
    h = bandlimited_ramp(x, bw)
    if filt.kind == "hanning":
        s = 1.0 / (2.0 * bw)
        h = 0.5 * h + 0.25 * bandlimited_ramp(x - s, bw) + 0.25 * bandlimited_ramp(x + s, bw)
    return h


def fan_kernel(geom: FanBeamGeometry, filt: ReconFilter) -> np.ndarray:
    alpha = geom.bin_spacing
    g = np.arange(-(geom.n_bins - 1), geom.n_bins) * alpha
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(g == 0.0, 1.0, g / np.sin(g))
    return 0.5 * ratio**2 * ramp_kernel(alpha, geom.n_bins, filt)


def filter_sinogram(sino, geom: FanBeamGeometry, filt: ReconFilter, workers: int = 1) -> np.ndarray:
    """Cosine-weight and ramp-filter every view (column) of a sinogram."""
    s = as_image(sino, "sinogram")
    if s.shape != geom.shape:
        raise ValueError(f"sinogram shape {s.shape} does not match geometry {geom.shape}")
    weighted = s * (geom.source_to_center * np.cos(geom.gammas))[:, None]
    kernel = fan_kernel(geom, filt)[:, None]
    with scipy.fft.set_workers(workers):
        full = fftconvolve(weighted, kernel, mode="full", axes=0)
    n = geom.n_bins
    return full[n - 1 : 2 * n - 1] * geom.bin_spacing


def backproject(filtered: np.ndarray, geom: FanBeamGeometry, n_out: int) -> np.ndarray:
    c = pixel_centers(n_out)
    x = np.broadcast_to(c[None, :], (n_out, n_out)).ravel()
    y = np.broadcast_to(c[::-1, None], (n_out, n_out)).ravel()
    gammas = geom.gammas
    acc = np.zeros(n_out * n_out)
    for k, beta in enumerate(geom.angles):
        cb, sb = np.cos(beta), np.sin(beta)
        vx = x - geom.source_to_center * cb
        vy = y - geom.source_to_center * sb
        # central ray points along (-cb, -sb)
        along = -(vx * cb + vy * sb)
        across = -cb * vy + sb * vx
        gamma = np.arctan2(across, along)
        acc += np.interp(gamma, gammas, filtered[:, k], left=0.0, right=0.0) / (vx * vx + vy * vy)
    acc *= 2.0 * np.pi / geom.n_angles
    return acc.reshape(n_out, n_out)


def fbp_fan(sino, geom: FanBeamGeometry, filt: ReconFilter = ReconFilter(), n_out: int = 256,
            workers: int = 1) -> np.ndarray:
    if n_out < 1:
        raise ValueError(f"output size must be positive, got {n_out}")
    filtered = filter_sinogram(sino, geom, filt, workers=workers)
    return backproject(filtered, geom, n_out) / geom.value_scale
