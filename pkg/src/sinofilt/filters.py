"""Sinogram denoisers: 3x3 median, pointwise LLMMSE and blockwise LLMMSE.

The LLMMSE estimate at a pixel is ``a*q + b`` with gain
``a = (v_q - sigma2) / v_q`` and offset ``b = (1 - a) * mean_q``, where
``mean_q`` and ``v_q`` are the local box mean and variance of the noisy data.
The blockwise variant averages ``a`` and ``b`` over every window that covers
the pixel, which reduces to one more box mean of each map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boxstats import box_mean, local_stats
from .grid import as_image


@dataclass(frozen=True)
class FilterConfig:
    r: int = 1
    variance_floor: float = 1e-12
    clamp_coefficients: bool = True

    def __post_init__(self):
        if int(self.r) != self.r or self.r < 0:
            raise ValueError(f"r must be a non-negative integer, got {self.r}")
        if not self.variance_floor > 0:
            raise ValueError(f"variance_floor must be positive, got {self.variance_floor}")


@dataclass(frozen=True)
class CoefficientMaps:
    a: np.ndarray
    b: np.ndarray


def _pair(q, sigma2):
    q = as_image(q, "q")
    sigma2 = as_image(sigma2, "sigma2")
    if q.shape != sigma2.shape:
        raise ValueError(f"shape mismatch: q {q.shape} vs sigma2 {sigma2.shape}")
    return q, sigma2


def median3x3(q) -> np.ndarray:
    """Median over the clipped 3x3 neighbourhood.

    Border windows have 4 or 6 samples; those take the lower of the two middle
    order statistics.
    """
    q = as_image(q, "q")
    rows, cols = q.shape
    padded = np.full((rows + 2, cols + 2), np.nan)
    padded[1:-1, 1:-1] = q
    stack = np.stack(
        [padded[di : di + rows, dj : dj + cols] for di in range(3) for dj in range(3)]
    )
    stack.sort(axis=0)  # NaNs sort last
    k = np.sum(~np.isnan(stack), axis=0)
    return np.take_along_axis(stack, ((k - 1) // 2)[None], axis=0)[0]


def compute_coefficients(q, sigma2, cfg: FilterConfig = FilterConfig()) -> CoefficientMaps:
    q, sigma2 = _pair(q, sigma2)
    if np.any(sigma2 < 0):
        raise ValueError("sigma2 must be non-negative")
    mean, var = local_stats(q, cfg.r)
    # equals (var - sigma2) / var where var >= floor, and is exactly 1 when sigma2 == 0
    a = 1.0 - sigma2 / np.maximum(var, cfg.variance_floor)
    if cfg.clamp_coefficients:
        a = np.clip(a, 0.0, 1.0)
    return CoefficientMaps(a=a, b=(1.0 - a) * mean)


def llmmse_point(q, sigma2, cfg: FilterConfig = FilterConfig()) -> np.ndarray:
    q, sigma2 = _pair(q, sigma2)
    c = compute_coefficients(q, sigma2, cfg)
    return c.a * q + c.b


def llmmse_block(q, sigma2, cfg: FilterConfig = FilterConfig()) -> np.ndarray:
    q, sigma2 = _pair(q, sigma2)
    c = compute_coefficients(q, sigma2, cfg)
    return box_mean(c.a, cfg.r) * q + box_mean(c.b, cfg.r)
