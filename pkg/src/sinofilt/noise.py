"""Signal-dependent Gaussian noise for low-dose sinograms.

The noise variance at a sinogram sample with noise-free value ``p`` on
detector bin ``i`` is ``f_i * exp(p / eta)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .boxstats import box_mean
from .grid import as_image
from .rng import standard_normal_grid


class NumericalOverflowError(ArithmeticError):
    pass


@dataclass(frozen=True)
class NoiseParams:
    f: float | Sequence[float] = 22500.0
    eta: float = 22000.0
    variance_scale: float = 0.8
    seed: int = 0

    def __post_init__(self):
        f = np.asarray(self.f, dtype=np.float64)
        if f.ndim > 1 or f.size == 0 or not np.all(np.isfinite(f)) or np.any(f <= 0):
            raise ValueError(f"f must be a positive scalar or 1D vector, got {self.f!r}")
        if not (np.isfinite(self.eta) and self.eta > 0):
            raise ValueError(f"eta must be positive, got {self.eta}")
        if not (np.isfinite(self.variance_scale) and self.variance_scale > 0):
            raise ValueError(f"variance_scale must be positive, got {self.variance_scale}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if f.ndim == 1:
            object.__setattr__(self, "f", tuple(float(v) for v in f))

    def bin_factors(self, n_bins: int) -> np.ndarray:
        """``f`` as a column vector of length ``n_bins``."""
        f = np.asarray(self.f, dtype=np.float64)
        if f.ndim == 0:
            return np.full((n_bins, 1), float(f))
        if f.size != n_bins:
            raise ValueError(f"per-bin f has {f.size} entries, sinogram has {n_bins} bins")
        return f.reshape(n_bins, 1)


def noise_variance(p: np.ndarray, params: NoiseParams) -> np.ndarray:
    """``f_i * exp(p / eta)``, raising if it leaves the finite range."""
    with np.errstate(over="ignore"):
        var = params.bin_factors(p.shape[0]) * np.exp(p / params.eta)
    bad = ~np.isfinite(var)
    if bad.any():
        i, j = (int(k) for k in np.argwhere(bad)[0])
        raise NumericalOverflowError(
            f"noise variance overflows at bin {i}, angle {j} (value {p[i, j]!r}, eta {params.eta})"
        )
    return var


def add_noise(p, params: NoiseParams) -> np.ndarray:
    clean = as_image(p, "sinogram")
    std = np.sqrt(noise_variance(clean, params))
    u = standard_normal_grid(params.seed, *clean.shape)
    return clean + std * u


def estimate_noise_variance(q, params: NoiseParams, r: int = 1) -> np.ndarray:
    """Plug the local box mean of ``q`` into the variance law, scaled by ``variance_scale``."""
    noisy = as_image(q, "sinogram")
    return params.variance_scale * noise_variance(box_mean(noisy, r), params)
