"""Equiangular fan-beam scanner description.

Lengths are in image half-widths: the reconstructed square spans [-1, 1] on
both axes. The source sits at ``source_to_center * (cos beta, sin beta)`` and
the central ray points at the origin. Detector bin ``b`` sees the ray rotated
counter-clockwise from the central ray by ``gammas[b]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# fan covers the circumscribed circle of the image, radius sqrt(2), plus 2%
FOV_RADIUS = math.sqrt(2.0) * 1.02


def pixel_centers(n: int) -> np.ndarray:
    """Ascending coordinates of n pixel centres across [-1, 1]."""
    return -1.0 + (np.arange(n) + 0.5) * (2.0 / n)


@dataclass(frozen=True)
class FanBeamGeometry:
    n_bins: int = 888
    n_angles: int = 984
    source_to_center: float = 2.5
    # sinogram units per (unit attenuation x one half-width of path)
    value_scale: float = 1.0

    def __post_init__(self):
        if self.n_bins < 2 or self.n_angles < 2:
            raise ValueError(f"need at least 2 bins and 2 angles, got {self.n_bins}x{self.n_angles}")
        if not self.source_to_center > FOV_RADIUS:
            raise ValueError(
                f"source_to_center must exceed {FOV_RADIUS:.4f} so the fan covers the image, "
                f"got {self.source_to_center}"
            )
        if not self.value_scale > 0:
            raise ValueError(f"value_scale must be positive, got {self.value_scale}")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_bins, self.n_angles)

    @property
    def fan_half_angle(self) -> float:
        return math.asin(FOV_RADIUS / self.source_to_center)

    @property
    def bin_spacing(self) -> float:
        return 2.0 * self.fan_half_angle / (self.n_bins - 1)

    @property
    def gammas(self) -> np.ndarray:
        return (np.arange(self.n_bins) - (self.n_bins - 1) / 2.0) * self.bin_spacing

    @property
    def angles(self) -> np.ndarray:
        return np.arange(self.n_angles) * (2.0 * math.pi / self.n_angles)

    def rays(self, angle_index: int) -> tuple[np.ndarray, np.ndarray]:
        """Source position (2,) and unit ray directions (n_bins, 2) for one view."""
        beta = self.angles[angle_index]
        src = self.source_to_center * np.array([math.cos(beta), math.sin(beta)])
        theta = beta + math.pi + self.gammas
        return src, np.stack([np.cos(theta), np.sin(theta)], axis=1)


@dataclass(frozen=True)
class ReconFilter:
    kind: str = "hanning"
    cutoff: float = 1.0

    def __post_init__(self):
        if self.kind not in ("ramp", "hanning"):
            raise ValueError(f"filter kind must be 'ramp' or 'hanning', got {self.kind!r}")
        if not 0.0 < self.cutoff <= 1.0:
            raise ValueError(f"cutoff must lie in (0, 1], got {self.cutoff}")
