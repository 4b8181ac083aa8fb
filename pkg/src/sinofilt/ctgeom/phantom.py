"""Analytic ellipse phantoms."""

from __future__ import annotations

import csv
from importlib import resources

import numpy as np

from .geometry import pixel_centers


def load_ellipse_table(name: str = "shepp_logan_modified.csv") -> np.ndarray:
    """Rows of (intensity, semi_x, semi_y, center_x, center_y, angle_deg)."""
    text = resources.files("sinofilt.data").joinpath(name).read_text()
    rows = [line for line in text.splitlines() if line and not line.startswith("#")]
    reader = csv.DictReader(rows)
    cols = reader.fieldnames
    return np.array([[float(rec[c]) for c in cols] for rec in reader])


SHEPP_LOGAN_MODIFIED = load_ellipse_table()


def ellipse_sum(x, y, table: np.ndarray = SHEPP_LOGAN_MODIFIED) -> np.ndarray:
    """Sum of intensities of every ellipse containing each point (x, y)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    out = np.zeros(np.broadcast(x, y).shape)
    for value, ax, ay, cx, cy, deg in table:
        phi = np.deg2rad(deg)
        dx, dy = x - cx, y - cy
        u = dx * np.cos(phi) + dy * np.sin(phi)
        v = -dx * np.sin(phi) + dy * np.cos(phi)
        out += np.where((u / ax) ** 2 + (v / ay) ** 2 <= 1.0, value, 0.0)
    return out


def shepp_logan(n: int, table: np.ndarray = SHEPP_LOGAN_MODIFIED) -> np.ndarray:
    """n x n phantom sampled at pixel centres; row 0 is the top (y = +1) edge."""
    if n < 1:
        raise ValueError(f"phantom size must be positive, got {n}")
    c = pixel_centers(n)
    return ellipse_sum(c[None, :], c[::-1, None], table)


def disk(n: int, radius: float, value: float = 1.0, supersample: int = 1) -> np.ndarray:
    """Centred disk; ``supersample > 1`` averages an s x s sub-grid per pixel."""
    s = int(supersample)
    fine = pixel_centers(n * s)
    inside = (fine[None, :] ** 2 + fine[:, None] ** 2 <= radius**2).astype(np.float64)
    return value * inside.reshape(n, s, n, s).mean(axis=(1, 3))
