"""Image quality and timing measurements."""

from __future__ import annotations

import csv
import math
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping

import numpy as np

from .grid import as_image

EXACT = math.inf  # snr_db of a perfect reconstruction


@dataclass
class EvalReport:
    method: str
    snr_db: float
    runtime_seconds: float
    profile: list[tuple[int, float]] = field(default_factory=list)

    def csv_row(self) -> list[str]:
        snr = "exact" if self.snr_db == EXACT else f"{self.snr_db:.6f}"
        return [self.method, snr, f"{self.runtime_seconds:.6f}"]


def write_report_csv(path, reports: Iterable[EvalReport]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["method", "snr_db", "runtime_seconds"])
        for rep in reports:
            w.writerow(rep.csv_row())


def snr_db(reference, test) -> float:
    """``10 log10(sum(ref**2) / sum((ref - test)**2))``; ``EXACT`` when equal."""
    ref = as_image(reference, "reference")
    tst = as_image(test, "test")
    if ref.shape != tst.shape:
        raise ValueError(f"shape mismatch: {ref.shape} vs {tst.shape}")
    signal = float(np.sum(ref * ref))
    if signal == 0.0:
        raise ValueError("reference image is identically zero")
    err = float(np.sum((ref - tst) ** 2))
    if err == 0.0:
        return EXACT
    return 10.0 * math.log10(signal / err)


def extract_profile(image, row_start: int, row_end: int, col: int) -> list[tuple[int, float]]:
    """Column ``col`` over rows ``row_start..row_end`` inclusive, all 1-based."""
    img = as_image(image)
    rows, cols = img.shape
    if not (1 <= row_start <= row_end <= rows):
        raise IndexError(f"row range {row_start}..{row_end} outside 1..{rows}")
    if not 1 <= col <= cols:
        raise IndexError(f"column {col} outside 1..{cols}")
    return [(i, float(img[i - 1, col - 1])) for i in range(row_start, row_end + 1)]


def _crossing(idx: np.ndarray, val: np.ndarray, level: float, rising: bool) -> float:
    for k in range(len(val) - 1):
        a, b = val[k], val[k + 1]
        hit = (a < level <= b) if rising else (a > level >= b)
        if hit:
            return idx[k] + (level - a) / (b - a) * (idx[k + 1] - idx[k])
    return float(idx[0])  # level reached at the first sample


def edge_width(profile: list[tuple[float, float]]) -> float:
    """10%-90% rise distance across the transition between the profile's
    minimum and maximum, with linear interpolation between samples."""
    idx = np.array([p[0] for p in profile], dtype=np.float64)
    val = np.array([p[1] for p in profile], dtype=np.float64)
    lo, hi = float(val.min()), float(val.max())
    if len(val) < 2 or hi == lo:
        raise ValueError("edge_width needs a non-flat profile")
    i_min, i_max = int(np.argmin(val)), int(np.argmax(val))
    start, stop = sorted((i_min, i_max))
    seg_i, seg_v = idx[start : stop + 1], val[start : stop + 1]
    rising = i_min < i_max
    span = hi - lo
    if rising:
        levels = (lo + 0.1 * span, lo + 0.9 * span)
    else:
        levels = (hi - 0.1 * span, hi - 0.9 * span)
    x10 = _crossing(seg_i, seg_v, levels[0], rising)
    x90 = _crossing(seg_i, seg_v, levels[1], rising)
    return abs(x90 - x10)


def time_filter(fn: Callable[[], object], repeats: int = 5, warmup: int = 1) -> float:
    """Median wall-clock seconds of ``fn()`` over ``repeats`` runs after warm-up."""
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    for _ in range(warmup):
        fn()
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def time_interleaved(fns: Mapping[Hashable, Callable[[], object]], repeats: int = 9,
                     warmup: int = 1) -> dict[Hashable, float]:
    """Median seconds per callable, running them round-robin so that machine
    load drift affects every candidate alike."""
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    for _ in range(warmup):
        for fn in fns.values():
            fn()
    times: dict[Hashable, list[float]] = {key: [] for key in fns}
    for _ in range(repeats):
        for key, fn in fns.items():
            t0 = time.perf_counter()
            fn()
            times[key].append(time.perf_counter() - t0)
    return {key: statistics.median(v) for key, v in times.items()}
