"""Runtime scaling of the box statistics and the blockwise filter."""

from __future__ import annotations

import csv
import io
from functools import partial
from typing import Iterable

import numpy as np

from .boxstats import box_mean
from .filters import FilterConfig, llmmse_block
from .metrics import time_interleaved
from .rng import standard_normal_grid


def bench_rows(sizes: Iterable[int], radii: Iterable[int], repeats: int = 9):
    """Yield ``(op, size, radius, seconds)`` for square grids of each size."""
    radii = list(radii)
    for size in sizes:
        q = 1000.0 + 150.0 * standard_normal_grid(1, size, size)
        sigma2 = np.full(q.shape, 18000.0)
        cfgs = {r: FilterConfig(r=r) for r in radii}
        ops = {
            "box_mean": {r: partial(box_mean, q, r) for r in radii},
            "llmmse_block": {r: partial(llmmse_block, q, sigma2, cfgs[r]) for r in radii},
        }
        for op, fns in ops.items():
            for r, sec in time_interleaved(fns, repeats=repeats).items():
                yield op, size, r, sec


def bench_csv(sizes, radii, repeats: int = 9) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["op", "size", "radius", "seconds"])
    for op, size, r, sec in bench_rows(sizes, radii, repeats):
        w.writerow([op, size, r, f"{sec:.6f}"])
    return buf.getvalue()
