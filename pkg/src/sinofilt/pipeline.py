"""Stage functions and the end-to-end simulate / denoise / reconstruct run."""

from __future__ import annotations

import csv
import dataclasses
import logging
from pathlib import Path

import numpy as np

from . import grid
from .config import PipelineConfig
from .ctgeom import fbp_fan, forward_project_fan, shepp_logan
from .filters import FilterConfig, llmmse_block, llmmse_point, median3x3
from .metrics import EvalReport, extract_profile, snr_db, time_filter, write_report_csv
from .noise import NoiseParams, add_noise, estimate_noise_variance

log = logging.getLogger(__name__)


class PipelineError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause


def apply_method(method: str, q: np.ndarray, noise: NoiseParams, fcfg: FilterConfig,
                 estimate_radius: int = 1) -> np.ndarray:
    if method == "none":
        return q
    if method == "med":
        return median3x3(q)
    if method == "llmmse-raw":
        fcfg = dataclasses.replace(fcfg, clamp_coefficients=False)
        method = "llmmse"
    sigma2 = estimate_noise_variance(q, noise, estimate_radius)
    if method == "llmmse":
        return llmmse_point(q, sigma2, fcfg)
    if method == "llmmse-b":
        return llmmse_block(q, sigma2, fcfg)
    raise ValueError(f"unknown method {method!r}")


def _persist(path: Path, image: np.ndarray) -> np.ndarray:
    """Write SGF1 and return the values as a reader of that file sees them."""
    grid.save_raw(path, image)
    return image.astype(np.float32).astype(np.float64)


class _Stage:
    def __init__(self, name: str):
        self.name = name

    def __enter__(self):
        log.info("stage %s", self.name)

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and not isinstance(exc, PipelineError) and isinstance(exc, Exception):
            raise PipelineError(self.name, exc) from exc
        return False


def run_pipeline(cfg: PipelineConfig) -> list[EvalReport]:
    """phantom -> project -> noise -> each method -> FBP -> metrics.

    Writes SGF1/PGM images plus ``report.csv`` and ``profiles.csv`` into
    ``cfg.output_dir`` and returns one report per method.
    """
    out = Path(cfg.output_dir)
    lo, hi = cfg.display_window
    geom = cfg.geometry

    with _Stage("setup"):
        out.mkdir(parents=True, exist_ok=True)
    with _Stage("phantom"):
        phantom = _persist(out / "phantom.sgf", shepp_logan(cfg.phantom_size))
        grid.save_pgm(out / "phantom.pgm", phantom, lo, hi)
    with _Stage("project"):
        if cfg.clean_sinogram:
            clean = grid.load_raw(cfg.clean_sinogram)
            if clean.shape != geom.shape:
                raise ValueError(
                    f"sinogram {cfg.clean_sinogram} is {clean.shape}, geometry expects {geom.shape}"
                )
        else:
            clean = forward_project_fan(phantom, geom)
        clean = _persist(out / "sino_clean.sgf", clean)
    with _Stage("addnoise"):
        noisy = _persist(out / "sino_noisy.sgf", add_noise(clean, cfg.noise))
    with _Stage("reference"):
        if cfg.reference == "phantom":
            reference = phantom
        else:
            reference = grid.load_raw(cfg.reference)
        if reference.shape != (cfg.phantom_size, cfg.phantom_size):
            raise ValueError(f"reference is {reference.shape}, reconstructions are {cfg.phantom_size}^2")

    reports = []
    p = cfg.profile
    with _Stage("profile"):
        profile_rows = [("phantom", row, value) for row, value in
                        extract_profile(phantom, p.row_start, p.row_end, p.col)]
    for method in cfg.methods:
        with _Stage(f"filter:{method}"):
            filtered = apply_method(method, noisy, cfg.noise, cfg.filter, cfg.noise_estimate_radius)
            if method == "none":
                runtime = 0.0
            else:
                runtime = time_filter(
                    lambda: apply_method(method, noisy, cfg.noise, cfg.filter, cfg.noise_estimate_radius),
                    repeats=cfg.timing_repeats,
                )
            filtered = _persist(out / f"sino_{method}.sgf", filtered)
        with _Stage(f"fbp:{method}"):
            recon = fbp_fan(filtered, geom, cfg.recon, cfg.phantom_size, workers=cfg.threads)
            recon = _persist(out / f"recon_{method}.sgf", recon)
            grid.save_pgm(out / f"recon_{method}.pgm", recon, lo, hi)
        with _Stage(f"metrics:{method}"):
            profile = extract_profile(recon, p.row_start, p.row_end, p.col)
            reports.append(EvalReport(method, snr_db(reference, recon), runtime, profile))
            profile_rows += [(method, row, value) for row, value in profile]

    with _Stage("report"):
        write_report_csv(out / "report.csv", reports)
        with open(out / "profiles.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["method", "row", "value"])
            for method, row, value in profile_rows:
                w.writerow([method, row, repr(value)])
    return reports
