"""Command-line entry point: ``sinofilt <command> ...``.

Each stage command reads and writes SGF1 files. Settings come from an
optional ``--config`` JSON document (same schema as ``pipeline``); flags
given on the command line override it.

Exit codes: 0 ok, 2 usage/config error, 3 data-format or I/O error,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import grid
from .bench import bench_csv
from .config import METHODS, ConfigError, load_config, override
from .ctgeom import fbp_fan, forward_project_fan, shepp_logan
from .noise import NumericalOverflowError, add_noise
from .pipeline import PipelineError, apply_method, run_pipeline

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4

log = logging.getLogger("sinofilt")


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _pgm_path(out: str) -> Path:
    return Path(out).with_suffix(".pgm")


def cmd_phantom(args) -> None:
    cfg = override(load_config(args.config), phantom_size=args.n)
    img = shepp_logan(cfg.phantom_size)
    grid.save_raw(args.out, img)
    grid.save_pgm(_pgm_path(args.out), img, *cfg.display_window)


def _geometry_cfg(args):
    return override(
        load_config(args.config),
        "geometry",
        n_bins=args.n_bins,
        n_angles=args.n_angles,
        source_to_center=args.source_to_center,
        value_scale=args.value_scale,
    )


def cmd_project(args) -> None:
    cfg = _geometry_cfg(args)
    grid.save_raw(args.out, forward_project_fan(grid.load_raw(args.image), cfg.geometry))


def _noise_cfg(args):
    return override(
        load_config(args.config),
        "noise",
        f=args.f,
        eta=args.eta,
        variance_scale=args.variance_scale,
        seed=args.seed,
    )


def cmd_addnoise(args) -> None:
    cfg = _noise_cfg(args)
    grid.save_raw(args.out, add_noise(grid.load_raw(args.sino), cfg.noise))


def cmd_filter(args) -> None:
    cfg = _noise_cfg(args)
    cfg = override(cfg, noise_estimate_radius=args.estimate_radius)
    cfg = override(
        cfg,
        "filter",
        r=args.radius,
        variance_floor=args.variance_floor,
        clamp_coefficients=False if args.no_clamp else None,
    )
    sino = grid.load_raw(args.sino)
    out = apply_method(args.method, sino, cfg.noise, cfg.filter, cfg.noise_estimate_radius)
    grid.save_raw(args.out, out)


def cmd_fbp(args) -> None:
    cfg = _geometry_cfg(args)
    cfg = override(cfg, "recon", kind=args.kind, cutoff=args.cutoff)
    cfg = override(cfg, phantom_size=args.n, threads=args.threads)
    recon = fbp_fan(grid.load_raw(args.sino), cfg.geometry, cfg.recon, cfg.phantom_size,
                    workers=cfg.threads)
    grid.save_raw(args.out, recon)
    grid.save_pgm(_pgm_path(args.out), recon, *cfg.display_window)


def cmd_pipeline(args) -> None:
    cfg = load_config(args.config)
    methods = tuple(args.methods.split(",")) if args.methods else None
    cfg = override(cfg, output_dir=args.out_dir, methods=methods, threads=args.threads)
    for rep in run_pipeline(cfg):
        snr = "exact" if rep.snr_db == float("inf") else f"{rep.snr_db:.4f} dB"
        print(f"{rep.method:>10}  SNR {snr}  filter {rep.runtime_seconds * 1e3:.2f} ms")
    print(f"outputs written to {cfg.output_dir}")


def cmd_bench(args) -> None:
    text = bench_csv(args.sizes, args.radii, args.repeats)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sinofilt", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--config", help="JSON config file")
        p.set_defaults(func=func)
        return p

    def geometry_flags(p):
        p.add_argument("--n-bins", type=int)
        p.add_argument("--n-angles", type=int)
        p.add_argument("--source-to-center", type=float)
        p.add_argument("--value-scale", type=float)

    def noise_flags(p):
        p.add_argument("--f", type=float, help="noise system factor (scalar)")
        p.add_argument("--eta", type=float)
        p.add_argument("--variance-scale", type=float)
        p.add_argument("--seed", type=int)

    p = command("phantom", cmd_phantom, "write a modified Shepp-Logan phantom")
    p.add_argument("--n", type=int)
    p.add_argument("--out", required=True)

    p = command("project", cmd_project, "fan-beam forward projection")
    p.add_argument("--image", required=True)
    p.add_argument("--out", required=True)
    geometry_flags(p)

    p = command("addnoise", cmd_addnoise, "add signal-dependent Gaussian noise")
    p.add_argument("--sino", required=True)
    p.add_argument("--out", required=True)
    noise_flags(p)

    p = command("filter", cmd_filter, "denoise a sinogram")
    p.add_argument("--sino", required=True)
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("--out", required=True)
    p.add_argument("--radius", type=int)
    p.add_argument("--variance-floor", type=float)
    p.add_argument("--no-clamp", action="store_true")
    p.add_argument("--estimate-radius", type=int)
    noise_flags(p)

    p = command("fbp", cmd_fbp, "fan-beam filtered backprojection")
    p.add_argument("--sino", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--n", type=int, help="output image size")
    p.add_argument("--kind", choices=("ramp", "hanning"))
    p.add_argument("--cutoff", type=float)
    p.add_argument("--threads", type=int)
    geometry_flags(p)

    p = command("pipeline", cmd_pipeline, "run the full simulation and evaluation")
    p.add_argument("--out-dir")
    p.add_argument("--methods", help=f"comma-separated subset of {','.join(METHODS)}")
    p.add_argument("--threads", type=int)

    p = command("bench", cmd_bench, "time box_mean and llmmse_block")
    p.add_argument("--sizes", type=_ints, default=[512, 1024])
    p.add_argument("--radii", type=_ints, default=[1, 5, 15])
    p.add_argument("--repeats", type=int, default=9)
    p.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except ConfigError as exc:
        print(f"sinofilt: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PipelineError as exc:
        print(f"sinofilt: {exc}", file=sys.stderr)
        return _exit_code(exc.cause) or EXIT_DATA
    except Exception as exc:
        code = _exit_code(exc)
        if code is None:
            raise
        print(f"sinofilt: {exc}", file=sys.stderr)
        return code
    return 0


def _exit_code(exc: Exception) -> int | None:
    if isinstance(exc, ConfigError):
        return EXIT_USAGE
    if isinstance(exc, (NumericalOverflowError, ArithmeticError)):
        return EXIT_NUMERIC
    if isinstance(exc, (OSError, ValueError, IndexError)):
        return EXIT_DATA
    return None


if __name__ == "__main__":
    sys.exit(main())
