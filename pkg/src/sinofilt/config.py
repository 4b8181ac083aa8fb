"""JSON experiment configuration.

Every section is optional; omitted fields take the defaults of the standard
256x256 / 888x984 low-dose experiment.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .ctgeom import FanBeamGeometry, ReconFilter
from .filters import FilterConfig
from .noise import NoiseParams

METHODS = ("none", "med", "llmmse", "llmmse-b", "llmmse-raw")
DEFAULT_METHODS = ("none", "med", "llmmse", "llmmse-b")

# 78.125 sinogram units per pixel of path through unit attenuation at 256x256
DEFAULT_VALUE_SCALE = 10000.0


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ProfileLocation:
    row_start: int = 203
    row_end: int = 209
    col: int = 126


@dataclass(frozen=True)
class PipelineConfig:
    phantom_size: int = 256
    geometry: FanBeamGeometry = field(
        default_factory=lambda: FanBeamGeometry(value_scale=DEFAULT_VALUE_SCALE)
    )
    noise: NoiseParams = field(default_factory=NoiseParams)
    noise_estimate_radius: int = 1
    filter: FilterConfig = field(default_factory=FilterConfig)
    recon: ReconFilter = field(default_factory=ReconFilter)
    methods: tuple[str, ...] = DEFAULT_METHODS
    output_dir: str = "out"
    profile: ProfileLocation = field(default_factory=ProfileLocation)
    # "phantom" or a path to an SGF1 reference image
    reference: str = "phantom"
    # optional SGF1 noise-free sinogram used instead of projecting the phantom
    clean_sinogram: str | None = None
    display_window: tuple[float, float] = (0.0, 0.5)
    timing_repeats: int = 5
    threads: int = 1

    def __post_init__(self):
        if self.phantom_size < 1:
            raise ConfigError(f"phantom_size must be positive, got {self.phantom_size}")
        if not self.methods:
            raise ConfigError("method list is empty")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise ConfigError(f"unknown method(s) {bad}; valid methods: {', '.join(METHODS)}")
        if self.noise_estimate_radius < 0:
            raise ConfigError("noise_estimate_radius must be >= 0")
        if self.timing_repeats < 1 or self.threads < 1:
            raise ConfigError("timing_repeats and threads must be >= 1")

    def to_dict(self) -> dict[str, Any]:
        return _jsonable(dataclasses.asdict(self))


_SECTIONS = {
    "geometry": FanBeamGeometry,
    "noise": NoiseParams,
    "filter": FilterConfig,
    "recon": ReconFilter,
    "profile": ProfileLocation,
}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _build(cls, data: dict[str, Any], where: str):
    if not isinstance(data, dict):
        raise ConfigError(f"{where} must be a JSON object")
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {sorted(unknown)}")
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid {where}: {exc}") from exc


def config_from_dict(data: dict[str, Any], base: PipelineConfig | None = None) -> PipelineConfig:
    """Overlay ``data`` on ``base`` (section by section) and validate."""
    base = base or PipelineConfig()
    merged: dict[str, Any] = {}
    top = {f.name for f in dataclasses.fields(PipelineConfig)}
    unknown = set(data) - top
    if unknown:
        raise ConfigError(f"unknown top-level key(s): {sorted(unknown)}")
    for name in top:
        current = getattr(base, name)
        if name not in data:
            merged[name] = current
        elif name in _SECTIONS:
            if not isinstance(data[name], dict):
                raise ConfigError(f"{name} must be a JSON object")
            section = dataclasses.asdict(current)
            section.update(data[name])
            merged[name] = _build(_SECTIONS[name], section, name)
        elif name in ("methods", "display_window"):
            merged[name] = tuple(data[name])
        else:
            merged[name] = data[name]
    try:
        return PipelineConfig(**merged)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path | None) -> PipelineConfig:
    if path is None:
        return PipelineConfig()
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return config_from_dict(data)


def override(cfg: PipelineConfig, section: str | None = None, **values) -> PipelineConfig:
    """Return ``cfg`` with non-None ``values`` applied (flags win over config)."""
    values = {k: v for k, v in values.items() if v is not None}
    if not values:
        return cfg
    return config_from_dict({section: values} if section else values, base=cfg)
