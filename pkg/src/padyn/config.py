"""Analysis configuration files (JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

from padyn.rational_map import DEFAULT_ORBIT_CAP, InvalidParams, MapParams
from padyn.ergodicity import DEFAULT_MAX_LEVEL


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Samples:
    points: int = 20
    orbit_steps: int = 20
    extra_maps: int = 3
    pairs: int = 200


@dataclass(frozen=True)
class AnalysisConfig:
    params: MapParams
    radii: Union[str, List[int]] = "auto"
    max_level: int = DEFAULT_MAX_LEVEL
    samples: Samples = field(default_factory=Samples)
    seed: Optional[int] = None
    orbit_cap: int = DEFAULT_ORBIT_CAP

    def to_json(self) -> dict:
        return {
            "map": self.params.to_config(),
            "radii": self.radii if isinstance(self.radii, str) else list(self.radii),
            "max_level": self.max_level,
            "samples": {
                "points": self.samples.points,
                "orbit_steps": self.samples.orbit_steps,
                "extra_maps": self.samples.extra_maps,
                "pairs": self.samples.pairs,
            },
            "seed": self.seed,
            "orbit_cap": self.orbit_cap,
        }


def _int_field(block: dict, key: str, where: str, default: int, minimum: int = 0) -> int:
    v = block.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise ConfigError(f"field '{where}{key}' must be an integer >= {minimum}, got {v!r}")
    return v


def parse_config(data: dict) -> AnalysisConfig:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - {"map", "radii", "max_level", "samples", "seed", "orbit_cap"}
    if unknown:
        raise ConfigError(f"unknown config field(s): {', '.join(sorted(unknown))}")
    if "map" not in data or not isinstance(data["map"], dict):
        raise ConfigError("field 'map' is required and must be an object")
    try:
        params = MapParams.from_config(data["map"])
    except (InvalidParams, ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"field 'map': {exc}") from None
    radii = data.get("radii", "auto")
    if radii != "auto":
        if not isinstance(radii, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in radii
        ):
            raise ConfigError("field 'radii' must be \"auto\" or a list of integer exponents")
        radii = sorted(set(radii))
    max_level = _int_field(data, "max_level", "", DEFAULT_MAX_LEVEL, minimum=2)
    orbit_cap = _int_field(data, "orbit_cap", "", DEFAULT_ORBIT_CAP, minimum=1)
    sblock = data.get("samples", {})
    if not isinstance(sblock, dict):
        raise ConfigError("field 'samples' must be an object")
    d = Samples()
    samples = Samples(
        points=_int_field(sblock, "points", "samples.", d.points, 1),
        orbit_steps=_int_field(sblock, "orbit_steps", "samples.", d.orbit_steps, 1),
        extra_maps=_int_field(sblock, "extra_maps", "samples.", d.extra_maps, 0),
        pairs=_int_field(sblock, "pairs", "samples.", d.pairs, 1),
    )
    if samples.orbit_steps + 1 > orbit_cap:
        raise ConfigError("field 'samples.orbit_steps' must stay below 'orbit_cap'")
    seed = data.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise ConfigError(f"field 'seed' must be an integer, got {seed!r}")
    return AnalysisConfig(params, radii, max_level, samples, seed, orbit_cap)


def load_config(path: Union[str, Path]) -> AnalysisConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_config(data)
