"""Scenario configuration files (JSON, ``"schema": 1``).

Example::

    {
      "schema": 1,
      "name": "bfr_weibull_min",
      "model": {
        "main": {"kind": "min_of", "components": [
          {"kind": "weibull", "scale": 1.0, "shape": 0.5},
          {"kind": "weibull", "scale": 1.0, "shape": 3.0}]},
        "standby_rate": 1.0,
        "repair": {"kind": "exponential", "rate": 0.001},
        "maintenance": {"kind": "exponential", "rate": 4.0}
      },
      "analysis": {"curve": {"t_min": 0.01, "t_max": 6.0, "points": 500}},
      "simulation": {"replications": 1000000, "seed": 20240101}
    }

Defaults: ``analysis.scan_points`` 4096, ``analysis.boundary_rtol`` 1e-6,
``analysis.horizon_level`` 1e-12, ``analysis.max_doublings`` 3,
``analysis.curve`` 500 points on ``(0.01 a, horizon]``,
``simulation.replications`` 100000, ``simulation.seed`` 0,
``simulation.workers`` 1. Unknown keys are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .solvers import SolverOptions
from .system import SystemModel

SCHEMA_VERSION = 1

_POSITIVE = {"type": "number", "exclusiveMinimum": 0}

DISTRIBUTION_SCHEMA: dict[str, Any] = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"kind": {"const": "exponential"}, "rate": _POSITIVE},
            "required": ["kind", "rate"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"kind": {"const": "weibull"}, "scale": _POSITIVE, "shape": _POSITIVE},
            "required": ["kind", "scale", "shape"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"enum": ["min_of", "max_of"]},
                "components": {"type": "array", "minItems": 2, "items": {"$ref": "#/$defs/distribution"}},
            },
            "required": ["kind", "components"],
            "additionalProperties": False,
        },
    ]
}

MODEL_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "main": {"$ref": "#/$defs/distribution"},
        "standby_rate": _POSITIVE,
        "repair": {"$ref": "#/$defs/distribution"},
        "maintenance": {"$ref": "#/$defs/distribution"},
    },
    "required": ["main", "standby_rate", "repair", "maintenance"],
    "additionalProperties": False,
}

CONFIG_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "description": {"type": "string"},
        "model": {"$ref": "#/$defs/model"},
        "model2": {"$ref": "#/$defs/model"},
        "analysis": {
            "type": "object",
            "properties": {
                "horizon": _POSITIVE,
                "horizon_level": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
                "scan_points": {"type": "integer", "minimum": 16},
                "max_doublings": {"type": "integer", "minimum": 0},
                "boundary_rtol": {"type": "number", "minimum": 0},
                "argmax_points": {"type": "integer", "minimum": 2},
                "compare_points": {"type": "integer", "minimum": 2},
                "curve": {
                    "type": "object",
                    "properties": {"t_min": _POSITIVE, "t_max": _POSITIVE, "points": {"type": "integer", "minimum": 2}},
                    "additionalProperties": False,
                },
            },
            "additionalProperties": False,
        },
        "simulation": {
            "type": "object",
            "properties": {
                "replications": {"type": "integer", "minimum": 2},
                "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
                "workers": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
        },
    },
    "required": ["schema", "name", "model"],
    "additionalProperties": False,
    "$defs": {"distribution": DISTRIBUTION_SCHEMA, "model": MODEL_SCHEMA},
}


class ConfigError(ValueError):
    """The configuration file is unreadable or violates the schema."""


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    model: SystemModel
    model2: SystemModel | None = None
    analysis: dict[str, Any] = field(default_factory=dict)
    simulation: dict[str, Any] = field(default_factory=dict)
    description: str = ""

    def solver_options(self) -> SolverOptions:
        keys = ("scan_points", "horizon_level", "max_doublings", "boundary_rtol", "horizon")
        return SolverOptions(**{k: self.analysis[k] for k in keys if k in self.analysis})


def validate(raw: Any) -> None:
    try:
        jsonschema.validate(raw, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"{where}: {exc.message}") from None


def parse(raw: Any) -> ScenarioConfig:
    validate(raw)
    return ScenarioConfig(
        name=raw["name"],
        description=raw.get("description", ""),
        model=SystemModel.from_dict(raw["model"]),
        model2=SystemModel.from_dict(raw["model2"]) if "model2" in raw else None,
        analysis=raw.get("analysis", {}),
        simulation=raw.get("simulation", {}),
    )


def load(path: str | Path) -> ScenarioConfig:
    """Read and validate a scenario file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse(raw)


def scenario_path(name: str) -> Path:
    """Path of a bundled scenario, e.g. ``scenario_path("bfr_weibull_min")``."""
    p = resources.files("standbypm") / "scenarios" / f"{name}.json"
    if not p.is_file():
        raise ConfigError(f"no bundled scenario named {name!r}")
    return Path(str(p))


def bundled_scenarios() -> list[str]:
    root = resources.files("standbypm") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))
