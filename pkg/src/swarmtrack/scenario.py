"""Scenario files: ``[section]`` headers with ``key = value`` lines.

Sections and keys::

    [scenario]  length breadth primary_radius secondary_radius sensor_count
                target_count steps dt seed wave_size wave_interval
    [flock]     neighbor_radius sep_radius w_cohesion w_alignment
                w_separation w_drift v_cruise v_max
    [tracking]  capacity window continuity_threshold

``sensor_count`` accepts ``auto``. Anything else is an error.
"""

from __future__ import annotations

import configparser
import math
import os
from pathlib import Path
from typing import Optional

from swarmtrack.engine import SimConfig, wave_schedule
from swarmtrack.geometry import Rect
from swarmtrack.planner import SensorSpec
from swarmtrack.targets import FlockParams

SEED_ENV = "SWARMTRACK_SEED"

_INT = int
_FLOAT = float

KEYS = {
    "scenario": {
        "length": _FLOAT,
        "breadth": _FLOAT,
        "primary_radius": _FLOAT,
        "secondary_radius": _FLOAT,
        "sensor_count": "count_or_auto",
        "target_count": _INT,
        "steps": _INT,
        "dt": _FLOAT,
        "seed": _INT,
        "wave_size": _INT,
        "wave_interval": _INT,
    },
    "flock": {
        "neighbor_radius": _FLOAT,
        "sep_radius": _FLOAT,
        "w_cohesion": _FLOAT,
        "w_alignment": _FLOAT,
        "w_separation": _FLOAT,
        "w_drift": _FLOAT,
        "v_cruise": _FLOAT,
        "v_max": _FLOAT,
    },
    "tracking": {
        "capacity": _INT,
        "window": _INT,
        "continuity_threshold": _FLOAT,
    },
}
REQUIRED = ("length", "breadth", "primary_radius", "secondary_radius")


class ScenarioError(ValueError):
    pass


def _convert(section: str, key: str, raw: str):
    kind = KEYS[section][key]
    text = raw.strip()
    if kind == "count_or_auto":
        if text.lower() == "auto":
            return "auto"
        kind = _INT
    try:
        value = kind(text)
    except ValueError:
        raise ScenarioError(f"[{section}] {key}: cannot parse {raw!r}") from None
    if kind is _FLOAT and not math.isfinite(value):
        raise ScenarioError(f"[{section}] {key}: value must be finite, got {raw!r}")
    return value


def parse_scenario(text: str) -> dict[str, dict]:
    cp = configparser.ConfigParser(interpolation=None, delimiters=("=",), comment_prefixes=("#", ";"))
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as e:
        raise ScenarioError(f"malformed scenario file: {e}") from None
    out: dict[str, dict] = {s: {} for s in KEYS}
    for section in cp.sections():
        if section not in KEYS:
            raise ScenarioError(f"unknown section [{section}]")
        for key, raw in cp.items(section):
            if key not in KEYS[section]:
                raise ScenarioError(f"unknown key {key!r} in [{section}]")
            out[section][key] = _convert(section, key, raw)
    missing = [k for k in REQUIRED if k not in out["scenario"]]
    if missing:
        raise ScenarioError(f"missing required keys: {', '.join(missing)}")
    return out


def build_config(values: dict[str, dict], seed_override: Optional[int] = None, workers: int = 1) -> SimConfig:
    sc, fl, tr = values["scenario"], values["flock"], values["tracking"]
    seed = sc.get("seed", 0)
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise ScenarioError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    if seed_override is not None:
        seed = seed_override
    target_count = sc.get("target_count", 20)
    try:
        return SimConfig(
            field=Rect(sc["length"], sc["breadth"]),
            spec=SensorSpec(sc["primary_radius"], sc["secondary_radius"], tr.get("capacity", 5)),
            sensor_count=sc.get("sensor_count", "auto"),
            flock=FlockParams(**fl),
            target_count=target_count,
            spawn_schedule=wave_schedule(target_count, sc.get("wave_size", 0), sc.get("wave_interval", 0)),
            dt=sc.get("dt", 0.1),
            steps=sc.get("steps", 2000),
            seed=seed,
            window=tr.get("window", 3),
            continuity_threshold=tr.get("continuity_threshold", 0.9),
            workers=workers,
        )
    except ValueError as e:
        raise ScenarioError(str(e)) from None


def load_scenario(path: Path, seed_override: Optional[int] = None, workers: int = 1) -> SimConfig:
    """Read and validate a scenario file. Seed precedence: argument, then env, then file."""
    return build_config(parse_scenario(Path(path).read_text(encoding="utf-8")), seed_override, workers)
