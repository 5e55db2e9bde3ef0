"""Run configuration: JSON file plus ``key=value`` overrides."""

from __future__ import annotations

import copy
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from .obstacle import VARIANTS
from .schedule import TimeSchedule


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


PRESETS: dict[str, dict[str, Any]] = {
    "example1": {
        "dimension": 1,
        "domain": [-1.0, 1.0],
        "velocity": 1.0,
        "initial": "half_plus_sin_pi",
        "obstacle": {"name": "sin_pi"},
        "exact": "example1",
    },
    "sin_advection": {
        "dimension": 1,
        "domain": [-1.0, 1.0],
        "velocity": 1.0,
        "initial": "sin_pi",
        "obstacle": None,
        "exact": "auto",
    },
    "example2": {
        "dimension": 2,
        "domain": [-1.0, 1.0],
        "velocity": [0.5, 0.5],
        "scheme": "rkdg",
        "initial": "example2",
        "obstacle": {"name": "sin_pi_diag"},
        "exact": "example2",
        "samples_per_cell": 10,
    },
}

DEFAULT_SCHEDULE = {"kind": "dt_eq_frac_h", "frac": 0.2}

INITIAL_1D = ("sin_pi", "half_plus_sin_pi", "one")
INITIAL_2D = ("example2",)
OBSTACLES_1D = ("sin_pi", "custom_sampled")
OBSTACLES_2D = ("sin_pi_diag",)
EXACT = ("auto", "example1", "example2", "none")


@dataclass
class ObstacleConfig:
    name: str
    variant: str = "two_point"
    window: str = "analytic"  # or "sampled"
    n_samples: int = 64
    refine_iters: int = 2
    function: str = "sin_pi"  # obstacle shape for custom_sampled


@dataclass
class RunConfig:
    problem: str | None = None
    dimension: int = 1
    scheme: str = "rkdg"
    degree: int = 2
    N: int = 80
    Nx: int | None = None
    Ny: int | None = None
    T: float = 0.5
    velocity: Any = 1.0
    domain: list = field(default_factory=lambda: [-1.0, 1.0])
    initial: str = "half_plus_sin_pi"
    schedule: dict = field(default_factory=lambda: dict(DEFAULT_SCHEDULE))
    obstacle: ObstacleConfig | None = None
    exact: str = "auto"
    samples_per_cell: int = 50
    quad_points: int | None = None
    cfl: float = 0.2
    strict_cfl: bool = False
    seed: int = 0
    solution_out: str | None = None
    table_out: str | None = None

    @property
    def time_schedule(self) -> TimeSchedule:
        return TimeSchedule.from_dict(self.schedule)

    @property
    def velocities(self) -> tuple[float, ...]:
        v = self.velocity
        return tuple(float(c) for c in v) if isinstance(v, (list, tuple)) else (float(v),)

    def with_grid(self, n: int) -> "RunConfig":
        out = copy.deepcopy(self)
        out.N = n
        out.Nx = out.Ny = None
        return out

    def resolved(self) -> dict:
        d = asdict(self)
        return d


def _set_dotted(d: dict, key: str, value) -> None:
    parts = key.split(".")
    cur = d
    for p in parts[:-1]:
        if not isinstance(cur.get(p), dict):
            cur[p] = {}
        cur = cur[p]
    cur[parts[-1]] = value


def parse_override(text: str) -> tuple[str, Any]:
    if "=" not in text:
        raise ConfigError(text, "override must look like key=value")
    key, raw = text.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.strip(), value


def load_config(path=None, overrides=(), base: dict | None = None) -> RunConfig:
    raw: dict = copy.deepcopy(base) if base else {}
    if path is not None:
        try:
            raw.update(json.loads(Path(path).read_text()))
        except FileNotFoundError:
            raise ConfigError("config", f"file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"invalid JSON: {exc}") from None
    for item in overrides:
        key, value = parse_override(item) if isinstance(item, str) else item
        _set_dotted(raw, key, value)
    return build_config(raw)


def build_config(raw: dict) -> RunConfig:
    raw = copy.deepcopy(raw)
    problem = raw.get("problem")
    if problem is not None:
        if problem not in PRESETS:
            raise ConfigError("problem", f"unknown problem {problem!r}; choose from {sorted(PRESETS)}")
        merged = copy.deepcopy(PRESETS[problem])
        if isinstance(raw.get("obstacle"), dict) and isinstance(merged.get("obstacle"), dict):
            merged["obstacle"].update(raw.pop("obstacle"))
        merged.update(raw)
        raw = merged
    sched = raw.get("schedule")
    if isinstance(sched, dict) and "kind" not in sched:
        raw["schedule"] = {**DEFAULT_SCHEDULE, **sched}
    known = set(RunConfig.__dataclass_fields__)
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown configuration key")
    obs = raw.get("obstacle")
    if obs is not None:
        if not isinstance(obs, dict) or "name" not in obs:
            raise ConfigError("obstacle", "must be null or an object with a 'name'")
        bad = set(obs) - set(ObstacleConfig.__dataclass_fields__)
        if bad:
            raise ConfigError(f"obstacle.{sorted(bad)[0]}", "unknown obstacle key")
        raw["obstacle"] = ObstacleConfig(**obs)
    cfg = RunConfig(**raw)
    validate(cfg)
    return cfg


def _positive_int(name, value):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigError(name, f"must be a positive integer, got {value!r}")


def validate(cfg: RunConfig) -> None:
    if cfg.dimension not in (1, 2):
        raise ConfigError("dimension", f"must be 1 or 2, got {cfg.dimension!r}")
    if cfg.scheme not in ("sldg", "rkdg"):
        raise ConfigError("scheme", f"must be 'sldg' or 'rkdg', got {cfg.scheme!r}")
    if cfg.dimension == 2 and cfg.scheme != "rkdg":
        raise ConfigError("scheme", "only rkdg is available in two dimensions")
    if isinstance(cfg.degree, bool) or not isinstance(cfg.degree, int) or not 0 <= cfg.degree <= 8:
        raise ConfigError("degree", f"must be an integer in [0, 8], got {cfg.degree!r}")
    _positive_int("N", cfg.N)
    for name in ("Nx", "Ny"):
        if getattr(cfg, name) is not None:
            _positive_int(name, getattr(cfg, name))
    if not isinstance(cfg.T, (int, float)) or not cfg.T > 0:
        raise ConfigError("T", f"must be positive, got {cfg.T!r}")
    try:
        vel = cfg.velocities
    except (TypeError, ValueError):
        raise ConfigError("velocity", f"not a number or list of numbers: {cfg.velocity!r}") from None
    if len(vel) != cfg.dimension or any(not c > 0 for c in vel):
        raise ConfigError("velocity", f"need {cfg.dimension} positive component(s), got {cfg.velocity!r}")
    if len(cfg.domain) != 2 or not cfg.domain[1] > cfg.domain[0]:
        raise ConfigError("domain", f"must be [a, b] with b > a, got {cfg.domain!r}")
    initials = INITIAL_1D if cfg.dimension == 1 else INITIAL_2D
    if cfg.initial not in initials:
        raise ConfigError("initial", f"unknown initial data {cfg.initial!r}; choose from {initials}")
    if not isinstance(cfg.schedule, dict) or "kind" not in cfg.schedule:
        raise ConfigError("schedule", "must be an object with a 'kind'")
    try:
        cfg.time_schedule
    except (TypeError, ValueError) as exc:
        raise ConfigError("schedule", str(exc)) from None
    if cfg.obstacle is not None:
        o = cfg.obstacle
        names = OBSTACLES_1D if cfg.dimension == 1 else OBSTACLES_2D
        if o.name not in names:
            raise ConfigError("obstacle.name", f"unknown obstacle {o.name!r}; choose from {names}")
        if o.variant not in VARIANTS:
            raise ConfigError("obstacle.variant", f"must be one of {VARIANTS}, got {o.variant!r}")
        if o.window not in ("analytic", "sampled"):
            raise ConfigError("obstacle.window", f"must be 'analytic' or 'sampled', got {o.window!r}")
        if o.n_samples < 2:
            raise ConfigError("obstacle.n_samples", "must be >= 2")
        if o.refine_iters < 0:
            raise ConfigError("obstacle.refine_iters", "must be >= 0")
        if o.function not in ("sin_pi",):
            raise ConfigError("obstacle.function", f"unknown obstacle function {o.function!r}")
    if cfg.exact not in EXACT:
        raise ConfigError("exact", f"must be one of {EXACT}, got {cfg.exact!r}")
    if cfg.exact == "example1" and (cfg.dimension != 1 or cfg.T > 1):
        raise ConfigError("exact", "the example1 closed form is 1-D and valid for T <= 1")
    if cfg.exact == "example2" and (cfg.dimension != 2 or cfg.T > 1):
        raise ConfigError("exact", "the example2 closed form is 2-D and valid for T <= 1")
    _positive_int("samples_per_cell", cfg.samples_per_cell)
    if cfg.samples_per_cell < 2:
        raise ConfigError("samples_per_cell", "must be >= 2")
    if cfg.quad_points is not None and cfg.quad_points < cfg.degree + 1:
        raise ConfigError("quad_points", f"must be >= degree + 1 = {cfg.degree + 1}")
    if not cfg.cfl > 0:
        raise ConfigError("cfl", "must be positive")
