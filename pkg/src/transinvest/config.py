"""
Run configuration.

Two on-disk forms are accepted. The first is an INI file with the sections
below; any omitted section or key falls back to the published baselines.

    [firm]      p, c, A, k, beta, B
    [policy]    s1, s2, q1, q2, pr1, pr2   (presence switches the objective
                                            to the subsidy/tax-adjusted profit)
    [scenario]  name (immediate|quick|slow|none|all|custom), horizon (3|6), g,
                and for name=custom the comma-separated series c, k, beta, B
                (optionally A) plus scalar p
    [solver]    tol, grid_points
    [output]    format (csv|json|table), path

The second is JSON with the same nesting. A JSON result document written by
the CLI carries its configuration under ``"config"`` and can be fed back in
unchanged.
"""

from __future__ import annotations

import configparser
import json
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

from .errors import ConfigError, ModelDomainError
from .model import BASELINE, FirmParams
from .multiperiod import DEFAULT_DISCOUNT, HORIZONS, SCENARIO_NAMES, ScenarioPath
from .optimizer import DEFAULT_TOL
from .policy import PolicyParams

FORMATS = ("csv", "json", "table")

_FIRM_KEYS = tuple(f.name for f in fields(FirmParams))
_POLICY_KEYS = tuple(f.name for f in fields(PolicyParams))
_SCENARIO_KEYS = ("name", "horizon", "g", "p", "c", "k", "beta", "B", "A")
_SOLVER_KEYS = ("tol", "grid_points")
_OUTPUT_KEYS = ("format", "path")
_SECTIONS = {
    "firm": _FIRM_KEYS,
    "policy": _POLICY_KEYS,
    "scenario": _SCENARIO_KEYS,
    "solver": _SOLVER_KEYS,
    "output": _OUTPUT_KEYS,
}


@dataclass(frozen=True)
class SolverConfig:
    tol: float = DEFAULT_TOL
    grid_points: int = 100_000

    def __post_init__(self):
        if not self.tol >= 1e-12:
            raise ModelDomainError(f"solver tol must be >= 1e-12, got {self.tol}")
        if self.grid_points < 2:
            raise ModelDomainError(f"grid_points must be >= 2, got {self.grid_points}")


@dataclass(frozen=True)
class ScenarioConfig:
    name: str = "all"
    horizon: Optional[int] = None
    g: float = DEFAULT_DISCOUNT
    path: Optional[ScenarioPath] = None

    def __post_init__(self):
        if self.name not in SCENARIO_NAMES + ("all", "custom"):
            raise ModelDomainError(f"unknown scenario {self.name!r}")
        if self.horizon is not None and self.horizon not in HORIZONS and self.path is None:
            raise ModelDomainError(f"horizon must be 3 or 6, got {self.horizon}")
        if not 0.0 <= self.g <= 1.0:
            raise ModelDomainError(f"discount factor g must lie in [0, 1], got {self.g}")
        if self.name == "custom" and self.path is None:
            raise ModelDomainError("custom scenario needs c, k, beta and B series")

    def to_dict(self) -> dict:
        if self.path is not None:
            d = self.path.to_dict()
            d["name"] = self.name
            return d
        d = {"name": self.name, "g": self.g}
        if self.horizon is not None:
            d["horizon"] = self.horizon
        return d


@dataclass(frozen=True)
class OutputConfig:
    format: Optional[str] = None
    path: Optional[str] = None

    def __post_init__(self):
        if self.format is not None and self.format not in FORMATS:
            raise ModelDomainError(f"output format must be one of {FORMATS}, got {self.format!r}")


@dataclass(frozen=True)
class RunConfig:
    firm: FirmParams = BASELINE
    policy: Optional[PolicyParams] = None
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    solver: SolverConfig = field(default_factory=SolverConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    def to_dict(self) -> dict:
        d = {"firm": self.firm.to_dict()}
        if self.policy is not None:
            d["policy"] = self.policy.to_dict()
        d["scenario"] = self.scenario.to_dict()
        d["solver"] = {"tol": self.solver.tol, "grid_points": self.solver.grid_points}
        out = {k: v for k, v in (("format", self.output.format),
                                 ("path", self.output.path)) if v is not None}
        if out:
            d["output"] = out
        return d


def _number(section: str, key: str, raw) -> float:
    if isinstance(raw, bool):
        raise ConfigError(f"[{section}] {key}: expected a number, got {raw!r}")
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"[{section}] {key}: expected a number, got {raw!r}") from None


def _integer(section: str, key: str, raw) -> int:
    value = _number(section, key, raw)
    if value != int(value):
        raise ConfigError(f"[{section}] {key}: expected an integer, got {raw!r}")
    return int(value)


def _series(key: str, raw) -> list:
    if isinstance(raw, str):
        raw = [x for x in raw.replace(" ", "").split(",") if x]
    if not isinstance(raw, (list, tuple)):
        raise ConfigError(f"[scenario] {key}: expected a list of numbers")
    return [_number("scenario", key, x) for x in raw]


def from_dict(data: dict) -> RunConfig:
    """Build and validate a :class:`RunConfig` from nested sections.

    Raises
    ------
    ConfigError
        On unknown sections or keys and non-numeric values.
    ModelDomainError
        When values parse but violate a model invariant.
    """
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a mapping of sections")
    for section, body in data.items():
        if section not in _SECTIONS:
            raise ConfigError(f"unknown section [{section}]")
        if not isinstance(body, dict):
            raise ConfigError(f"section [{section}] must be a mapping")
        unknown = set(body) - set(_SECTIONS[section])
        if unknown:
            raise ConfigError(f"unknown key(s) in [{section}]: {', '.join(sorted(unknown))}")

    firm_raw = data.get("firm", {})
    firm = FirmParams(**{k: _number("firm", k, v) for k, v in firm_raw.items()})

    policy = None
    if "policy" in data:
        policy = PolicyParams(**{k: _number("policy", k, v) for k, v in data["policy"].items()})

    sc = data.get("scenario", {})
    name = str(sc.get("name", "all"))
    g = _number("scenario", "g", sc.get("g", DEFAULT_DISCOUNT))
    horizon = _integer("scenario", "horizon", sc["horizon"]) if "horizon" in sc else None
    path = None
    if name == "custom" or any(k in sc for k in ("c", "k", "beta", "B")):
        series = {k: _series(k, sc[k]) for k in ("c", "k", "beta", "B", "A") if k in sc}
        p = _number("scenario", "p", sc.get("p", firm.p))
        path = ScenarioPath.from_dict(dict(series, name=name, p=p, g=g,
                                           **({"horizon": horizon} if horizon else {})))
    scenario = ScenarioConfig(name=name, horizon=horizon, g=g, path=path)

    sv = data.get("solver", {})
    solver = SolverConfig(
        tol=_number("solver", "tol", sv.get("tol", DEFAULT_TOL)),
        grid_points=_integer("solver", "grid_points", sv.get("grid_points", 100_000)),
    )
    out = data.get("output", {})
    output = OutputConfig(format=out.get("format"), path=out.get("path"))
    return RunConfig(firm=firm, policy=policy, scenario=scenario, solver=solver, output=output)


def parse_ini(text: str) -> dict:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keys are case-sensitive (B vs beta)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    return {s: dict(parser.items(s)) for s in parser.sections()}


def load_config(path) -> RunConfig:
    """Load an INI or JSON configuration (or a JSON result document)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    stripped = text.lstrip()
    if path.suffix == ".json" or stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON config: {exc}") from None
        if isinstance(data, dict) and "config" in data:
            data = data["config"]
    else:
        data = parse_ini(text)
    return from_dict(data)
