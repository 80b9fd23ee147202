"""Configuration management for sharpfront runs."""

import os
from pathlib import Path
from typing import Any, Dict, Iterable, List, Literal, Optional, Union
import copy

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import ConfigError, UsageError
from .nonlinearity import Nonlinearity, from_config
from .solver import Boundary, Grid, SimParams, default_dt

# Load environment variables
load_dotenv()


class Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class NonlinearityConfig(Section):
    """Reaction term; only the parameters of ``kind`` are used."""

    kind: Literal["ignition", "kpp", "arrhenius", "bistable", "damped_bistable", "tabulated"] = "ignition"
    theta0: float = Field(0.3, gt=0.0, lt=1.0)
    a: float = Field(0.25, gt=0.0, lt=1.0)
    A: float = Field(1.0, gt=0.0)
    p: float = Field(1.0, ge=1.0)
    kappa: float = Field(0.1, gt=0.0)
    amplitude: float = Field(1.0, ge=0.0)
    table: Optional[List[List[float]]] = None
    declared: Literal["ignition", "kpp", "combustion", "bistable"] = "bistable"

    @field_validator("table")
    @classmethod
    def _pairs(cls, table):
        if table is not None and any(len(pair) != 2 for pair in table):
            raise ValueError("table entries must be [theta, f] pairs")
        return table

    @model_validator(mode="after")
    def _table_present(self):
        if self.kind == "tabulated" and not self.table:
            raise ValueError("kind 'tabulated' needs a table of [theta, f] pairs")
        return self

    def build(self) -> Nonlinearity:
        return from_config(self.model_dump())


class GridConfig(Section):
    half_width: float = Field(40.0, gt=0.0)
    n_cells: int = Field(1600, gt=0)

    @field_validator("n_cells")
    @classmethod
    def _even(cls, n_cells: int) -> int:
        if n_cells % 2:
            raise ValueError("n_cells must be even")
        return n_cells

    def build(self) -> Grid:
        return Grid(half_width=self.half_width, n_cells=self.n_cells)


class SimConfig(Section):
    """Time stepping; ``dt`` left empty means min(h²/4, 1/(2c))."""

    dt: Optional[float] = Field(None, gt=0.0)
    t_max: float = Field(50.0, gt=0.0)
    boundary: Boundary = Boundary.DIRICHLET
    snapshot_every: int = Field(0, ge=0)
    probe_every: int = Field(10, ge=1)
    L: float = Field(1.0, ge=0.0)
    alpha: float = Field(1.0, gt=0.0, le=1.0)

    def build(self, grid: Grid, spec: Nonlinearity, t_max: Optional[float] = None) -> SimParams:
        return SimParams(
            dt=self.dt if self.dt is not None else default_dt(grid, spec),
            t_max=t_max if t_max is not None else self.t_max,
            boundary=self.boundary,
            snapshot_every=self.snapshot_every,
            probe_every=self.probe_every,
        )


class ThresholdConfig(Section):
    L_min: float = Field(0.05, ge=0.0)
    L_max: float = Field(10.0, gt=0.0)
    gap_tol: float = Field(1e-3, gt=0.0)
    t_max: float = Field(200.0, gt=0.0)
    alpha: float = Field(1.0, gt=0.0, le=1.0)
    max_iter: int = Field(40, ge=1)
    band_width: float = Field(0.05, gt=0.0)
    window: Optional[float] = Field(None, gt=0.0)
    plateau_span: Optional[float] = Field(None, gt=0.0)

    @model_validator(mode="after")
    def _ordered(self):
        if not self.L_min < self.L_max:
            raise ValueError("L_min must be smaller than L_max")
        return self


class FrontConfig(Section):
    tol: float = Field(1e-6, gt=0.0)
    step: float = Field(1e-3, gt=0.0)


class BumpConfig(Section):
    u_min: float = Field(1e-6, gt=0.0, lt=1.0)
    tol: float = Field(1e-12, gt=0.0)
    residual_step: float = Field(0.005, gt=0.0)


class CompareConfig(Section):
    """Two reaction terms, the domination window and the initial pair."""

    f: NonlinearityConfig
    g: NonlinearityConfig
    theta1: float = Field(gt=0.0, lt=1.0)
    eps1: float = Field(gt=0.0)
    theta_max: float = Field(1.0, gt=0.0, le=1.0)
    L: float = Field(1.0, gt=0.0)
    alpha_T: float = Field(gt=0.0, le=1.0)
    alpha_S: float = Field(gt=0.0, le=1.0)
    L1: Optional[float] = Field(None, gt=0.0)
    L2: Optional[float] = Field(None, gt=0.0)
    continuity_t_max: float = Field(2.0, gt=0.0)

    @model_validator(mode="after")
    def _ordered(self):
        if self.alpha_T > self.alpha_S:
            raise ValueError("alpha_T must not exceed alpha_S")
        if (self.L1 is None) != (self.L2 is None):
            raise ValueError("L1 and L2 must be given together")
        if self.L1 is not None and not self.L1 <= self.L2:
            raise ValueError("L1 must not exceed L2")
        return self


class SweepConfig(Section):
    command: Literal["threshold", "front", "bump"] = "front"
    parameter: str = "a"
    values: List[float] = Field(default_factory=list, min_length=1)
    jobs: int = Field(1, ge=1)


class LoggingConfig(Section):
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    file: str = "logs/sharpfront.log"


class RunConfig(Section):
    """Validated run configuration; command sections are optional."""

    nonlinearity: NonlinearityConfig = Field(default_factory=NonlinearityConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    sim: SimConfig = Field(default_factory=SimConfig)
    threshold: Optional[ThresholdConfig] = None
    front: Optional[FrontConfig] = None
    bump: Optional[BumpConfig] = None
    lemma22: Optional[CompareConfig] = None
    sweep: Optional[SweepConfig] = None
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    def require(self, section: str) -> Any:
        value = getattr(self, section, None)
        if value is None:
            raise ConfigError(f"{section}: section is required for this command")
        return value

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)

    def emit(self) -> str:
        """YAML text that parses back to an identical configuration."""
        return yaml.safe_dump(self.to_dict(), sort_keys=False)

    def with_value(self, key: str, value: Any) -> "RunConfig":
        """Copy with one dotted key replaced, validated again."""
        raw = self.to_dict()
        _assign(raw, key, value)
        return validate(raw)

    @classmethod
    def parse(cls, text: str) -> "RunConfig":
        return validate(_load_yaml(text, "<text>"))


def _load_yaml(text: str, source: str) -> Dict[str, Any]:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark is not None else ""
        raise ConfigError(f"{source}: malformed YAML{where}: {getattr(exc, 'problem', exc)}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: top level must be a mapping")
    return data


def _assign(raw: Dict[str, Any], key: str, value: Any) -> None:
    parts = key.split(".")
    node = raw
    for part in parts[:-1]:
        child = node.get(part)
        if child is None:
            child = node[part] = {}
        if not isinstance(child, dict):
            raise ConfigError(f"{key}: '{part}' is not a section")
        node = child
    node[parts[-1]] = value


def validate(raw: Dict[str, Any]) -> RunConfig:
    """Validate a raw mapping, reporting the first failing field by dotted path."""
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as exc:
        messages = []
        for error in exc.errors():
            path = ".".join(str(part) for part in error["loc"]) or "<root>"
            messages.append(f"{path}: {error['msg']}")
        raise ConfigError("; ".join(messages)) from exc


class Config:
    """Configuration manager: YAML settings, environment values and overrides."""

    def __init__(self, config_file: Optional[Union[str, Path]] = None, overrides: Iterable[str] = ()):
        self.project_root = Path(__file__).parent.parent
        explicit = config_file or os.getenv("SHARPFRONT_CONFIG")
        self.config_file = Path(explicit) if explicit else self.project_root / "config" / "settings.yaml"
        self._settings = self._load_settings(required=bool(explicit))
        for item in overrides:
            self.set_override(item)

    def _load_settings(self, required: bool) -> Dict[str, Any]:
        """Load settings from YAML file."""
        try:
            with open(self.config_file, 'r') as f:
                return _load_yaml(f.read(), str(self.config_file))
        except FileNotFoundError:
            if required:
                raise ConfigError(f"{self.config_file}: config file not found")
            return self._default_settings()

    def _default_settings(self) -> Dict[str, Any]:
        """Return default settings if config file is missing."""
        return {
            "nonlinearity": {"kind": "ignition", "theta0": 0.3},
            "grid": {"half_width": 40.0, "n_cells": 1600},
            "sim": {"t_max": 50.0, "boundary": "dirichlet"},
            "logging": LoggingConfig().model_dump(),
        }

    def set_override(self, item: str) -> None:
        """Apply ``key=value``; the value is read with YAML scalar rules."""
        key, sep, text = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"override '{item}' is not of the form key=value")
        try:
            value = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigError(f"{key}: cannot parse override value '{text}'") from exc
        _assign(self._settings, key.strip(), value)

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dot notation key."""
        keys = key.split('.')
        value = self._settings

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def raw(self) -> Dict[str, Any]:
        return copy.deepcopy(self._settings)

    def run_config(self) -> RunConfig:
        return validate(self.raw())

    @property
    def output_dir(self) -> Path:
        """Default output root from the environment."""
        return Path(os.getenv("SHARPFRONT_OUTPUT_DIR", "output"))

    @property
    def debug(self) -> bool:
        """Check if debug mode is enabled."""
        return os.getenv("DEBUG", "False").lower() == "true"


# Global configuration instance
config = Config()
