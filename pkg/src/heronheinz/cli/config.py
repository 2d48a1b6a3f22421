"""Suite configuration: defaults, JSON loading and validation."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ConfigError, HeronHeinzError
from ..norms import TEST_NORMS, NormKind

__all__ = ["SuiteConfig", "load_config", "DEFAULT_SEED"]

DEFAULT_SEED = 20240601
GRID_FIELDS = ("nu_grid", "alpha_grid", "r_grid", "s_grid", "lambda_grid")
MAX_DIM = 16


def _grid(value, name):
    if value is None:
        return None
    try:
        g = tuple(float(v) for v in value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a list of numbers", param=name) from None
    if not g:
        raise ConfigError(f"{name} must not be empty", param=name)
    if not all(np.isfinite(g)):
        raise ConfigError(f"{name} must contain finite numbers only", param=name)
    return g


def _norm(value) -> NormKind:
    if isinstance(value, NormKind):
        return value
    try:
        return NormKind.parse(str(value))
    except HeronHeinzError as exc:
        raise ConfigError(f"invalid norm {value!r}: {exc}", param="norms") from None


@dataclass(frozen=True)
class SuiteConfig:
    """What to run. A grid left as ``None`` means each suite's own default grid."""

    suites: tuple = ("all",)
    dims: tuple = (2, 3, 4, 6)
    trials: int = 1000
    seed: int = DEFAULT_SEED
    norms: tuple = TEST_NORMS
    nu_grid: tuple | None = None
    alpha_grid: tuple | None = None
    r_grid: tuple | None = None
    s_grid: tuple | None = None
    lambda_grid: tuple | None = None
    spectrum_bounds: tuple = (0.1, 10.0)
    tolerance_scale: float = 1.0

    def __post_init__(self):
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        suites = (self.suites,) if isinstance(self.suites, str) else tuple(self.suites)
        if not suites or not all(isinstance(s, str) for s in suites):
            raise ConfigError("suites must be a non-empty list of names", param="suites")
        set_("suites", suites)

        try:
            dims = tuple(int(d) for d in self.dims)
        except (TypeError, ValueError):
            raise ConfigError("dims must be a list of integers", param="dims") from None
        if not dims or any(not 1 <= d <= MAX_DIM for d in dims) or any(int(d) != d for d in self.dims):
            raise ConfigError(f"dims must be a non-empty list of integers in [1, {MAX_DIM}]", param="dims")
        set_("dims", dims)

        if isinstance(self.trials, bool) or int(self.trials) != self.trials or self.trials < 1:
            raise ConfigError("trials must be a positive integer", param="trials")
        set_("trials", int(self.trials))
        if isinstance(self.seed, bool) or int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be an integer in [0, 2^64)", param="seed")
        set_("seed", int(self.seed))

        norms = tuple(_norm(k) for k in ((self.norms,) if isinstance(self.norms, (str, NormKind)) else self.norms))
        if not norms:
            raise ConfigError("norms must not be empty", param="norms")
        set_("norms", norms)

        for name in GRID_FIELDS:
            set_(name, _grid(getattr(self, name), name))

        try:
            m, M = (float(v) for v in self.spectrum_bounds)
        except (TypeError, ValueError):
            raise ConfigError("spectrum_bounds must be a pair (m, M)", param="spectrum_bounds") from None
        if not (0 < m <= M and np.isfinite(M)):
            raise ConfigError("spectrum_bounds must satisfy 0 < m <= M < inf", param="spectrum_bounds")
        set_("spectrum_bounds", (m, M))

        try:
            scale = float(self.tolerance_scale)
        except (TypeError, ValueError):
            raise ConfigError("tolerance_scale must be a number", param="tolerance_scale") from None
        if not (scale > 0 and np.isfinite(scale)):
            raise ConfigError("tolerance_scale must be finite and positive", param="tolerance_scale")
        set_("tolerance_scale", scale)

    def replace(self, **changes) -> "SuiteConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        out = {}
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if f.name == "norms":
                v = [str(k) for k in v]
            elif isinstance(v, tuple):
                v = list(v)
            out[f.name] = v
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SuiteConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}", param=unknown[0])
        return cls(**data)


def load_config(path) -> SuiteConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None
    return SuiteConfig.from_dict(data)
