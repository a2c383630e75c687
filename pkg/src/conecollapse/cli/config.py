"""Run configuration: built-in defaults, INI file, then command-line flags."""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from conecollapse.errors import DomainError


class ConfigError(DomainError):
    """Invalid or inconsistent run configuration (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    alpha: float = 5.0 / 6.0
    rho0: float | None = None
    E0: float = 1.0
    M: float = 1.0
    r: float = 5.0
    eps_min: float = 1e-3
    eps_max: float = 10.0
    points_per_decade: int = 64
    lmax: int = 50
    paper_y_cutoff: bool = False
    n_from: int = 1
    n_to: int = 8
    threads: int = 1
    out_dir: str = "out"
    format: str = "csv"
    preset: str | None = None

    def validate(self) -> "RunConfig":
        if not (0.0 < self.alpha < 1.0):
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.rho0 is not None and not self.rho0 > 0:
            raise ConfigError("rho0 must be positive")
        if self.E0 <= 0 or self.M <= 0:
            raise ConfigError("E0 and M must be positive")
        if self.r < 1.0:
            raise ConfigError("r must be >= 1")
        if not (0.0 < self.eps_min < self.eps_max):
            raise ConfigError("need 0 < eps_min < eps_max")
        if self.points_per_decade < 1:
            raise ConfigError("points_per_decade must be >= 1")
        if self.lmax < 1:
            raise ConfigError("lmax must be >= 1")
        if self.n_from < 1 or self.n_to < self.n_from:
            raise ConfigError("need 1 <= n_from <= n_to")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if self.format not in ("csv", "csv+svg"):
            raise ConfigError("format must be csv or csv+svg")
        return self

    def echo(self) -> dict[str, object]:
        """Settings recorded in CSV headers; the thread count is left out so
        outputs do not depend on it."""
        out = {}
        for f in fields(self):
            if f.name in ("threads", "out_dir"):
                continue
            v = getattr(self, f.name)
            out[f.name] = "none" if v is None else str(v)
        return out


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(name: str, raw: str):
    kind = _TYPES[name]
    raw = raw.strip()
    try:
        if kind == "bool":
            low = raw.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "float | None":
            return None if raw.lower() in ("", "none") else float(raw)
        if kind == "str | None":
            return None if raw.lower() in ("", "none") else raw
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {name}: {raw!r}") from exc


def read_config_file(path: str | os.PathLike, section: str) -> dict[str, object]:
    """Keys from [common] then [<section>]; unknown keys are an error."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    parser = configparser.ConfigParser()
    try:
        parser.read(p)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {p}: {exc}") from exc
    values: dict[str, object] = {}
    for sec in ("common", section):
        if not parser.has_section(sec):
            continue
        for key, raw in parser.items(sec, raw=True):
            name = key.replace("-", "_")
            if name not in _TYPES:
                raise ConfigError(f"unknown config key [{sec}] {key}")
            values[name] = _coerce(name, raw)
    return values


def resolve_threads(flag: int | None) -> int | None:
    if flag is not None:
        return flag
    env = os.environ.get("CONECOLLAPSE_THREADS")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigError(f"CONECOLLAPSE_THREADS is not an integer: {env!r}") from exc
    return None


def build_config(
    section: str,
    flags: dict[str, object],
    config_file: str | None = None,
    preset: dict[str, object] | None = None,
) -> RunConfig:
    """Defaults < preset < config file < flags (None flags are ignored)."""
    cfg = RunConfig()
    if preset:
        cfg = replace(cfg, **preset)
    if config_file:
        cfg = replace(cfg, **read_config_file(config_file, section))
    given = {k: v for k, v in flags.items() if v is not None and k in _TYPES}
    cfg = replace(cfg, **given)
    return cfg.validate()
