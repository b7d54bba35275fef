"""Run configuration: flat ``key = value`` files plus command-line overrides.

One RunConfig drives every subcommand; commands declare which keys they
need.  The full effective config is echoed into every artifact (``# key =
value`` lines in CSV, a ``config`` object in JSON) and re-parses to an
identical RunConfig, so outputs are self-describing.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

from .errors import ConfigError

INT_KEYS = ("n", "n_ll", "l_min", "l_max", "omega_steps", "seed", "threads",
            "dense_cap", "basis_cap")
FLOAT_KEYS = ("g", "a", "omega", "omega_lo", "omega_hi", "tol")
STR_KEYS = ("out_dir",)
ALL_KEYS = INT_KEYS + FLOAT_KEYS + STR_KEYS


@dataclass
class RunConfig:
    """Validated run parameters; None means "not set" for optional keys."""

    n: int | None = None
    g: float | None = None
    a: float | None = None
    n_ll: int = 1
    l_min: int | None = None
    l_max: int | None = None
    omega: float | None = None
    omega_lo: float | None = None
    omega_hi: float | None = None
    omega_steps: int = 200
    tol: float = 1e-10
    seed: int = 1
    threads: int = 1
    out_dir: str = "."
    dense_cap: int = 4000
    basis_cap: int = 50_000_000

    def require(self, *keys: str) -> None:
        for key in keys:
            if getattr(self, key) is None:
                raise ConfigError(f"missing required key '{key}'")

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None:
                out[f.name] = v
        return out


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    if key in INT_KEYS:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"invalid value for '{key}': {raw!r} (need integer)")
    if key in FLOAT_KEYS:
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"invalid value for '{key}': {raw!r} (need number)")
    return raw


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Raw ``key = value`` lines to a typed mapping; '#' lines are comments."""
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        if key not in ALL_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown config key '{key}'")
        values[key] = _parse_value(key, raw)
    return values


def embedded_config(csv_text: str) -> RunConfig:
    """Re-parse the ``# key = value`` header block of an emitted CSV."""
    lines = []
    for line in csv_text.splitlines():
        if not line.startswith("#"):
            break
        lines.append(line[1:].strip())
    return make_config(parse_config_text("\n".join(lines), source="<artifact>"))


def _check_range(cond: bool, key: str, value, need: str) -> None:
    if not cond:
        raise ConfigError(f"out of range: '{key}' = {value} (need {need})")


def make_config(values: dict) -> RunConfig:
    """Typed mapping to a validated RunConfig."""
    for key in values:
        if key not in ALL_KEYS:
            raise ConfigError(f"unknown config key '{key}'")
    cfg = RunConfig(**values)

    if cfg.n is not None:
        _check_range(cfg.n >= 2, "n", cfg.n, "n >= 2")
    if cfg.g is not None:
        _check_range(cfg.g >= 0, "g", cfg.g, "g >= 0")
    if cfg.a is not None:
        _check_range(cfg.a >= 0, "a", cfg.a, "a >= 0")
    _check_range(cfg.n_ll >= 1, "n_ll", cfg.n_ll, "n_ll >= 1")
    if cfg.l_min is not None and cfg.l_max is not None:
        _check_range(cfg.l_min <= cfg.l_max, "l_min", cfg.l_min, "l_min <= l_max")
    if cfg.l_max is not None:
        _check_range(cfg.l_max >= 0, "l_max", cfg.l_max, "l_max >= 0")
    if cfg.omega is not None:
        _check_range(0 < cfg.omega < 1, "omega", cfg.omega, "0 < omega < 1")
    if cfg.omega_lo is not None:
        _check_range(0 <= cfg.omega_lo < 1, "omega_lo", cfg.omega_lo,
                     "0 <= omega_lo < 1")
    if cfg.omega_hi is not None:
        _check_range(0 < cfg.omega_hi < 1, "omega_hi", cfg.omega_hi,
                     "0 < omega_hi < 1")
    if cfg.omega_lo is not None and cfg.omega_hi is not None:
        _check_range(cfg.omega_lo < cfg.omega_hi, "omega_lo", cfg.omega_lo,
                     "omega_lo < omega_hi")
    if cfg.omega is not None and (cfg.omega_lo is not None or cfg.omega_hi is not None):
        raise ConfigError("'omega' conflicts with 'omega_lo'/'omega_hi': "
                          "set a single frequency or a range, not both")
    _check_range(cfg.omega_steps >= 2, "omega_steps", cfg.omega_steps,
                 "omega_steps >= 2")
    _check_range(cfg.tol > 0, "tol", cfg.tol, "tol > 0")
    _check_range(cfg.threads >= 1, "threads", cfg.threads, "threads >= 1")
    _check_range(cfg.dense_cap >= 1, "dense_cap", cfg.dense_cap, "dense_cap >= 1")
    _check_range(cfg.basis_cap >= 1, "basis_cap", cfg.basis_cap, "basis_cap >= 1")
    return cfg


def parse_config(path: str | Path | None = None,
                 overrides: dict | None = None) -> RunConfig:
    """Config file (optional) merged with overrides (flags win)."""
    values: dict = {}
    if path is not None:
        p = Path(path)
        try:
            text = p.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {p}: {exc}")
        values.update(parse_config_text(text, source=str(p)))
    if overrides:
        for key, raw in overrides.items():
            if key not in ALL_KEYS:
                raise ConfigError(f"unknown config key '{key}'")
            if raw is None:
                continue
            values[key] = raw if not isinstance(raw, str) else _parse_value(key, raw)
    return make_config(values)


def _format_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def effective_lines(cfg: RunConfig) -> list[str]:
    """``key = value`` lines of every set field, in declaration order."""
    return [f"{f.name} = {_format_value(getattr(cfg, f.name))}"
            for f in fields(cfg) if getattr(cfg, f.name) is not None]


def config_from_mapping(mapping: dict) -> RunConfig:
    """Rebuild a RunConfig from an artifact's embedded config object."""
    values = {key: _parse_value(key, str(v)) for key, v in mapping.items()}
    return make_config(values)
