"""Configuration documents: YAML parsing, preset layering, dotted-path
overrides, and schema validation with key-path error reporting.

Layering order (last writer wins): preset -> config file -> --set
overrides. A file that names no `scenario` preset starts from bare
defaults instead; an empty file means the default preset untouched.
Setting a key to null removes it.
"""

from __future__ import annotations

import copy
from typing import Any, Optional

import yaml

from .presets import DEFAULT_PRESET, preset_config


class ConfigError(Exception):
    """Configuration rejected; message carries the offending key path."""


BARE_DEFAULTS: dict = {
    "title": "unnamed scenario",
    "grid": {"cells": [256], "length": [100.0], "origin": [0.0]},
    "boundary": {"temperature": "dirichlet_ambient", "fuel": "neumann"},
    "params": {},          # ModelParameters defaults apply
    "combustion": "arrhenius",
    "advection": {"kind": "none"},
    "initial": {"kind": "hot_strip", "interval": [0.0, 10.0],
                "peak": 900.0, "fuel": 1.0},
    "scheme": {},           # SchemeConfig defaults apply (upwind1/euler)
    "run": {"t_end": 10.0, "seed": 0},
    "output": {"interval": None, "fields": ["T"], "formats": ["csv"],
               "figures": True},
}

_TOP_KEYS = {"scenario", "title", "grid", "boundary", "params", "combustion",
             "advection", "two_phase", "moisture", "terrain", "initial",
             "scheme", "run", "output", "tw"}

_SECTION_KEYS = {
    "grid": {"cells", "length", "origin"},
    "boundary": {"temperature", "fuel"},
    "params": {"rho", "c", "k", "epsilon", "delta", "sigma", "h", "T_inf",
               "S", "A", "T_ac", "T_bar", "A_L", "Psi_const"},
    "advection": {"kind", "velocity", "wind", "beta", "gamma"},
    "two_phase": {"R_f", "rho_a", "rho_f", "cp_a", "cp_f"},
    "moisture": {"M", "c_w", "L_w", "T_w", "cp_f0", "Y_tol"},
    "terrain": {"kind", "slope", "height", "center", "radius"},
    "initial": {"kind", "interval", "center", "radius", "peak", "fuel",
                "fuel_noise", "fuel_raster"},
    "scheme": {"spatial", "temporal", "cfl", "fuel_update", "dt_max"},
    "run": {"t_end", "seed", "reduced_bound"},
    "output": {"interval", "fields", "formats", "figures", "front"},
    "tw": {"v", "Y0", "bracket", "n_scan", "decay_factor", "rtol"},
}
_FRONT_KEYS = {"threshold", "directions", "window"}


def parse_config_text(text: str) -> dict:
    """YAML text -> raw mapping; parse errors keep their line/column."""
    try:
        raw = yaml.safe_load(text)
    except yaml.MarkedYAMLError as err:
        mark = err.problem_mark
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise ConfigError(f"config parse error{where}: {err.problem}") from err
    except yaml.YAMLError as err:
        raise ConfigError(f"config parse error: {err}") from err
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ConfigError("config document must be a mapping of sections")
    return raw


def deep_merge(base: dict, override: dict) -> dict:
    """Recursive dict merge; null values in `override` delete keys."""
    out = copy.deepcopy(base)
    for key, value in override.items():
        if value is None:
            out.pop(key, None)
        elif isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = deep_merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def parse_override(expr: str) -> tuple[list[str], Any]:
    """'a.b.c=value' -> (path, YAML-parsed value)."""
    if "=" not in expr:
        raise ConfigError(f"override {expr!r} is not of the form key.path=value")
    path, _, raw_value = expr.partition("=")
    path = path.strip()
    if not path:
        raise ConfigError(f"override {expr!r} has an empty key path")
    try:
        value = yaml.safe_load(raw_value) if raw_value.strip() else None
    except yaml.YAMLError as err:
        raise ConfigError(f"override {expr!r}: unparsable value: {err}") from err
    return path.split("."), value


def apply_override(cfg: dict, path: list[str], value: Any) -> dict:
    nested: Any = value
    for key in reversed(path):
        nested = {key: nested}
    return deep_merge(cfg, nested)


def _reject_unknown_keys(cfg: dict) -> None:
    for key in cfg:
        if key not in _TOP_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        section = cfg[key]
        allowed = _SECTION_KEYS.get(key)
        if allowed is None:
            continue
        if not isinstance(section, dict):
            raise ConfigError(f"{key}: expected a mapping")
        for sub in section:
            if sub not in allowed:
                raise ConfigError(f"unknown config key {key}.{sub!r}")
        if key == "output" and isinstance(section.get("front"), dict):
            for sub in section["front"]:
                if sub not in _FRONT_KEYS:
                    raise ConfigError(f"unknown config key output.front.{sub!r}")


def _need(cfg: dict, section: str, key: str, path: Optional[str] = None):
    try:
        return cfg[section][key]
    except KeyError:
        raise ConfigError(f"missing required key {path or f'{section}.{key}'}") from None


def _as_float(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _as_float_list(value, path: str, length: Optional[int] = None) -> list[float]:
    if not isinstance(value, (list, tuple)):
        raise ConfigError(f"{path}: expected a list of numbers, got {value!r}")
    if length is not None and len(value) != length:
        raise ConfigError(f"{path}: expected {length} entries, got {len(value)}")
    return [_as_float(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _as_choice(value, path: str, choices: set[str]) -> str:
    if value not in choices:
        raise ConfigError(f"{path}: expected one of {sorted(choices)}, got {value!r}")
    return value


def _validate_semantics(cfg: dict) -> None:
    cells = _need(cfg, "grid", "cells")
    if not isinstance(cells, list) or not cells or len(cells) > 2 or \
            any(not isinstance(n, int) or isinstance(n, bool) or n < 1 for n in cells):
        raise ConfigError("grid.cells: expected a list of 1 or 2 positive integers")
    dim = len(cells)
    _as_float_list(_need(cfg, "grid", "length"), "grid.length", dim)
    if "origin" in cfg["grid"]:
        _as_float_list(cfg["grid"]["origin"], "grid.origin", dim)

    _as_choice(cfg["boundary"].get("temperature", "dirichlet_ambient"),
               "boundary.temperature", {"dirichlet_ambient", "neumann"})
    _as_choice(cfg["boundary"].get("fuel", "neumann"), "boundary.fuel", {"neumann"})

    combustion = _as_choice(cfg.get("combustion", "arrhenius"), "combustion",
                            {"arrhenius", "linearized_memory", "constant"})

    adv = cfg.get("advection", {"kind": "none"})
    kind = _as_choice(adv.get("kind", "none"), "advection.kind",
                      {"none", "direct", "two_phase", "virtual_wind"})
    if kind == "direct":
        _as_float_list(_need(cfg, "advection", "velocity"), "advection.velocity", dim)
    elif "velocity" in adv:
        raise ConfigError("advection.velocity: only allowed for advection.kind=direct")
    if kind in ("two_phase", "virtual_wind"):
        _as_float_list(_need(cfg, "advection", "wind"), "advection.wind", dim)
    elif "wind" in adv:
        raise ConfigError("advection.wind: requires a wind-driven advection.kind")
    if kind == "two_phase":
        if "two_phase" not in cfg:
            raise ConfigError("advection.kind=two_phase requires a two_phase section")
        if "terrain" in cfg or "gamma" in adv or "beta" in adv:
            raise ConfigError("advection: two-phase and virtual-wind sources "
                              "cannot both be configured")
    elif "two_phase" in cfg:
        raise ConfigError("two_phase: only allowed with advection.kind=two_phase")
    if kind == "virtual_wind":
        if "terrain" not in cfg:
            raise ConfigError("advection.kind=virtual_wind requires a terrain section")
        terrain_kind = _as_choice(cfg["terrain"].get("kind", "flat"), "terrain.kind",
                                  {"flat", "incline", "gaussian_hill"})
        if terrain_kind == "incline":
            _as_float_list(_need(cfg, "terrain", "slope"), "terrain.slope", dim)
        if terrain_kind == "gaussian_hill":
            _as_float(_need(cfg, "terrain", "height"), "terrain.height")
            _as_float_list(_need(cfg, "terrain", "center"), "terrain.center", dim)
            if _as_float(_need(cfg, "terrain", "radius"), "terrain.radius") <= 0:
                raise ConfigError("terrain.radius: must be > 0")
        if "beta" in adv:
            _as_float(adv["beta"], "advection.beta")
        if "gamma" in adv:
            _as_float(adv["gamma"], "advection.gamma")
    elif "terrain" in cfg:
        raise ConfigError("terrain: only allowed with advection.kind=virtual_wind")

    initial = cfg.get("initial", {})
    ic_kind = _as_choice(initial.get("kind", "hot_strip"), "initial.kind",
                         {"hot_strip", "hotspot_gaussian", "uniform_unit"})
    if ic_kind == "hot_strip":
        interval = _as_float_list(_need(cfg, "initial", "interval"),
                                  "initial.interval", 2)
        if interval[0] >= interval[1]:
            raise ConfigError("initial.interval: expected [lo, hi] with lo < hi")
        _as_float(_need(cfg, "initial", "peak"), "initial.peak")
    if ic_kind == "hotspot_gaussian":
        _as_float_list(_need(cfg, "initial", "center"), "initial.center", dim)
        if _as_float(_need(cfg, "initial", "radius"), "initial.radius") <= 0:
            raise ConfigError("initial.radius: must be > 0")
        _as_float(_need(cfg, "initial", "peak"), "initial.peak")
    if "fuel" in initial:
        if _as_float(initial["fuel"], "initial.fuel") <= 0.0:
            raise ConfigError("initial.fuel: must be > 0")
    if "fuel_noise" in initial:
        noise = _as_float(initial["fuel_noise"], "initial.fuel_noise")
        if not 0.0 <= noise < 1.0:
            raise ConfigError("initial.fuel_noise: must lie in [0, 1)")

    if combustion == "linearized_memory" and ic_kind == "uniform_unit":
        raise ConfigError("combustion=linearized_memory needs a hot-spot or "
                          "hot-strip ignition to seed the burn memory")

    scheme = cfg.get("scheme", {})
    if "spatial" in scheme:
        _as_choice(scheme["spatial"], "scheme.spatial", {"upwind1", "weno5"})
    if "temporal" in scheme:
        _as_choice(scheme["temporal"], "scheme.temporal", {"euler", "ssprk3"})
    if "cfl" in scheme and not 0.0 < _as_float(scheme["cfl"], "scheme.cfl") <= 1.0:
        raise ConfigError("scheme.cfl: must lie in (0, 1]")
    if "fuel_update" in scheme:
        _as_choice(scheme["fuel_update"], "scheme.fuel_update",
                   {"coupled_explicit", "exact_exponential"})
    if "dt_max" in scheme and _as_float(scheme["dt_max"], "scheme.dt_max") <= 0.0:
        raise ConfigError("scheme.dt_max: must be > 0")

    t_end = _as_float(_need(cfg, "run", "t_end"), "run.t_end")
    if t_end < 0.0:
        raise ConfigError("run.t_end: must be >= 0")

    output = cfg.get("output", {})
    if output.get("interval") is not None:
        if _as_float(output["interval"], "output.interval") <= 0.0:
            raise ConfigError("output.interval: must be > 0")
    for i, name in enumerate(output.get("fields", [])):
        _as_choice(name, f"output.fields[{i}]", {"T", "Y", "theta"})
    for i, name in enumerate(output.get("formats", [])):
        _as_choice(name, f"output.formats[{i}]", {"csv", "pgm"})
    front = output.get("front")
    if front is not None:
        _as_float(_need({"output": front}, "output", "threshold",
                        path="output.front.threshold"), "output.front.threshold")
        directions = front.get("directions", ["+x"])
        allowed = {"+x", "-x"} | ({"+y", "-y"} if dim == 2 else set())
        for i, d in enumerate(directions):
            _as_choice(d, f"output.front.directions[{i}]", allowed)
        if front.get("window") is not None:
            window = _as_float_list(front["window"], "output.front.window", 2)
            if window[0] >= window[1]:
                raise ConfigError("output.front.window: expected [lo, hi] with lo < hi")

    if "tw" in cfg:
        tw = cfg["tw"]
        bracket = _as_float_list(tw.get("bracket", [0.02, 8.0]), "tw.bracket", 2)
        if bracket[0] >= bracket[1]:
            raise ConfigError("tw.bracket: expected [c_lo, c_hi] with c_lo < c_hi")


def resolve_config(raw: dict, overrides: Optional[list[str]] = None) -> dict:
    """Layer a raw config over its base, apply overrides, and validate."""
    _reject_unknown_keys(raw)
    if "scenario" in raw:
        name = raw["scenario"]
        if not isinstance(name, str):
            raise ConfigError("scenario: expected a preset name")
        try:
            base = preset_config(name)
        except KeyError as err:
            raise ConfigError(str(err)) from None
    elif not raw:
        name = DEFAULT_PRESET
        base = preset_config(name)
    else:
        name = None
        base = copy.deepcopy(BARE_DEFAULTS)
    body = {k: v for k, v in raw.items() if k != "scenario"}
    cfg = deep_merge(base, body)
    for expr in overrides or []:
        path, value = parse_override(expr)
        if path[0] not in _TOP_KEYS:
            raise ConfigError(f"override {'.'.join(path)}: unknown config key {path[0]!r}")
        cfg = apply_override(cfg, path, value)
    cfg = deep_merge(BARE_DEFAULTS, cfg)  # backfill universal defaults
    if name is not None:
        cfg["scenario"] = name
    _reject_unknown_keys(cfg)
    _validate_semantics(cfg)
    return cfg


def load_config(path: str, overrides: Optional[list[str]] = None) -> dict:
    """Read a config file (or a manifest wrapping one) and resolve it."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = parse_config_text(fh.read())
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    if "config" in raw and isinstance(raw["config"], dict):
        raw = raw["config"]  # manifests embed their resolved configuration
    return resolve_config(raw, overrides)
