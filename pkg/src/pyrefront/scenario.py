"""Scenario assembly: resolved configuration -> grids, fields, closures,
and the advection velocity actually used by the solver."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import physics
from .config import ConfigError
from .fields import BoundaryCondition, BoundaryKind, Field, FieldState, Grid
from .integrate import FuelUpdate, SchemeConfig, SpatialScheme, TemporalScheme
from .operators import terrain_gradient
from .physics import (AdvectionParameters, CombustionModel, ModelParameters,
                      MoistureParameters, TwoPhaseParameters)


@dataclass(frozen=True)
class FrontPlan:
    threshold: float
    directions: tuple[str, ...]
    window: Optional[tuple[float, float]]


@dataclass(frozen=True)
class OutputPlan:
    interval: Optional[float]
    fields: tuple[str, ...]
    formats: tuple[str, ...]
    figures: bool
    front: Optional[FrontPlan]


@dataclass
class Scenario:
    """Everything `run` needs, resolved and validated."""

    title: str
    grid: Grid
    bc_T: BoundaryCondition
    bc_Y: BoundaryCondition
    params: ModelParameters
    combustion: CombustionModel
    scheme: SchemeConfig
    initial: FieldState
    velocity: Optional[tuple]
    moisture: Optional[MoistureParameters]
    t_end: float
    seed: int
    reduced_bound: bool
    output: OutputPlan
    ignition_center: tuple[float, ...]
    config: dict  # resolved document, echoed into the manifest


def _build_grid(cfg: dict) -> Grid:
    cells = cfg["grid"]["cells"]
    length = cfg["grid"]["length"]
    origin = cfg["grid"].get("origin", [0.0] * len(cells))
    spacing = tuple(float(L) / n for L, n in zip(length, cells))
    return Grid(shape=tuple(cells), spacing=spacing, origin=tuple(float(o) for o in origin))


def _build_params(cfg: dict) -> ModelParameters:
    try:
        return ModelParameters(**{k: float(v) for k, v in cfg.get("params", {}).items()})
    except (TypeError, ValueError) as err:
        raise ConfigError(str(err)) from err


def _build_scheme(cfg: dict) -> SchemeConfig:
    section = cfg.get("scheme", {})
    kwargs = {}
    if "spatial" in section:
        kwargs["spatial"] = SpatialScheme(section["spatial"])
    if "temporal" in section:
        kwargs["temporal"] = TemporalScheme(section["temporal"])
    if "cfl" in section:
        kwargs["cfl"] = float(section["cfl"])
    if "fuel_update" in section:
        kwargs["fuel_update"] = FuelUpdate(section["fuel_update"])
    if "dt_max" in section:
        kwargs["dt_max"] = float(section["dt_max"])
    try:
        return SchemeConfig(**kwargs)
    except ValueError as err:
        raise ConfigError(str(err)) from err


def _initial_temperature(cfg: dict, grid: Grid, p: ModelParameters
                         ) -> tuple[np.ndarray, tuple[float, ...]]:
    """Interior T0 plus the ignition center used for front slicing."""
    section = cfg["initial"]
    kind = section["kind"]
    mesh = grid.meshgrid()
    if kind == "uniform_unit":
        return np.ones(grid.shape), tuple(float(np.mean(grid.coords(a)))
                                          for a in range(grid.dim))
    peak = float(section["peak"])
    if peak < p.T_inf:
        raise ConfigError("initial.peak: must be >= params.T_inf")
    if kind == "hot_strip":
        lo, hi = (float(v) for v in section["interval"])
        T0 = np.where((mesh[0] >= lo) & (mesh[0] <= hi), peak, p.T_inf)
        center = [0.5 * (lo + hi)]
        for a in range(1, grid.dim):
            center.append(float(np.mean(grid.coords(a))))
        return T0, tuple(center)
    # hotspot_gaussian
    center = tuple(float(v) for v in section["center"])
    radius = float(section["radius"])
    r2 = sum((m - c) ** 2 for m, c in zip(mesh, center))
    return p.T_inf + (peak - p.T_inf) * np.exp(-r2 / radius**2), center


def _initial_fuel(cfg: dict, grid: Grid, seed: int) -> np.ndarray:
    section = cfg["initial"]
    if section.get("kind") == "uniform_unit":
        return np.ones(grid.shape)
    if "fuel_raster" in section:
        try:
            raster = np.loadtxt(section["fuel_raster"], delimiter=",")
        except OSError as err:
            raise ConfigError(f"initial.fuel_raster: cannot read: {err}") from err
        raster = np.atleast_1d(raster)
        if raster.shape != grid.shape:
            raise ConfigError(f"initial.fuel_raster: shape {raster.shape} does not "
                              f"match grid {grid.shape}")
        Y0 = raster.astype(float)
    else:
        Y0 = np.full(grid.shape, float(section.get("fuel", 1.0)))
    noise = float(section.get("fuel_noise", 0.0))
    if noise > 0.0:
        rng = np.random.default_rng(seed)
        Y0 = Y0 * (1.0 + noise * rng.uniform(-1.0, 1.0, size=grid.shape))
    if np.any(Y0 <= 0.0):
        raise ConfigError("initial fuel must be > 0 everywhere")
    return Y0


def _terrain_field(cfg: dict, grid: Grid) -> Field:
    terrain = cfg["terrain"]
    kind = terrain.get("kind", "flat")
    if kind == "flat":
        return Field.full(grid, 0.0)
    if kind == "incline":
        slope = [float(s) for s in terrain["slope"]]
        return Field.sample(grid, lambda *mesh: sum(s * m for s, m in zip(slope, mesh)))
    height = float(terrain["height"])
    center = [float(c) for c in terrain["center"]]
    radius = float(terrain["radius"])
    return Field.sample(grid, lambda *mesh: height * np.exp(
        -sum((m - c) ** 2 for m, c in zip(mesh, center)) / radius**2))


def _build_velocity(cfg: dict, grid: Grid) -> tuple[Optional[tuple],
                                                    Optional[TwoPhaseParameters]]:
    adv = cfg.get("advection", {"kind": "none"})
    kind = adv.get("kind", "none")
    if kind == "none":
        return None, None
    if kind == "direct":
        return tuple(float(v) for v in adv["velocity"]), None
    if kind == "two_phase":
        section = cfg["two_phase"]
        try:
            tp = TwoPhaseParameters(**{k: float(v) for k, v in section.items()})
        except (TypeError, ValueError) as err:
            raise ConfigError(str(err)) from err
        wind = [float(w) for w in adv["wind"]]
        return physics.bulk_velocity(wind, tp), tp
    # virtual_wind: precompute the terrain slope once per scenario
    z = _terrain_field(cfg, grid)
    grad_z = terrain_gradient(z)
    wind = [float(w) for w in adv["wind"]]
    try:
        ap = AdvectionParameters(beta=float(adv.get("beta", 1.0)),
                                 gamma=float(adv.get("gamma", 0.0)))
    except ValueError as err:
        raise ConfigError(str(err)) from err
    return physics.virtual_wind(wind, grad_z, ap.beta, ap.gamma), None


def build_scenario(cfg: dict) -> Scenario:
    """Resolved config document -> runnable scenario.

    Raises ConfigError with the offending key path on any violation.
    """
    grid = _build_grid(cfg)
    params = _build_params(cfg)
    scheme = _build_scheme(cfg)
    combustion = CombustionModel(cfg.get("combustion", "arrhenius"))
    seed = int(cfg["run"].get("seed", 0))

    moisture = None
    if "moisture" in cfg:
        try:
            moisture = MoistureParameters(**{k: float(v)
                                             for k, v in cfg["moisture"].items()})
        except (TypeError, ValueError) as err:
            raise ConfigError(str(err)) from err
        if not params.T_inf < moisture.T_w < params.T_bar:
            raise ConfigError("moisture.T_w: requires T_inf < T_w < T_bar")

    T0_values, ignition_center = _initial_temperature(cfg, grid, params)
    if np.any(T0_values < params.T_inf):
        raise ConfigError("initial temperature must be >= params.T_inf everywhere")
    Y0_values = _initial_fuel(cfg, grid, seed)

    T0 = Field.from_interior(grid, T0_values, ghost_value=params.T_inf)
    Y0 = Field.from_interior(grid, Y0_values, ghost_value=0.0)
    theta0 = T0.copy() if combustion.needs_memory else None

    velocity, _ = _build_velocity(cfg, grid)

    bc_map = {"dirichlet_ambient": BoundaryKind.DIRICHLET_AMBIENT,
              "neumann": BoundaryKind.NEUMANN_ZERO_FLUX}
    bc_T = BoundaryCondition.uniform(bc_map[cfg["boundary"]["temperature"]], grid.dim)
    bc_Y = BoundaryCondition.neumann(grid.dim)

    out = cfg.get("output", {})
    front_cfg = out.get("front")
    front = None
    if front_cfg is not None:
        window = front_cfg.get("window")
        front = FrontPlan(threshold=float(front_cfg["threshold"]),
                          directions=tuple(front_cfg.get("directions", ["+x"])),
                          window=tuple(float(w) for w in window) if window else None)
    plan = OutputPlan(
        interval=float(out["interval"]) if out.get("interval") is not None else None,
        fields=tuple(out.get("fields", ["T"])),
        formats=tuple(out.get("formats", ["csv"])),
        figures=bool(out.get("figures", True)),
        front=front)

    return Scenario(
        title=str(cfg.get("title", "unnamed scenario")),
        grid=grid, bc_T=bc_T, bc_Y=bc_Y,
        params=params, combustion=combustion, scheme=scheme,
        initial=FieldState(T0, Y0, theta0),
        velocity=velocity, moisture=moisture,
        t_end=float(cfg["run"]["t_end"]), seed=seed,
        reduced_bound=bool(cfg["run"].get("reduced_bound", False)),
        output=plan, ignition_center=ignition_center, config=cfg)


REDUCED_PRESET_VALUES = {"rho": 1.0, "c": 1.0, "k": 1.0, "A": (0.0, 1.0),
                         "S": 1.0, "T_ac": 1.0, "epsilon": 0.0, "T_bar": 0.0,
                         "T_inf": 0.0}


def check_reduced_preset(scenario: Scenario) -> None:
    """Reject scenarios that claim the reduced nondimensional setup but
    deviate from it (h stays free; A = 0 switches combustion off for
    pure-decay diagnostics; advection must be off)."""
    for name, value in REDUCED_PRESET_VALUES.items():
        allowed = value if isinstance(value, tuple) else (value,)
        actual = getattr(scenario.params, name)
        if actual not in allowed:
            raise ConfigError(f"reduced preset requires params.{name} in "
                              f"{allowed}, got {actual}")
    if scenario.velocity is not None and any(
            np.any(np.asarray(v) != 0.0) for v in scenario.velocity):
        raise ConfigError("reduced preset requires zero advection velocity")
    if scenario.moisture is not None:
        raise ConfigError("reduced preset does not admit a moisture model")
