"""Semi-discrete right-hand side of the coupled temperature/fuel system and
explicit steppers (forward Euler, three-stage SSP Runge-Kutta) under a
three-mechanism CFL rule."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import physics
from .fields import BoundaryCondition, Field, FieldState, fill_ghosts
from .operators import advect_upwind, advect_weno5, diffusion_variable_K
from .physics import CombustionModel, ModelParameters, MoistureParameters


class SpatialScheme(Enum):
    UPWIND1 = "upwind1"
    WENO5 = "weno5"


class TemporalScheme(Enum):
    EULER = "euler"
    SSPRK3 = "ssprk3"


class FuelUpdate(Enum):
    COUPLED_EXPLICIT = "coupled_explicit"
    EXACT_EXPONENTIAL = "exact_exponential"


@dataclass(frozen=True)
class SchemeConfig:
    spatial: SpatialScheme = SpatialScheme.UPWIND1
    temporal: TemporalScheme = TemporalScheme.EULER
    cfl: float = 0.4
    fuel_update: FuelUpdate = FuelUpdate.COUPLED_EXPLICIT
    dt_max: float = math.inf

    def __post_init__(self) -> None:
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"scheme.cfl must lie in (0, 1], got {self.cfl}")
        if self.dt_max <= 0.0:
            raise ValueError(f"scheme.dt_max must be > 0, got {self.dt_max}")


@dataclass
class RhsOutput:
    """Tendencies plus the reaction-rate field they were built from."""

    dT: np.ndarray
    dY: np.ndarray
    psi: np.ndarray


class DivergenceError(RuntimeError):
    """A field stopped being finite; carries where and (if known) when."""

    def __init__(self, what: str, location: tuple, step: Optional[int] = None):
        self.what = what
        self.location = location
        self.step = step
        at = f" at step {step}" if step is not None else ""
        super().__init__(f"non-finite {what}{at}, first at cell {location}")


def _first_bad_cell(values: np.ndarray) -> tuple:
    return tuple(int(i) for i in np.argwhere(~np.isfinite(values))[0])


def _first_true_cell(mask: np.ndarray) -> tuple:
    return tuple(int(i) for i in np.argwhere(mask)[0])


@dataclass
class AdrRhs:
    """Assembled right-hand side of the coupled system on one scenario.

    dT/dt = -v.grad(T) + (div[K(T) grad T] - h (T - T_inf) + rho psi S Y)
            / (rho c_eff)
    dY/dt = -psi Y

    Calling it fills the temperature ghosts (the only ghost-dependent
    ingredient) and returns interior tendencies.
    """

    params: ModelParameters
    combustion: CombustionModel
    scheme: SchemeConfig
    bc_T: BoundaryCondition
    velocity: Optional[tuple] = None
    moisture: Optional[MoistureParameters] = None

    def __call__(self, state: FieldState) -> RhsOutput:
        p = self.params
        fill_ghosts(state.T, self.bc_T, ambient=p.T_inf)
        T = state.T.interior
        Y = state.Y.interior
        theta = state.theta.interior if state.theta is not None else None
        # a state the closures cannot evaluate is a blown-up run, not a usage bug
        bad = ~np.isfinite(T) | (T < 0.0)
        if np.any(bad):
            raise DivergenceError("temperature state", _first_true_cell(bad))

        K = Field(state.grid, physics.diffusivity(state.T.data, p))
        diffusion = diffusion_variable_K(state.T, K)

        psi = physics.reaction_rate(self.combustion, T, p, theta=theta)
        if self.moisture is not None:
            c_eff = physics.effective_specific_heat(T, Y, self.moisture, p.T_bar, p.T_inf)
        else:
            c_eff = p.c
        dT = diffusion / (p.rho * c_eff) + physics.energy_source(T, Y, psi, p, c_eff=c_eff)

        if self.velocity is not None:
            if self.scheme.spatial is SpatialScheme.WENO5:
                dT -= advect_weno5(state.T, self.velocity)
            else:
                dT -= advect_upwind(state.T, self.velocity)

        dY = -psi * Y
        if not np.all(np.isfinite(dT)):
            raise DivergenceError("temperature tendency", _first_bad_cell(dT))
        if not np.all(np.isfinite(dY)):
            raise DivergenceError("fuel tendency", _first_bad_cell(dY))
        return RhsOutput(dT=dT, dY=dY, psi=psi)

    def max_reaction_rate(self, state: FieldState) -> float:
        theta = state.theta.interior if state.theta is not None else None
        psi = physics.reaction_rate(self.combustion, state.T.interior,
                                    self.params, theta=theta)
        return float(np.max(psi))


def step_fuel_exact(Y, psi, dt: float):
    """Frozen-rate fuel update Y * exp(-psi * dt); exact for constant psi."""
    psi = np.asarray(psi, dtype=float)
    if np.any(psi < 0.0):
        raise ValueError("reaction rate must be >= 0")
    if isinstance(Y, Field):
        out = Y.copy()
        out.interior[...] = Y.interior * np.exp(-psi * dt)
        return out
    return np.asarray(Y, dtype=float) * np.exp(-psi * dt)


def _euler_map(state: FieldState, dt: float, rhs,
               fuel_update: FuelUpdate) -> tuple[FieldState, int]:
    """One forward-Euler stage on (T, Y); memory is left untouched so the
    caller can apply it once per accepted step."""
    out = rhs(state)
    new_T = state.T.copy()
    new_T.interior[...] = state.T.interior + dt * out.dT
    if fuel_update is FuelUpdate.EXACT_EXPONENTIAL:
        new_Y = step_fuel_exact(state.Y, out.psi, dt)
        clamped = 0
    else:
        new_Y = state.Y.copy()
        updated = state.Y.interior + dt * out.dY
        negative = updated < 0.0
        clamped = int(np.count_nonzero(negative))
        new_Y.interior[...] = np.where(negative, 0.0, updated)
    theta = state.theta.copy() if state.theta is not None else None
    return FieldState(new_T, new_Y, theta), clamped


def _combine(base: FieldState, w_base: float, stage: FieldState, w_stage: float) -> FieldState:
    T = base.T.copy()
    T.interior[...] = w_base * base.T.interior + w_stage * stage.T.interior
    Y = base.Y.copy()
    Y.interior[...] = w_base * base.Y.interior + w_stage * stage.Y.interior
    theta = base.theta.copy() if base.theta is not None else None
    return FieldState(T, Y, theta)


def _refresh_memory(state: FieldState) -> None:
    if state.theta is not None:
        state.theta.interior[...] = physics.update_memory(
            state.theta.interior, state.T.interior)


def step_euler(state: FieldState, dt: float, rhs,
               fuel_update: FuelUpdate = FuelUpdate.COUPLED_EXPLICIT
               ) -> tuple[FieldState, int]:
    """Forward Euler step; returns the new state and the fuel clamp count."""
    if dt <= 0.0:
        raise ValueError("dt must be > 0")
    new, clamped = _euler_map(state, dt, rhs, fuel_update)
    _refresh_memory(new)
    return new, clamped


def step_ssprk3(state: FieldState, dt: float, rhs,
                fuel_update: FuelUpdate = FuelUpdate.COUPLED_EXPLICIT
                ) -> tuple[FieldState, int]:
    """Three-stage Shu-Osher SSP Runge-Kutta step (convex combinations of
    Euler stages with weights 1; 3/4,1/4; 1/3,2/3)."""
    if dt <= 0.0:
        raise ValueError("dt must be > 0")
    s1, c1 = _euler_map(state, dt, rhs, fuel_update)
    e2, c2 = _euler_map(s1, dt, rhs, fuel_update)
    s2 = _combine(state, 0.75, e2, 0.25)
    e3, c3 = _euler_map(s2, dt, rhs, fuel_update)
    new = _combine(state, 1.0 / 3.0, e3, 2.0 / 3.0)
    _refresh_memory(new)
    return new, c1 + c2 + c3


def advance(state: FieldState, dt: float, rhs, scheme: SchemeConfig
            ) -> tuple[FieldState, int]:
    if scheme.temporal is TemporalScheme.SSPRK3:
        return step_ssprk3(state, dt, rhs, scheme.fuel_update)
    return step_euler(state, dt, rhs, scheme.fuel_update)


def stable_dt(state: FieldState, rhs: AdrRhs) -> float:
    """Explicit step bound: cfl times the smallest of the advective,
    diffusive, and reaction time scales, capped at scheme.dt_max."""
    grid = state.grid
    scheme = rhs.scheme
    p = rhs.params
    T = state.T.interior
    bad = ~np.isfinite(T) | (T < 0.0)
    if np.any(bad):
        raise DivergenceError("temperature state", _first_true_cell(bad))
    limits = []

    if rhs.velocity is not None:
        rate = np.zeros(grid.shape)
        components = rhs.velocity if not np.isscalar(rhs.velocity) else (rhs.velocity,)
        for axis, v in enumerate(components):
            rate = rate + np.abs(np.asarray(v, dtype=float)) / grid.spacing[axis]
        max_rate = float(np.max(rate))
        if max_rate > 0.0:
            limits.append(1.0 / max_rate)

    K_max = float(np.max(physics.diffusivity(T, p)))
    if K_max > 0.0:
        c_min = rhs.moisture.cp_f0 if rhs.moisture is not None else p.c
        inv_dx2 = sum(1.0 / d**2 for d in grid.spacing)
        limits.append(p.rho * c_min / (2.0 * K_max * inv_dx2))

    psi_max = rhs.max_reaction_rate(state)
    if psi_max > 0.0:
        limits.append(1.0 / psi_max)

    if not limits:
        return scheme.dt_max
    return min(scheme.cfl * min(limits), scheme.dt_max)
