"""Pointwise physical closures of the wildfire model.

Everything in this module is a pure function of its inputs (scalar or
ndarray, broadcasting as numpy does), so the driver can evaluate it cell
by cell in any order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

STEFAN_BOLTZMANN = 5.670374419e-8  # W/(m^2 K^4)


class CombustionModel(Enum):
    """Which reaction-rate closure drives the burn."""

    ARRHENIUS = "arrhenius"
    LINEARIZED_MEMORY = "linearized_memory"
    CONSTANT = "constant"

    @property
    def needs_memory(self) -> bool:
        # the memory variant keeps burning from the running peak temperature
        return self is CombustionModel.LINEARIZED_MEMORY


@dataclass(frozen=True)
class ModelParameters:
    """Physical constants of the temperature/fuel system (SI units).

    h is the Newton-cooling exchange coefficient; in the reduced
    nondimensional preset (rho = c = 1) it acts directly on T.
    """

    rho: float = 1.0            # bulk density [kg/m^3]
    c: float = 1.0              # specific heat [J/(kg K)]
    k: float = 1.0              # heat conduction coefficient [W/(m K)]
    epsilon: float = 0.0        # emissivity factor [-]
    delta: float = 0.0          # optical path length [m]
    sigma: float = STEFAN_BOLTZMANN  # Stefan-Boltzmann constant [W/(m^2 K^4)]
    h: float = 0.05             # heat exchange with the environment [1/s scale]
    T_inf: float = 300.0        # ambient temperature [K]
    S: float = 1500.0           # heating value [J/kg]
    A: float = 100.0            # Arrhenius pre-exponential factor [1/s]
    T_ac: float = 600.0         # activation temperature [K]
    T_bar: float = 400.0        # ignition temperature [K]
    A_L: float = 0.01           # linearized rate coefficient [1/(s K)]
    Psi_const: float = 0.05     # constant-factor combustion rate [1/s]

    def __post_init__(self) -> None:
        positive = {"rho": self.rho, "c": self.c, "k": self.k,
                    "sigma": self.sigma, "T_ac": self.T_ac}
        for name, value in positive.items():
            if not np.isfinite(value) or value <= 0.0:
                raise ValueError(f"params.{name} must be finite and > 0, got {value}")
        # rate coefficients may be zero (combustion switched off)
        nonnegative = {"epsilon": self.epsilon, "delta": self.delta, "h": self.h,
                       "T_inf": self.T_inf, "T_bar": self.T_bar, "A": self.A,
                       "A_L": self.A_L, "Psi_const": self.Psi_const, "S": self.S}
        for name, value in nonnegative.items():
            if not np.isfinite(value) or value < 0.0:
                raise ValueError(f"params.{name} must be finite and >= 0, got {value}")


@dataclass(frozen=True)
class TwoPhaseParameters:
    """Bulk gas/solid mixture constants for the effective advection speed."""

    R_f: float      # fuel volume fraction [-]
    rho_a: float    # gas density [kg/m^3]
    rho_f: float    # solid density [kg/m^3]
    cp_a: float     # gas specific heat [J/(kg K)]
    cp_f: float     # solid specific heat [J/(kg K)]

    def __post_init__(self) -> None:
        if not 0.0 <= self.R_f <= 1.0:
            raise ValueError(f"two_phase.R_f must lie in [0, 1], got {self.R_f}")
        for name in ("rho_a", "rho_f", "cp_a", "cp_f"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0.0:
                raise ValueError(f"two_phase.{name} must be finite and > 0, got {value}")


@dataclass(frozen=True)
class MoistureParameters:
    """Fuel-moisture constants for the apparent specific heat closure."""

    M: float                # moisture content, mass water / mass dry fuel [-]
    c_w: float = 4186.0     # specific heat of water [J/(kg K)]
    L_w: float = 2.26e6     # latent heat of evaporation [J/kg]
    T_w: float = 373.0      # evaporation temperature [K]
    cp_f0: float = 1800.0   # dry-fuel specific heat [J/(kg K)]
    Y_tol: float = 1e-9     # tolerance of the "fuel still unburned" test

    def __post_init__(self) -> None:
        if not np.isfinite(self.M) or self.M < 0.0:
            raise ValueError(f"moisture.M must be finite and >= 0, got {self.M}")
        for name in ("c_w", "L_w", "T_w", "cp_f0"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0.0:
                raise ValueError(f"moisture.{name} must be finite and > 0, got {value}")
        if not 0.0 < self.Y_tol < 1.0:
            raise ValueError(f"moisture.Y_tol must lie in (0, 1), got {self.Y_tol}")


@dataclass(frozen=True)
class AdvectionParameters:
    """Virtual-wind calibration: v = beta * w + gamma * grad(Z)."""

    beta: float = 1.0    # wind calibration factor [-]
    gamma: float = 0.0   # slope calibration factor [m/s per unit slope]

    def __post_init__(self) -> None:
        if not (np.isfinite(self.beta) and np.isfinite(self.gamma)):
            raise ValueError("advection.beta and advection.gamma must be finite")


def _check_finite(name, values):
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{name} contains non-finite values")


def diffusivity(T, p: ModelParameters):
    """Temperature-dependent heat transfer coefficient k + 4*eps*delta*sigma*T^3.

    The cubic term models optically thick radiation; it vanishes for
    epsilon = 0. T must be finite and nonnegative.
    """
    T = np.asarray(T, dtype=float)
    _check_finite("temperature", T)
    if np.any(T < 0.0):
        raise ValueError("diffusivity requires T >= 0")
    radiative = 4.0 * p.epsilon * p.delta * p.sigma
    out = p.k + (radiative * T**3 if radiative != 0.0 else np.zeros_like(T))
    return out if out.ndim else float(out)


def combustion_arrhenius(T, p: ModelParameters):
    """Arrhenius rate A*exp(-T_ac/T), gated off below the ignition temperature."""
    T = np.asarray(T, dtype=float)
    _check_finite("temperature", T)
    if np.any(T <= 0.0):
        raise ValueError("combustion_arrhenius requires T > 0")
    rate = np.where(T >= p.T_bar, p.A * np.exp(-p.T_ac / T), 0.0)
    return rate if rate.ndim else float(rate)


def combustion_linearized(T, theta, p: ModelParameters):
    """First-order rate A_L*(T - T_inf), active wherever the running peak
    temperature theta has ever reached the ignition temperature.

    Clipped at zero so the rate can never turn into a fuel source.
    """
    T = np.asarray(T, dtype=float)
    theta = np.asarray(theta, dtype=float)
    _check_finite("temperature", T)
    _check_finite("memory temperature", theta)
    rate = np.where(theta >= p.T_bar, p.A_L * np.maximum(T - p.T_inf, 0.0), 0.0)
    return rate if rate.ndim else float(rate)


def combustion_constant(T, p: ModelParameters):
    """Constant rate Psi_const above the ignition temperature, zero below."""
    T = np.asarray(T, dtype=float)
    _check_finite("temperature", T)
    rate = np.where(T >= p.T_bar, p.Psi_const, 0.0)
    return rate if rate.ndim else float(rate)


def reaction_rate(model: CombustionModel, T, p: ModelParameters, theta=None):
    """Dispatch to the configured combustion closure."""
    if model is CombustionModel.ARRHENIUS:
        return combustion_arrhenius(T, p)
    if model is CombustionModel.LINEARIZED_MEMORY:
        if theta is None:
            raise ValueError("linearized_memory combustion requires a memory field")
        return combustion_linearized(T, theta, p)
    if model is CombustionModel.CONSTANT:
        return combustion_constant(T, p)
    raise ValueError(f"unknown combustion model {model!r}")


def energy_source(T, Y, psi, p: ModelParameters, c_eff=None):
    """Temperature tendency from combustion heating and Newton cooling.

    Returns (rho*psi*S*Y - h*(T - T_inf)) / (rho * c_eff) with c_eff the
    plain specific heat unless a moisture-modified value is supplied.
    """
    c_eff = p.c if c_eff is None else np.asarray(c_eff, dtype=float)
    if np.any(np.asarray(c_eff) <= 0.0):
        raise ValueError("effective specific heat must be > 0")
    T = np.asarray(T, dtype=float)
    Y = np.asarray(Y, dtype=float)
    out = (p.rho * np.asarray(psi) * p.S * Y - p.h * (T - p.T_inf)) / (p.rho * c_eff)
    return out if out.ndim else float(out)


def bulk_velocity_factor(tp: TwoPhaseParameters) -> float:
    """Scaling of the ambient wind down to the fuel-air bulk speed, in [0, 1]."""
    gas = tp.rho_a * tp.cp_a
    solid = tp.rho_f * tp.cp_f
    denom = solid * tp.R_f + gas * (1.0 - tp.R_f)
    if denom == 0.0:
        raise ValueError("two-phase heat-capacity denominator vanished")
    return (1.0 - tp.R_f) * gas / denom


def bulk_velocity(w, tp: TwoPhaseParameters):
    """Effective advection vector: ambient wind scaled by the two-phase factor."""
    factor = bulk_velocity_factor(tp)
    return tuple(factor * np.asarray(component, dtype=float) for component in w)


def virtual_wind(w, grad_z, beta: float, gamma: float):
    """Terrain-aware advection vector beta*w + gamma*grad(Z), componentwise."""
    if len(w) != len(grad_z):
        raise ValueError("wind and terrain slope must have the same dimension")
    return tuple(beta * np.asarray(wc, dtype=float) + gamma * np.asarray(gc, dtype=float)
                 for wc, gc in zip(w, grad_z))


def effective_specific_heat(T, Y, mp: MoistureParameters, T_bar: float, T_inf: float):
    """Apparent specific heat absorbing water heating and evaporation.

    Unburned fuel (Y within Y_tol of 1) below the ignition temperature
    carries the moisture surcharge; everywhere else the dry value applies.
    """
    if T_bar <= T_inf:
        raise ValueError("apparent specific heat requires T_bar > T_inf")
    T = np.asarray(T, dtype=float)
    Y = np.asarray(Y, dtype=float)
    surcharge = mp.M * (mp.c_w * (mp.T_w - T_inf) + mp.L_w) / (T_bar - T_inf)
    wet = (T < T_bar) & (Y >= 1.0 - mp.Y_tol)
    out = np.where(wet, mp.cp_f0 + surcharge, mp.cp_f0)
    return out if out.ndim else float(out)


def update_memory(theta, T):
    """Pointwise running maximum of the temperature trajectory."""
    theta = np.asarray(theta, dtype=float)
    T = np.asarray(T, dtype=float)
    if theta.shape != T.shape:
        raise ValueError(f"memory/temperature shape mismatch: {theta.shape} vs {T.shape}")
    return np.maximum(theta, T)
