"""Travelling-wave speed estimation for the linearized-memory combustion
model by shooting on the wave-frame ODE system.

In the frame xi = x - c*t the temperature/fuel profiles (U, V) satisfy

    k U'' = rho c_p (v - c) U' + h (U - T_inf) - rho S Psi(U) V
    -c V' = -Psi(U) V,          Psi(U) = A_L H(burned) (U - T_inf)

where the Heaviside memory is 1 behind the ignition point (xi <= 0, where
U first reached T_bar) and 0 ahead. Ahead of the front the system is
linear, so a candidate speed c is tested by seeding the decaying tail mode
far ahead, integrating back to the ignition point, switching the reaction
on, and measuring how badly the burned-side solution violates boundedness.
Admissible speeds are the sign changes of that mismatch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from .physics import ModelParameters


@dataclass(frozen=True)
class ShootingProblem:
    """Wave-frame boundary-value setup for one parameter set.

    Only rho, c, k, h, T_inf, S, T_bar and A_L of `params` enter; the
    diffusivity is held at the constant k (radiation off). Requires h > 0
    so both far fields are hyperbolic.
    """

    params: ModelParameters
    v: float = 0.0                 # advection speed in the lab frame [m/s]
    Y0: float = 1.0                # unburned fuel fraction
    c_lo: float = 0.05             # speed bracket, lower end [m/s]
    c_hi: float = 5.0              # speed bracket, upper end [m/s]
    decay_factor: float = 1e8      # far-field truncation of the linear tails
    rtol: float = 1e-8             # ODE integration tolerance
    n_scan: int = 64               # coarse bracket subdivisions
    cap_factor: float = 100.0      # blow-up saturation, relative to T_bar - T_inf

    def __post_init__(self) -> None:
        if self.c_lo >= self.c_hi:
            raise ValueError("speed bracket needs c_lo < c_hi")
        if self.Y0 <= 0.0:
            raise ValueError("unburned fuel fraction must be > 0")
        if self.params.h <= 0.0:
            raise ValueError("shooting requires h > 0 (bounded burned state)")
        if self.params.T_bar <= self.params.T_inf:
            raise ValueError("shooting requires T_bar > T_inf")
        if self.decay_factor <= 1.0 or self.n_scan < 2:
            raise ValueError("decay_factor must exceed 1 and n_scan must be >= 2")


def tail_rates(problem: ShootingProblem, c: float) -> tuple[float, float]:
    """Decay/growth exponents of the linearized far fields at speed c."""
    p = problem.params
    a = p.rho * p.c * (problem.v - c)
    disc = math.sqrt(a * a + 4.0 * p.k * p.h)
    return (a - disc) / (2.0 * p.k), (a + disc) / (2.0 * p.k)


def tw_ode_rhs(state, c: float, problem: ShootingProblem, burning: bool):
    """Wave-frame system as first-order derivatives of (U, U', V)."""
    p = problem.params
    U, dU, V = state
    psi = p.A_L * max(U - p.T_inf, 0.0) if burning else 0.0
    ddU = (p.rho * p.c * (problem.v - c) * dU + p.h * (U - p.T_inf)
           - p.rho * p.S * psi * V) / p.k
    return [dU, ddU, psi * V / c]


def shoot(c: float, problem: ShootingProblem) -> float:
    """Mismatch of the burned-side boundary behaviour at candidate speed c.

    Zero mismatch means U returns to ambient behind the front (a bounded
    wave profile); blow-ups saturate with their sign and an earliness
    penalty so the value stays continuous and bracketable in c.
    """
    p = problem.params
    if c == 0.0 or c == problem.v:
        raise ValueError("candidate speed must differ from 0 and from the advection speed")
    lam_minus, lam_plus = tail_rates(problem, c)
    u_ig = p.T_bar - p.T_inf
    log_f = math.log(problem.decay_factor)
    # once the fuel is this far gone its heat release is lost in round-off;
    # freezing it removes the stiff decay mode from the burned-side integration
    fuel_floor = 1e-14 * problem.Y0

    # Backward in xi (s = -xi): grow the seeded tail mode until ignition.
    def backward(s, state, burning):
        dU, ddU, dV = tw_ode_rhs(state, c, problem, burning)
        if state[2] <= fuel_floor:
            dV = 0.0
        return [-dU, -ddU, -dV]

    u_seed = u_ig / problem.decay_factor
    seed = [p.T_inf + u_seed, lam_minus * u_seed, problem.Y0]

    def hits_ignition(s, state, *_):
        return state[0] - p.T_bar
    hits_ignition.terminal = True
    hits_ignition.direction = 1.0

    span = 4.0 * log_f / abs(lam_minus)
    tail = solve_ivp(backward, (0.0, span), seed, args=(False,),
                     events=hits_ignition, rtol=problem.rtol, atol=problem.rtol * u_ig,
                     dense_output=False)
    if tail.t_events[0].size == 0:
        # tail never reaches the ignition temperature: no admissible front
        return problem.cap_factor * u_ig
    state_ig = [float(v) for v in tail.y_events[0][0]]

    # Burned region: integrate far enough that the bad mode separates.
    burn_span = log_f / min(abs(lam_minus), lam_plus)
    cap = problem.cap_factor * u_ig

    def blows_up(s, state, *_):
        return abs(state[0] - p.T_inf) - cap
    blows_up.terminal = True
    blows_up.direction = 1.0

    burned = solve_ivp(backward, (0.0, burn_span), state_ig, args=(True,),
                       events=blows_up, rtol=problem.rtol, atol=problem.rtol * u_ig)
    u_end = float(burned.y[0, -1]) - p.T_inf
    if burned.t_events[0].size > 0:
        s_stop = float(burned.t_events[0][0])
        return math.copysign(cap * (1.0 + (burn_span - s_stop)), u_end)
    return u_end


def wave_profile(c: float, problem: ShootingProblem, n_points: int = 400,
                 span: Optional[float] = None):
    """Wave-frame profile (xi, U, V) through the burning region at speed c,
    with the ignition point pinned at xi = 0.

    Diagnostic companion to `shoot`. The default span only extends as far
    as the unstable burned-side mode amplifies the shooting tolerance by
    1e5: past that point the profile of a bisected root is noise, however
    accurate the root."""
    p = problem.params
    lam_minus, lam_plus = tail_rates(problem, c)
    u_ig = p.T_bar - p.T_inf
    log_f = math.log(problem.decay_factor)
    fuel_floor = 1e-14 * problem.Y0

    def backward(s, state, burning):
        dU, ddU, dV = tw_ode_rhs(state, c, problem, burning)
        if state[2] <= fuel_floor:
            dV = 0.0
        return [-dU, -ddU, -dV]

    u_seed = u_ig / problem.decay_factor
    seed = [p.T_inf + u_seed, lam_minus * u_seed, problem.Y0]

    def hits_ignition(s, state, *_):
        return state[0] - p.T_bar
    hits_ignition.terminal = True
    hits_ignition.direction = 1.0

    tail_span = 4.0 * log_f / abs(lam_minus)
    tail = solve_ivp(backward, (0.0, tail_span), seed, args=(False,),
                     events=hits_ignition, rtol=problem.rtol, atol=problem.rtol * u_ig)
    if tail.t_events[0].size == 0:
        raise ValueError("no ignition point on the tail at this speed")
    state_ig = [float(v) for v in tail.y_events[0][0]]
    if span is None:
        span = math.log(1e5) / abs(lam_minus)
    s_eval = np.linspace(0.0, span, n_points)
    burned = solve_ivp(backward, (0.0, span), state_ig, args=(True,),
                       t_eval=s_eval, rtol=problem.rtol, atol=problem.rtol * u_ig)
    return -burned.t, burned.y[0], burned.y[2]


@dataclass
class WaveScan:
    """Coarse mismatch scan plus the bisected roots it produced."""

    speeds: np.ndarray
    mismatches: np.ndarray
    roots: list = dataclass_field(default_factory=list)
    root_mismatches: list = dataclass_field(default_factory=list)


def _bisect(f, lo: float, hi: float, f_lo: float, xtol: float) -> float:
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_lo < 0.0) == (f_mid < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def scan_wave_speeds(problem: ShootingProblem) -> WaveScan:
    """Scan the bracket, bisect every mismatch sign change, return everything."""
    cs = np.linspace(problem.c_lo, problem.c_hi, problem.n_scan)
    # nudge scan points off the two singular speeds
    bump = 1e-9 * (problem.c_hi - problem.c_lo)
    cs = np.asarray([c + bump if (c == 0.0 or c == problem.v) else c for c in cs])
    ms = np.asarray([shoot(c, problem) for c in cs])
    scan = WaveScan(speeds=cs, mismatches=ms)
    xtol = 1e-6 * (problem.c_hi - problem.c_lo)
    for i in range(len(cs) - 1):
        if ms[i] == 0.0:
            scan.roots.append(float(cs[i]))
            scan.root_mismatches.append(0.0)
        elif (ms[i] < 0.0) != (ms[i + 1] < 0.0):
            root = _bisect(lambda c: shoot(c, problem),
                           float(cs[i]), float(cs[i + 1]), float(ms[i]), xtol)
            scan.roots.append(root)
            scan.root_mismatches.append(shoot(root, problem))
    order = np.argsort(scan.roots)
    scan.roots = [scan.roots[i] for i in order]
    scan.root_mismatches = [scan.root_mismatches[i] for i in order]
    return scan


def find_wave_speeds(problem: ShootingProblem) -> list[float]:
    """All admissible wave speeds in the bracket, sorted ascending."""
    return scan_wave_speeds(problem).roots
