"""Structured-grid wildfire spread simulator with front-speed analysis."""

from .fields import BoundaryCondition, BoundaryKind, Field, FieldState, Grid, fill_ghosts
from .front import FrontTrace, estimate_speed, locate_front
from .integrate import (AdrRhs, DivergenceError, FuelUpdate, RhsOutput, SchemeConfig,
                        SpatialScheme, TemporalScheme, advance, stable_dt, step_euler,
                        step_fuel_exact, step_ssprk3)
from .physics import (AdvectionParameters, CombustionModel, ModelParameters,
                      MoistureParameters, TwoPhaseParameters, bulk_velocity,
                      bulk_velocity_factor, combustion_arrhenius, combustion_constant,
                      combustion_linearized, diffusivity, effective_specific_heat,
                      energy_source, reaction_rate, update_memory, virtual_wind)
from .waves import ShootingProblem, find_wave_speeds, scan_wave_speeds, shoot, tw_ode_rhs

__version__ = "0.1.0"
