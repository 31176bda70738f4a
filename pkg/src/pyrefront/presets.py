"""Built-in named scenarios.

Each preset is a complete configuration document; files and --set
overrides layer on top of it. The `validation` preset is the reference
parameter set every qualitative acceptance claim is measured on.
"""

from __future__ import annotations

import copy


def _validation() -> dict:
    return {
        "title": "1D linearized-memory fire front, reference parameter set",
        "grid": {"cells": [1024], "length": [250.0], "origin": [0.0]},
        "boundary": {"temperature": "dirichlet_ambient", "fuel": "neumann"},
        "params": {
            "rho": 1.0, "c": 1.0, "k": 1.0,
            "epsilon": 0.0, "delta": 0.0, "sigma": 5.670374419e-8,
            "h": 0.05, "T_inf": 300.0, "S": 1500.0,
            "A": 100.0, "T_ac": 600.0, "T_bar": 400.0,
            "A_L": 0.01, "Psi_const": 0.05,
        },
        "combustion": "linearized_memory",
        "advection": {"kind": "direct", "velocity": [0.1]},
        "initial": {"kind": "hot_strip", "interval": [0.0, 10.0],
                    "peak": 900.0, "fuel": 1.0},
        "scheme": {"spatial": "weno5", "temporal": "ssprk3", "cfl": 0.4,
                   "fuel_update": "exact_exponential"},
        "run": {"t_end": 30.0, "seed": 0},
        "output": {"interval": 5.0, "fields": ["T", "Y"], "formats": ["csv"],
                   "figures": True,
                   "front": {"threshold": 400.0, "directions": ["+x"],
                             "window": [15.0, 30.0]}},
        "tw": {"v": 0.1, "Y0": 1.0, "bracket": [0.02, 8.0], "n_scan": 96,
               "decay_factor": 1.0e8, "rtol": 1.0e-8},
    }


def _reduced_weber() -> dict:
    return {
        "title": "nondimensional reduced model with sup-norm bound recording",
        "grid": {"cells": [512], "length": [50.0], "origin": [0.0]},
        "boundary": {"temperature": "dirichlet_ambient", "fuel": "neumann"},
        "params": {
            "rho": 1.0, "c": 1.0, "k": 1.0,
            "epsilon": 0.0, "delta": 0.0, "sigma": 5.670374419e-8,
            "h": 1.0, "T_inf": 0.0, "S": 1.0,
            "A": 1.0, "T_ac": 1.0, "T_bar": 0.0,
            "A_L": 0.01, "Psi_const": 0.05,
        },
        "combustion": "arrhenius",
        "advection": {"kind": "none"},
        "initial": {"kind": "uniform_unit"},
        "scheme": {"spatial": "upwind1", "temporal": "ssprk3", "cfl": 0.4,
                   "fuel_update": "exact_exponential"},
        "run": {"t_end": 5.0, "seed": 0, "reduced_bound": True},
        "output": {"interval": 0.25, "fields": ["T", "Y"], "formats": ["csv"],
                   "figures": True},
    }


def _incline_2d() -> dict:
    return {
        "title": "2D hotspot on an inclined plane with slope-driven virtual wind",
        "grid": {"cells": [128, 128], "length": [120.0, 120.0],
                 "origin": [-60.0, -60.0]},
        "boundary": {"temperature": "dirichlet_ambient", "fuel": "neumann"},
        "params": {
            "rho": 1.0, "c": 1.0, "k": 1.0,
            "epsilon": 0.0, "delta": 0.0, "sigma": 5.670374419e-8,
            "h": 0.05, "T_inf": 300.0, "S": 1500.0,
            "A": 100.0, "T_ac": 600.0, "T_bar": 400.0,
            "A_L": 0.01, "Psi_const": 0.05,
        },
        "combustion": "linearized_memory",
        "advection": {"kind": "virtual_wind", "wind": [0.0, 0.0],
                      "beta": 1.0, "gamma": 10.0},
        "terrain": {"kind": "incline", "slope": [0.2, 0.0]},
        "initial": {"kind": "hotspot_gaussian", "center": [0.0, 0.0],
                    "radius": 4.0, "peak": 900.0, "fuel": 1.0},
        "scheme": {"spatial": "weno5", "temporal": "ssprk3", "cfl": 0.4,
                   "fuel_update": "exact_exponential"},
        "run": {"t_end": 6.0, "seed": 0},
        "output": {"interval": 1.0, "fields": ["T", "Y"], "formats": ["csv"],
                   "figures": True,
                   "front": {"threshold": 400.0,
                             "directions": ["+x", "-x", "+y", "-y"],
                             "window": [2.0, 6.0]}},
    }


def _moisture_1d() -> dict:
    return {
        "title": "1D front with fuel-moisture apparent specific heat",
        "grid": {"cells": [512], "length": [2.0], "origin": [0.0]},
        "boundary": {"temperature": "dirichlet_ambient", "fuel": "neumann"},
        "params": {
            "rho": 1.0, "c": 1800.0, "k": 1.0,
            "epsilon": 0.0, "delta": 0.0, "sigma": 5.670374419e-8,
            "h": 1.0, "T_inf": 300.0, "S": 1.8e6,
            "A": 1.8, "T_ac": 1500.0, "T_bar": 450.0,
            "A_L": 0.01, "Psi_const": 0.05,
        },
        "combustion": "arrhenius",
        "advection": {"kind": "none"},
        "moisture": {"M": 0.1, "c_w": 4186.0, "L_w": 2.26e6, "T_w": 373.0,
                     "cp_f0": 1800.0, "Y_tol": 1.0e-9},
        "initial": {"kind": "hot_strip", "interval": [0.0, 0.15],
                    "peak": 900.0, "fuel": 1.0},
        "scheme": {"spatial": "weno5", "temporal": "ssprk3", "cfl": 0.4,
                   "fuel_update": "exact_exponential"},
        "run": {"t_end": 55.0, "seed": 0},
        "output": {"interval": 11.0, "fields": ["T", "Y"], "formats": ["csv"],
                   "figures": True,
                   "front": {"threshold": 450.0, "directions": ["+x"],
                             "window": [25.0, 55.0]}},
    }


def _two_phase_1d() -> dict:
    cfg = _validation()
    cfg["title"] = "validation physics advected by the two-phase bulk velocity"
    cfg["advection"] = {"kind": "two_phase", "wind": [0.25]}
    cfg["two_phase"] = {"R_f": 0.002, "rho_a": 1.2, "rho_f": 500.0,
                        "cp_a": 1005.0, "cp_f": 1800.0}
    return cfg


PRESETS = {
    "validation": _validation,
    "reduced-weber": _reduced_weber,
    "incline-2d": _incline_2d,
    "moisture-1d": _moisture_1d,
    "two-phase-1d": _two_phase_1d,
}

DEFAULT_PRESET = "validation"


def preset_config(name: str) -> dict:
    if name not in PRESETS:
        raise KeyError(f"unknown scenario preset {name!r}; "
                       f"available: {', '.join(sorted(PRESETS))}")
    return copy.deepcopy(PRESETS[name]())
