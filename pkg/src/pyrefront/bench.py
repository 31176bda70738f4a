"""Throughput harness: cell updates per second for the cheap and the
high-order scheme on the reference physics, across grid sizes."""

from __future__ import annotations

import statistics
import time

import numpy as np

from .config import resolve_config
from .driver import run
from .integrate import AdrRhs, advance, stable_dt
from .scenario import build_scenario

SCHEME_CASES = {
    "upwind1/euler": {"spatial": "upwind1", "temporal": "euler"},
    "weno5/ssprk3": {"spatial": "weno5", "temporal": "ssprk3"},
}


def _bench_scenario(n: int):
    """Reference physics on an n x n grid, sized so a hot front is active."""
    cfg = resolve_config({
        "scenario": "validation",
        "grid": {"cells": [n, n], "length": [60.0, 60.0], "origin": [-30.0, -30.0]},
        "advection": {"kind": "direct", "velocity": [0.1, 0.05]},
        "initial": {"kind": "hotspot_gaussian", "center": [0.0, 0.0],
                    "radius": 5.0, "peak": 900.0, "interval": None},
        "run": {"t_end": 1.0},
        "output": {"interval": None, "front": None, "figures": False},
    })
    return cfg


def run_benchmark(sizes, repetitions: int = 3, steps: int = 10) -> list[dict]:
    """Median per-step timing for each scheme at each grid size.

    Returns one row per (scheme, size) with the raw repetition timings,
    their median, and the derived cell-updates-per-second figure. No
    pass/fail judgement is applied.
    """
    rows = []
    for n in sizes:
        base_cfg = _bench_scenario(int(n))
        for label, scheme_patch in SCHEME_CASES.items():
            cfg = dict(base_cfg)
            cfg = resolve_config({**cfg, "scheme": {**cfg["scheme"], **scheme_patch}})
            scenario = build_scenario(cfg)
            rhs = AdrRhs(params=scenario.params, combustion=scenario.combustion,
                         scheme=scenario.scheme, bc_T=scenario.bc_T,
                         velocity=scenario.velocity, moisture=scenario.moisture)
            timings = []
            for _ in range(repetitions):
                state = scenario.initial.copy()
                dt = stable_dt(state, rhs)
                state, _ = advance(state, dt, rhs, scenario.scheme)  # warm-up
                start = time.perf_counter()
                for _ in range(steps):
                    state, _ = advance(state, dt, rhs, scenario.scheme)
                timings.append((time.perf_counter() - start) / steps)
            median = statistics.median(timings)
            cells = int(np.prod(scenario.grid.shape))
            rows.append({
                "scheme": label,
                "nx": int(n),
                "cells": cells,
                "steps": steps,
                "repetitions": repetitions,
                "seconds_per_step_median": float(median),
                "seconds_per_step_all": ";".join(f"{v:.6g}" for v in timings),
                "cell_updates_per_s": float(cells / median),
            })
    return rows


def format_report(rows) -> str:
    header = f"{'scheme':>16} {'grid':>8} {'cells':>9} {'s/step':>12} {'cell-updates/s':>15}"
    lines = [header, "-" * len(header)]
    for row in rows:
        lines.append(f"{row['scheme']:>16} {row['nx']:>6}^2 {row['cells']:>9} "
                     f"{row['seconds_per_step_median']:>12.4e} "
                     f"{row['cell_updates_per_s']:>15.4g}")
    return "\n".join(lines)
