"""Time-loop orchestration: advance a scenario, trace fronts, schedule
outputs, and write a manifest sufficient to reproduce the run bitwise."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__ as _version
from . import outputs, plots
from .config import ConfigError
from .fields import FieldState
from .front import FrontTrace, locate_front
from .integrate import AdrRhs, DivergenceError, advance, stable_dt
from .scenario import Scenario, check_reduced_preset

_TIME_EPS = 1e-9


@dataclass
class RunResult:
    manifest: dict
    state: FieldState
    traces: dict
    out_dir: Optional[Path] = None

    def front_speed(self, direction: str) -> Optional[float]:
        entry = self.manifest["front"].get(direction)
        return None if entry is None else entry.get("speed")


def _front_profile(scenario: Scenario, state: FieldState, direction: str):
    """(coordinates, values, sign) of the 1D slice the front is traced on."""
    grid = scenario.grid
    axis = 0 if direction in ("+x", "-x") else 1
    sign = +1 if direction[0] == "+" else -1
    T = state.T.interior
    if grid.dim == 1:
        profile = T
    elif axis == 0:
        iy = int(np.argmin(np.abs(grid.coords(1) - scenario.ignition_center[1])))
        profile = T[:, iy]
    else:
        ix = int(np.argmin(np.abs(grid.coords(0) - scenario.ignition_center[0])))
        profile = T[ix, :]
    return grid.coords(axis), profile, sign


def _sample_fronts(scenario: Scenario, state: FieldState, t: float, traces: dict):
    plan = scenario.output.front
    if plan is None:
        return
    for direction in plan.directions:
        x, profile, sign = _front_profile(scenario, state, direction)
        position = locate_front(x, profile, plan.threshold, direction=sign)
        traces[direction].add(t, position)


def _reduced_bound(scenario: Scenario, t: float, T0_max: float, Y0_max: float) -> float:
    h = scenario.params.h
    if h > 0.0:
        return math.exp(-h * t) * T0_max + Y0_max / h
    return T0_max + t * Y0_max


def _series_entry(scenario: Scenario, state: FieldState, t: float,
                  T0_max: float, Y0_max: float) -> dict:
    T = state.T.interior
    Y = state.Y.interior
    entry = {
        "t": float(t),
        "T_min": float(T.min()), "T_max": float(T.max()),
        "Y_min": float(Y.min()), "Y_max": float(Y.max()),
        "fuel_mass": float(Y.sum() * scenario.grid.cell_volume),
    }
    if scenario.reduced_bound:
        bound = _reduced_bound(scenario, t, T0_max, Y0_max)
        entry["bound"] = float(bound)
        entry["margin"] = float(bound - entry["T_max"])
    return entry


def _write_snapshot(scenario: Scenario, state: FieldState, t: float, index: int,
                    out_dir: Path, manifest: dict) -> None:
    for name in scenario.output.fields:
        values = {"T": state.T, "Y": state.Y, "theta": state.theta}[name]
        if values is None:
            continue
        arr = values.interior
        for fmt in scenario.output.formats:
            path = out_dir / f"{name}_{index:04d}.{fmt}"
            entry = {"kind": f"raster_{fmt}", "field": name, "time": float(t),
                     "path": path.name}
            if fmt == "csv":
                outputs.write_raster_csv(path, arr)
            else:
                lo, hi = outputs.write_raster_pgm(path, arr)
                entry["scale"] = {"lo": lo, "hi": hi}
            manifest["outputs"].append(entry)


def run(scenario: Scenario, out_dir=None, threads: int = 1,
        quiet: bool = True) -> RunResult:
    """Advance the scenario from t=0 to t_end under CFL-limited steps.

    Writes rasters, front traces, figures, and the manifest under
    `out_dir` when given. On divergence the manifest is still written
    (status "diverged") before the error propagates.
    """
    grid = scenario.grid
    state = scenario.initial.copy()
    rhs = AdrRhs(params=scenario.params, combustion=scenario.combustion,
                 scheme=scenario.scheme, bc_T=scenario.bc_T,
                 velocity=scenario.velocity, moisture=scenario.moisture)
    out_path = outputs.ensure_dir(out_dir) if out_dir is not None else None

    plan = scenario.output
    traces = {d: FrontTrace() for d in (plan.front.directions if plan.front else ())}
    T0_max = float(state.T.interior.max())
    Y0_max = float(state.Y.interior.max())

    manifest = {
        "manifest_version": 1,
        "tool": {"name": "pyrefront", "version": _version},
        "title": scenario.title,
        "status": "completed",
        "error": None,
        "threads": int(threads),
        "config": scenario.config,
        "counts": {"dim": grid.dim, "cells": int(np.prod(grid.shape)), "steps": 0},
        "clamp_events": 0,
        "extrema": {},
        "series": [_series_entry(scenario, state, 0.0, T0_max, Y0_max)],
        "front": {},
        "outputs": [],
        "wall_time_s": 0.0,
    }

    snapshots_1d = []  # (t, T copy) for the profile figure
    snapshot_index = 0

    def snapshot(t: float) -> None:
        nonlocal snapshot_index
        if out_path is not None:
            _write_snapshot(scenario, state, t, snapshot_index, out_path, manifest)
        if grid.dim == 1 and plan.figures:
            snapshots_1d.append((t, state.T.interior.copy()))
        snapshot_index += 1

    snapshot(0.0)
    _sample_fronts(scenario, state, 0.0, traces)

    t = 0.0
    steps = 0
    clamp_total = 0
    T_min = T_max = None
    Y_min = Y_max = None
    max_fuel_increase = -math.inf
    wall_start = time.perf_counter()
    interval = plan.interval
    next_output = min(interval, scenario.t_end) if interval is not None else scenario.t_end
    error: Optional[DivergenceError] = None

    try:
        while t < scenario.t_end - _TIME_EPS * max(1.0, scenario.t_end):
            dt = stable_dt(state, rhs)
            dt = min(dt, scenario.t_end - t, next_output - t + 0.0)
            if not dt > 0.0 or t + dt == t:
                raise DivergenceError("time step underflow", (), step=steps)
            prev_Y = state.Y.interior.copy()
            try:
                state, clamped = advance(state, dt, rhs, scenario.scheme)
            except DivergenceError as err:
                err.step = steps
                raise
            clamp_total += clamped
            t += dt
            steps += 1

            T_it = state.T.interior
            Y_it = state.Y.interior
            if not np.all(np.isfinite(T_it)):
                bad = tuple(int(i) for i in np.argwhere(~np.isfinite(T_it))[0])
                raise DivergenceError("temperature field", bad, step=steps)
            step_min, step_max = float(T_it.min()), float(T_it.max())
            T_min = step_min if T_min is None else min(T_min, step_min)
            T_max = step_max if T_max is None else max(T_max, step_max)
            y_lo, y_hi = float(Y_it.min()), float(Y_it.max())
            Y_min = y_lo if Y_min is None else min(Y_min, y_lo)
            Y_max = y_hi if Y_max is None else max(Y_max, y_hi)
            max_fuel_increase = max(max_fuel_increase, float((Y_it - prev_Y).max()))

            _sample_fronts(scenario, state, t, traces)
            if t >= next_output - _TIME_EPS * max(1.0, next_output):
                manifest["series"].append(
                    _series_entry(scenario, state, t, T0_max, Y0_max))
                snapshot(t)
                if interval is not None:
                    next_output = min(next_output + interval, scenario.t_end)
                if not quiet:
                    print(f"t={t:g} T in [{step_min:.6g}, {step_max:.6g}]")
    except DivergenceError as err:
        if err.step is None:
            err.step = steps
        error = err
        manifest["status"] = "diverged"
        manifest["error"] = {"message": str(err), "step": err.step,
                             "cell": list(err.location)}

    wall = time.perf_counter() - wall_start
    init = manifest["series"][0]
    manifest["counts"]["steps"] = steps
    manifest["clamp_events"] = int(clamp_total)
    manifest["wall_time_s"] = float(wall)
    manifest["extrema"] = {
        "T_min": float(init["T_min"] if T_min is None else min(T_min, init["T_min"])),
        "T_max": float(init["T_max"] if T_max is None else max(T_max, init["T_max"])),
        "Y_min": float(init["Y_min"] if Y_min is None else min(Y_min, init["Y_min"])),
        "Y_max": float(init["Y_max"] if Y_max is None else max(Y_max, init["Y_max"])),
        "max_fuel_increase": float(max_fuel_increase if steps else 0.0),
    }

    # spread-rate fits per traced direction
    fits = {}
    for direction, trace in traces.items():
        entry = {"samples": len(trace), "speed": None, "residual": None,
                 "window": None}
        window = plan.front.window if plan.front else None
        if window is None:
            window = (0.5 * scenario.t_end, scenario.t_end)
        try:
            slope, residual = trace.fit(window)
            sign = +1.0 if direction[0] == "+" else -1.0
            entry.update(speed=float(sign * slope), residual=float(residual),
                         window=[float(window[0]), float(window[1])])
        except ValueError:
            pass  # not enough samples; recorded as unfitted
        fits[direction] = entry
        manifest["front"][direction] = entry

    if out_path is not None:
        for direction, trace in traces.items():
            outputs.write_front_trace_csv(
                out_path / f"front_trace_{direction}.csv", trace)
        if plan.figures:
            if grid.dim == 1 and snapshots_1d:
                plots.save_profile_figure(grid, snapshots_1d,
                                          out_path / "fig_temperature.png")
            elif grid.dim == 2:
                plots.save_heatmap_figure(grid, state.T.interior,
                                          out_path / "fig_temperature.png")
            if traces:
                plots.save_front_figure(traces, fits, out_path / "fig_front.png")
        outputs.write_manifest(out_path / outputs.MANIFEST_NAME, manifest)

    if error is not None:
        raise error
    return RunResult(manifest=manifest, state=state, traces=traces, out_dir=out_path)


def run_reduced_weber(scenario: Scenario, out_dir=None, threads: int = 1,
                      quiet: bool = True) -> RunResult:
    """The plain run loop on the reduced nondimensional setup, recording the
    decay + fuel-reservoir sup-norm bound alongside each output time."""
    check_reduced_preset(scenario)
    scenario.reduced_bound = True
    return run(scenario, out_dir=out_dir, threads=threads, quiet=quiet)
