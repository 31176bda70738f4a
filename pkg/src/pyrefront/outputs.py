"""File outputs: delimited rasters, 16-bit PGM images, front-trace CSVs,
run manifests, and wave-speed reports.

CSV rasters hold one grid row per line (axis 0 of the array) with full
float precision so re-runs can be compared bitwise. PGM files scale the
field linearly onto [0, 65535]; the (lo, hi) window is recorded both in
the file's comment line and in the manifest entry.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import numpy as np
import yaml

MANIFEST_NAME = "manifest.yaml"


def write_raster_csv(path, values: np.ndarray) -> None:
    np.savetxt(path, np.atleast_1d(values), fmt="%.17g", delimiter=",")


def read_raster_csv(path) -> np.ndarray:
    return np.atleast_1d(np.loadtxt(path, delimiter=","))


def write_raster_pgm(path, values: np.ndarray,
                     lo: Optional[float] = None, hi: Optional[float] = None
                     ) -> tuple[float, float]:
    """16-bit binary PGM with linear scaling; returns the window used."""
    img = np.atleast_2d(np.asarray(values, dtype=float))
    lo = float(np.min(img)) if lo is None else float(lo)
    hi = float(np.max(img)) if hi is None else float(hi)
    if hi > lo:
        scaled = np.clip((img - lo) / (hi - lo), 0.0, 1.0)
    else:
        scaled = np.zeros_like(img)
    pixels = np.round(scaled * 65535.0).astype(">u2")
    height, width = pixels.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n# scale lo={lo!r} hi={hi!r}\n{width} {height}\n65535\n"
                 .encode("ascii"))
        fh.write(pixels.tobytes())
    return lo, hi


def write_front_trace_csv(path, trace) -> None:
    """Columns: time [s], position [m], speed_to_date [m/s]."""
    running = trace.speed_to_date()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("time,position,speed_to_date\n")
        for t, x, s in zip(trace.times, trace.positions, running):
            fh.write(f"{t:.17g},{x:.17g},{s:.17g}\n")


def write_manifest(path, manifest: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        yaml.safe_dump(manifest, fh, sort_keys=False, default_flow_style=False)


def load_manifest(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return yaml.safe_load(fh)


def write_wave_scan_csv(path, scan) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("speed,mismatch\n")
        for c, m in zip(scan.speeds, scan.mismatches):
            fh.write(f"{c:.17g},{m:.17g}\n")


def write_wave_report(path, problem, scan) -> None:
    """Parameters, roots, and residual mismatches of one speed scan."""
    p = problem.params
    report = {
        "parameters": {"rho": p.rho, "c": p.c, "k": p.k, "h": p.h,
                       "T_inf": p.T_inf, "T_bar": p.T_bar, "S": p.S, "A_L": p.A_L},
        "advection_speed": problem.v,
        "unburned_fuel": problem.Y0,
        "bracket": [problem.c_lo, problem.c_hi],
        "scan_points": int(problem.n_scan),
        "roots": [float(r) for r in scan.roots],
        "mismatch_residuals": [float(m) for m in scan.root_mismatches],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        yaml.safe_dump(report, fh, sort_keys=False)


def write_bench_csv(path, rows: list[dict]) -> None:
    if not rows:
        return
    keys = list(rows[0].keys())
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(keys) + "\n")
        for row in rows:
            fh.write(",".join(f"{row[k]!r}" if isinstance(row[k], str) else
                              f"{row[k]:.8g}" if isinstance(row[k], float) else
                              str(row[k]) for k in keys) + "\n")


def ensure_dir(path) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out
