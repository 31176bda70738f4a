"""Figure rendering for run and analysis reports (Agg backend, PNG files)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_profile_figure(grid, snapshots, path, ylabel="temperature [K]"):
    """Overlaid 1D profiles at the sampled output times."""
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    x = grid.coords(0)
    for t, values in snapshots:
        ax.plot(x, values, lw=1.2, label=f"t = {t:g} s")
    ax.set_xlabel("x [m]")
    ax.set_ylabel(ylabel)
    if len(snapshots) <= 12:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_heatmap_figure(grid, values, path, title="temperature [K]"):
    """2D field as an image; axis 0 of the array is the x axis."""
    fig, ax = plt.subplots(figsize=(5.8, 4.6))
    x0, x1 = grid.origin[0], grid.origin[0] + grid.shape[0] * grid.spacing[0]
    y0, y1 = grid.origin[1], grid.origin[1] + grid.shape[1] * grid.spacing[1]
    im = ax.imshow(np.asarray(values).T, origin="lower", extent=(x0, x1, y0, y1),
                   aspect="equal", cmap="inferno")
    fig.colorbar(im, ax=ax, label=title)
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_front_figure(traces, fits, path):
    """Front position vs time per traced direction, with fitted speeds."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for direction, trace in traces.items():
        t = np.asarray(trace.times)
        s = np.asarray(trace.positions)
        label = direction
        fit = fits.get(direction)
        if fit and fit.get("speed") is not None:
            label += f" ({fit['speed']:.3g} m/s)"
        ax.plot(t, s, lw=1.0, label=label)
    ax.set_xlabel("time [s]")
    ax.set_ylabel("front position [m]")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_wave_scan_figure(scan, path):
    """Mismatch against candidate speed with the bisected roots marked."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(scan.speeds, scan.mismatches, lw=1.0)
    ax.axhline(0.0, color="k", lw=0.6)
    for root in scan.roots:
        ax.axvline(root, color="tab:red", lw=0.8, ls="--")
    ax.set_xlabel("candidate wave speed [m/s]")
    ax.set_ylabel("burned-side mismatch [K]")
    ax.set_yscale("symlog")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_bench_figure(rows, path):
    """Throughput per scheme across grid sizes (log-log)."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    schemes = sorted({row["scheme"] for row in rows})
    for scheme in schemes:
        pts = [(row["cells"], row["cell_updates_per_s"]) for row in rows
               if row["scheme"] == scheme]
        pts.sort()
        ax.loglog([p[0] for p in pts], [p[1] for p in pts], "o-", label=scheme)
    ax.set_xlabel("cells")
    ax.set_ylabel("cell updates / s")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
