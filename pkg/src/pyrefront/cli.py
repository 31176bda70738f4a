"""Command-line interface.

Exit codes: 0 success, 1 configuration error, 2 runtime divergence.
All artifacts land under --out with fixed names (see README).
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

from . import bench as bench_mod
from . import outputs, plots
from .config import (ConfigError, load_config, parse_config_text, parse_override,
                     resolve_config)
from .driver import run, run_reduced_weber
from .integrate import DivergenceError
from .physics import ModelParameters
from .scenario import build_scenario
from .waves import ShootingProblem, scan_wave_speeds

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DIVERGED = 2


def _add_common(parser, config_required=True):
    parser.add_argument("--config", required=config_required,
                        help="path to a YAML scenario config (may be empty "
                             "for the default preset) or a manifest to re-run")
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY.PATH=VALUE",
                        help="override a config key (repeatable, last wins)")
    parser.add_argument("--threads", type=int, default=1,
                        help="solver thread count (recorded; results are "
                             "thread-count independent)")
    parser.add_argument("--quiet", action="store_true", help="suppress progress output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pyrefront",
                                     description="wildfire spread simulator and "
                                                 "front-speed analysis toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("run", help="advance a scenario and write outputs"))
    _add_common(sub.add_parser("reduced", help="reduced nondimensional run with "
                                               "sup-norm bound recording"))
    _add_common(sub.add_parser("wavespeed", help="travelling-wave speed scan by "
                                                 "the shooting method"))
    sweep = sub.add_parser("sweep", help="run a cartesian product of overrides")
    _add_common(sweep)
    sweep.add_argument("--sweep", dest="sweeps", action="append", default=[],
                       metavar="KEY.PATH=V1,V2,...", required=True,
                       help="values to sweep for one key (repeatable)")

    bench = sub.add_parser("bench", help="throughput benchmark (built-in case)")
    bench.add_argument("--sizes", default="64,128",
                       help="comma-separated per-axis grid sizes")
    bench.add_argument("--reps", type=int, default=3, help="repetitions per case")
    bench.add_argument("--steps", type=int, default=10, help="steps per timing")
    bench.add_argument("--out", default="out")
    bench.add_argument("--quiet", action="store_true")

    _add_common(sub.add_parser("validate-config",
                               help="check a config without running it"))
    return parser


def _load(args) -> dict:
    return load_config(args.config, args.overrides)


def _cmd_run(args) -> int:
    scenario = build_scenario(_load(args))
    result = run(scenario, out_dir=args.out, threads=args.threads, quiet=args.quiet)
    if not args.quiet:
        m = result.manifest
        print(f"completed {m['counts']['steps']} steps, "
              f"T in [{m['extrema']['T_min']:.6g}, {m['extrema']['T_max']:.6g}], "
              f"outputs in {args.out}")
    return EXIT_OK

def _cmd_reduced(args) -> int:
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read config {args.config}: {err}") from err
    raw = parse_config_text(text)
    if "config" in raw and isinstance(raw["config"], dict):
        raw = raw["config"]
    raw.setdefault("scenario", "reduced-weber")  # this subcommand's base preset
    scenario = build_scenario(resolve_config(raw, args.overrides))
    result = run_reduced_weber(scenario, out_dir=args.out, threads=args.threads,
                               quiet=args.quiet)
    if not args.quiet:
        worst = min(entry["margin"] for entry in result.manifest["series"])
        print(f"completed; worst bound margin {worst:.3e}")
    return EXIT_OK


def _cmd_wavespeed(args) -> int:
    cfg = _load(args)
    tw = cfg.get("tw")
    if tw is None:
        raise ConfigError("wavespeed requires a tw section in the config")
    try:
        params = ModelParameters(**{k: float(v) for k, v in cfg["params"].items()})
        bracket = tw.get("bracket", [0.02, 8.0])
        problem = ShootingProblem(
            params=params,
            v=float(tw.get("v", 0.0)),
            Y0=float(tw.get("Y0", 1.0)),
            c_lo=float(bracket[0]), c_hi=float(bracket[1]),
            decay_factor=float(tw.get("decay_factor", 1e8)),
            rtol=float(tw.get("rtol", 1e-8)),
            n_scan=int(tw.get("n_scan", 64)))
    except ValueError as err:
        raise ConfigError(str(err)) from err
    scan = scan_wave_speeds(problem)
    out = outputs.ensure_dir(args.out)
    outputs.write_wave_scan_csv(out / "wavespeed_scan.csv", scan)
    outputs.write_wave_report(out / "wavespeed_report.yaml", problem, scan)
    plots.save_wave_scan_figure(scan, out / "fig_wavespeed.png")
    if not args.quiet:
        roots = ", ".join(f"{r:.6g}" for r in scan.roots) or "none"
        print(f"admissible wave speeds: {roots}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    axes = []
    for expr in args.sweeps:
        path, joined = parse_override(expr)
        if not isinstance(joined, str):
            values = [joined]
        else:
            values = [v.strip() for v in joined.split(",")]
        axes.append([(".".join(path), v) for v in values])
    out_root = outputs.ensure_dir(args.out)
    summary = []
    for index, combo in enumerate(itertools.product(*axes)):
        combo_sets = [f"{key}={value}" for key, value in combo]
        cfg = load_config(args.config, args.overrides + combo_sets)
        scenario = build_scenario(cfg)
        run_dir = out_root / f"run{index:03d}"
        result = run(scenario, out_dir=run_dir, threads=args.threads, quiet=True)
        row = {"run": f"run{index:03d}"}
        row.update({key: value for key, value in combo})
        for direction, entry in result.manifest["front"].items():
            row[f"speed_{direction}"] = (entry["speed"]
                                         if entry["speed"] is not None else "")
        row["T_max"] = result.manifest["extrema"]["T_max"]
        summary.append(row)
        if not args.quiet:
            print(f"run{index:03d}: " + ", ".join(combo_sets))
    outputs.write_bench_csv(out_root / "sweep_summary.csv", summary)
    return EXIT_OK


def _cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in str(args.sizes).split(",") if s.strip()]
    except ValueError as err:
        raise ConfigError(f"--sizes: {err}") from err
    rows = bench_mod.run_benchmark(sizes, repetitions=args.reps, steps=args.steps)
    out = outputs.ensure_dir(args.out)
    outputs.write_bench_csv(out / "bench.csv", rows)
    plots.save_bench_figure(rows, out / "fig_bench.png")
    report = bench_mod.format_report(rows)
    (out / "bench.txt").write_text(report + "\n", encoding="utf-8")
    if not args.quiet:
        print(report)
    return EXIT_OK


def _cmd_validate(args) -> int:
    build_scenario(_load(args))
    print("config ok")
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "reduced": _cmd_reduced,
    "wavespeed": _cmd_wavespeed,
    "sweep": _cmd_sweep,
    "bench": _cmd_bench,
    "validate-config": _cmd_validate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except DivergenceError as err:
        print(f"runtime divergence: {err}", file=sys.stderr)
        return EXIT_DIVERGED


if __name__ == "__main__":
    sys.exit(main())
