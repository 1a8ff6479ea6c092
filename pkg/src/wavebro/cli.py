"""Command-line front end: run, sweep and validate.

Exit codes: 0 success, 2 scenario parse/validation error, 3 infeasible sea
state, 4 overload, 5 validation-suite failure. The default output directory
is WAVEBRO_OUTDIR (falling back to the current directory).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict, replace
from pathlib import Path

from . import engine, scenario
from .errors import InfeasibleSeaStateError, OverloadError, ScenarioError

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_OVERLOAD = 4
EXIT_VALIDATION = 5


def _out_dir(arg: str | None) -> Path:
    path = Path(arg or os.environ.get("WAVEBRO_OUTDIR", "."))
    path.mkdir(parents=True, exist_ok=True)
    return path


def _load(path_arg: str) -> engine.Scenario:
    path = Path(path_arg)
    if path.exists():
        return scenario.load_scenario(path)
    # fall back to the bundled library so `wavebro run humboldt_winter` works
    return scenario.bundled_scenario(path_arg)


def _apply_flags(scn: engine.Scenario, args) -> engine.Scenario:
    if getattr(args, "seed", None) is not None:
        scn = replace(scn, sea=replace(scn.sea, rng_seed=args.seed))
    if getattr(args, "fcd", None) in ("valve", "gen"):
        mode = {"valve": "valve", "gen": "generator"}[args.fcd]
        scn = replace(scn, fcd_mode=mode)
    if getattr(args, "duration", None) is not None:
        scn = replace(scn, duration=args.duration)
    return scn


def cmd_run(args) -> int:
    try:
        scn = _apply_flags(_load(args.scenario), args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    out = _out_dir(args.out)
    try:
        result = engine.run(scn)
    except InfeasibleSeaStateError as exc:
        print(f"infeasible sea state: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OverloadError as exc:
        print(f"overload: {exc}", file=sys.stderr)
        return EXIT_OVERLOAD
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    result.timeseries.to_csv(out / "timeseries.csv")
    summary = result.summary.to_dict()
    (out / "summary.json").write_text(json.dumps(summary, indent=2,
                                                 sort_keys=True) + "\n")
    s = result.summary
    print(f"{scn.name}: SEC {s.sec:.3f} kWh/m^3 (with recovery "
          f"{s.sec_with_gen:.3f}), permeate {s.permeate_per_day:.0f} m^3/day, "
          f"LCOW ${s.lcow:.2f}/m^3, {s.cycles_completed} cycles, "
          f"flags {s.feasibility_flags or 'none'}")
    print(f"wrote {out / 'timeseries.csv'} and {out / 'summary.json'}")
    return EXIT_OK


def _parse_modules(spec: str) -> list[int]:
    try:
        lo, hi, step = (int(part) for part in spec.split(":"))
        if step <= 0 or hi < lo:
            raise ValueError
    except ValueError:
        raise ScenarioError(f"bad module range {spec!r}; expected LO:HI:STEP")
    return list(range(lo, hi + 1, step))


def cmd_sweep(args) -> int:
    try:
        base = _apply_flags(_load(args.scenario), args)
        sea_states = (scenario.load_sea_state_specs(args.sea_states)
                      if args.sea_states else None)
        modules = _parse_modules(args.modules) if args.modules else None
        if args.fcd == "both":
            fcd_modes = ["valve", "generator"]
        elif args.fcd:
            fcd_modes = [{"valve": "valve", "gen": "generator"}[args.fcd]]
        else:
            fcd_modes = [base.fcd_mode]
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    rows = engine.sweep(base, sea_states=sea_states, modules=modules,
                        fcd_modes=fcd_modes, workers=args.workers)
    out = _out_dir(args.out)
    path = out / "results.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(asdict(rows[0]).keys()))
        writer.writeheader()
        for row in rows:
            writer.writerow(asdict(row))
    feasible = sum(row.feasible for row in rows)
    print(f"wrote {path}: {len(rows)} rows, {feasible} feasible")
    return EXIT_OK


def cmd_validate(_args) -> int:
    from . import validate

    ok = validate.run_all()
    print("all checks passed" if ok else "VALIDATION FAILED")
    return EXIT_OK if ok else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavebro",
        description="Wave-powered batch reverse osmosis plant simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one scenario file")
    p_run.add_argument("scenario", help="scenario file path or bundled name")
    p_run.add_argument("--out", help="output directory")
    p_run.add_argument("--seed", type=int, help="override the wave phase seed")
    p_run.add_argument("--fcd", choices=["valve", "gen"],
                       help="flow-control device mode")
    p_run.add_argument("--duration", type=float, help="override run length (s)")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="grid of sea states / module counts")
    p_sweep.add_argument("scenario", help="base scenario file or bundled name")
    p_sweep.add_argument("--sea-states", dest="sea_states",
                         help="sea-state table (file or bundled name)")
    p_sweep.add_argument("--modules", help="module-count grid LO:HI:STEP")
    p_sweep.add_argument("--fcd", choices=["valve", "gen", "both"],
                         help="FCD mode(s) to report")
    p_sweep.add_argument("--seed", type=int, help="override the wave phase seed")
    p_sweep.add_argument("--duration", type=float, help="override run length (s)")
    p_sweep.add_argument("--out", help="output directory")
    p_sweep.add_argument("--workers", type=int, default=1,
                         help="parallel scenario workers")
    p_sweep.set_defaults(func=cmd_sweep)

    p_val = sub.add_parser("validate", help="run the built-in check suite")
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
