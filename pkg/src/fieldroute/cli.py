"""Command-line surface.

Subcommands: solve (one TSPLIB instance), fleet (scenario with machine
costs), bench (suite of seeded runs with CSV output), plot (SVG route map).
Exit codes: 0 success, 2 parse/IO error, 3 constraint violation, 4 benchmark
tolerance failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import (
    ConstraintViolation,
    FieldRouteError,
    InvalidDimensions,
    MalformedRecord,
    NonFiniteCoordinate,
    SchemaViolation,
    UnsupportedEdgeWeightType,
)
from .instance import load_scenario, parse_tsplib, scenario_to_instance
from .plot import render_svg
from .solver import SolverConfig, evolve, run_batch

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONSTRAINT = 3
EXIT_TOLERANCE = 4

_INPUT_ERRORS = (MalformedRecord, UnsupportedEdgeWeightType, SchemaViolation,
                 NonFiniteCoordinate, OSError, json.JSONDecodeError)
_CONSTRAINT_ERRORS = (ConstraintViolation, InvalidDimensions)


@dataclass(frozen=True)
class BenchEntry:
    instance_path: Path
    machine_count: int
    seeds: tuple[int, ...]
    reference_value: float | None = None
    tolerance: float | None = None


@dataclass(frozen=True)
class BenchSuite:
    entries: tuple[BenchEntry, ...]

    @classmethod
    def from_json(cls, text: str, base_dir: Path) -> "BenchSuite":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"suite is not valid JSON: {exc}") from None
        if not isinstance(doc, dict) or not isinstance(doc.get("entries"), list):
            raise SchemaViolation('suite must be {"entries": [...]}')
        if not doc["entries"]:
            raise SchemaViolation("suite has no entries")
        entries = []
        for i, ed in enumerate(doc["entries"]):
            where = f"entries[{i}]"
            if not isinstance(ed, dict):
                raise SchemaViolation(f"{where} must be an object")
            try:
                path = Path(ed["instance"])
                machine_count = int(ed["machine_count"])
                seeds = tuple(int(s) for s in ed["seeds"])
            except (KeyError, TypeError, ValueError) as exc:
                raise SchemaViolation(f"{where}: {exc}") from None
            if not path.is_absolute():
                path = base_dir / path
            tolerance = ed.get("tolerance")
            if tolerance is not None and not tolerance > 0:
                raise SchemaViolation(f"{where}: tolerance must be > 0")
            entries.append(BenchEntry(
                instance_path=path,
                machine_count=machine_count,
                seeds=seeds,
                reference_value=ed.get("reference_value"),
                tolerance=tolerance,
            ))
        return cls(entries=tuple(entries))


def _load_config(args, machine_count: int, seed: int) -> SolverConfig:
    """Config from --config, else FIELDROUTE_CONFIG, else defaults; the
    machine count and seed flags always win."""
    path = getattr(args, "config", None) or os.environ.get("FIELDROUTE_CONFIG")
    if path:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        doc["machine_count"] = machine_count
        doc["seed"] = seed
        try:
            config = SolverConfig.from_dict(doc)
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation(f"bad config document {path}: {exc}") from None
    else:
        config = SolverConfig(machine_count=machine_count, seed=seed)
    if getattr(args, "baseline_ga", False):
        config = replace(config, enable_sa_seed=False, enable_adaptive_crossover=False,
                         enable_adaptive_mutation=False, enable_refine=False)
    return config


def _read_instance(args):
    text = Path(args.instance).read_text(encoding="utf-8")
    rounding = "nint" if getattr(args, "tsplib_round", False) else None
    return parse_tsplib(
        text,
        rounding=rounding,
        att_formula=getattr(args, "att_formula", False),
        depot_node=getattr(args, "depot_node", 1),
    )


def _write_json(doc: dict, out: str) -> None:
    if out == "-":
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        Path(out).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def cmd_solve(args) -> int:
    instance = _read_instance(args)
    config = _load_config(args, machine_count=args.salesmen, seed=args.seed)
    result = evolve(instance, config)
    out = args.out or f"{Path(args.instance).stem}-m{args.salesmen}-s{args.seed}.json"
    _write_json(result.to_dict(), out)
    print(f"{result.best.objective:.6f}")
    return EXIT_OK


def cmd_fleet(args) -> int:
    from . import cost

    scenario = load_scenario(Path(args.scenario).read_text(encoding="utf-8"))
    instance = scenario_to_instance(scenario, name=Path(args.scenario).stem)
    config = _load_config(args, machine_count=scenario.machine_count, seed=args.seed)
    result = evolve(instance, config)
    report = cost.evaluate(result.best.chromosome, scenario)
    doc = report.to_dict()
    task_ids = [t.id for t in scenario.tasks]
    for entry in doc["per_machine"]:
        entry["route_display"] = "→".join(task_ids[i - 1] for i in entry["route"])
    doc["seed"] = args.seed
    doc["chromosome"] = result.best.chromosome.to_dict()
    _write_json(doc, args.out or "fleet-report.json")
    if args.out != "-":
        print(f"distance {report.total_distance:.2f} m, fuel {report.total_fuel:.3f} L, "
              f"time {report.total_time:.4f} h")
    return EXIT_OK


def cmd_bench(args) -> int:
    suite_path = Path(args.suite)
    suite = BenchSuite.from_json(suite_path.read_text(encoding="utf-8"), suite_path.parent)
    rows = []
    failed = False
    for entry in suite.entries:
        instance = parse_tsplib(entry.instance_path.read_text(encoding="utf-8"))
        seeds = list(range(1, args.runs + 1)) if args.runs else list(entry.seeds)
        config = _load_config(args, machine_count=entry.machine_count, seed=seeds[0])
        stats = run_batch(instance, config, seeds, jobs=args.jobs)
        name = instance.name
        for seed, objective, wall in zip(stats.seeds, stats.objectives, stats.wall_times):
            rows.append([name, entry.machine_count, seed, f"{objective:.6f}",
                         f"{wall:.3f}", "", "", "", "", "", "", ""])
        status = ""
        if entry.reference_value is not None:
            tolerance = entry.tolerance if entry.tolerance is not None else 0.10
            bound = entry.reference_value * (1.0 + tolerance)
            status = "pass" if stats.min <= bound else "fail"
            failed = failed or status == "fail"
        rows.append([name, entry.machine_count, "summary", "",
                     f"{stats.wall_times.sum():.3f}", f"{stats.mean:.6f}",
                     f"{stats.min:.6f}", f"{stats.max:.6f}", f"{stats.std:.6f}",
                     "" if entry.reference_value is None else f"{entry.reference_value:.6f}",
                     "" if entry.reference_value is None else f"{(entry.tolerance if entry.tolerance is not None else 0.10):.4f}",
                     status])
        line = f"{name} m={entry.machine_count}: min {stats.min:.2f} mean {stats.mean:.2f}"
        if status:
            line += f" [{status}]"
        print(line)
    header = ["instance", "machines", "seed", "objective", "wall_time_s",
              "mean", "min", "max", "std", "reference", "tolerance", "status"]
    out = args.out or "bench.csv"
    if out == "-":
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows(rows)
    else:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    return EXIT_TOLERANCE if failed else EXIT_OK


def cmd_plot(args) -> int:
    try:
        doc = json.loads(Path(args.result).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"result is not valid JSON: {exc}") from None
    svg = render_svg(doc)
    Path(args.out).write_text(svg, encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fieldroute",
        description="Multi-machine task allocation solver (hybrid SA + adaptive GA)",
    )
    sub = parser.add_subparsers(dest="command")

    p_solve = sub.add_parser("solve", help="solve one TSPLIB instance")
    p_solve.add_argument("--instance", required=True, help="TSPLIB .tsp file")
    p_solve.add_argument("--salesmen", required=True, type=int, help="machine/salesman count")
    p_solve.add_argument("--seed", required=True, type=int)
    p_solve.add_argument("--config", help="solver config JSON (default: $FIELDROUTE_CONFIG)")
    p_solve.add_argument("--out", help="result JSON path (default derived; '-' for stdout)")
    p_solve.add_argument("--tsplib-round", action="store_true",
                         help="nearest-integer TSPLIB distances instead of exact")
    p_solve.add_argument("--att-formula", action="store_true",
                         help="use the ATT pseudo-Euclidean rule for ATT files")
    p_solve.add_argument("--depot-node", type=int, default=1,
                         help="file node id used as the depot (default 1)")
    p_solve.add_argument("--baseline-ga", action="store_true",
                         help="plain-GA baseline: no SA seed, fixed rates, no refinement")
    p_solve.set_defaults(func=cmd_solve)

    p_fleet = sub.add_parser("fleet", help="solve a fleet scenario with machine costs")
    p_fleet.add_argument("--scenario", required=True, help="scenario JSON file")
    p_fleet.add_argument("--seed", required=True, type=int)
    p_fleet.add_argument("--config", help="solver config JSON (default: $FIELDROUTE_CONFIG)")
    p_fleet.add_argument("--out", help="report JSON path ('-' for stdout)")
    p_fleet.add_argument("--baseline-ga", action="store_true")
    p_fleet.set_defaults(func=cmd_fleet)

    p_bench = sub.add_parser("bench", help="run a benchmark suite")
    p_bench.add_argument("--suite", required=True, help="suite JSON file")
    p_bench.add_argument("--runs", type=int,
                         help="override entry seeds with seeds 1..k")
    p_bench.add_argument("--out", help="CSV path (default bench.csv; '-' for stdout)")
    p_bench.add_argument("--jobs", type=int, default=1, help="parallel runs")
    p_bench.add_argument("--config", help="solver config JSON applied to every entry")
    p_bench.add_argument("--baseline-ga", action="store_true")
    p_bench.set_defaults(func=cmd_bench)

    p_plot = sub.add_parser("plot", help="render a result JSON to SVG")
    p_plot.add_argument("--result", required=True, help="SolveResult JSON file")
    p_plot.add_argument("--out", required=True, help="SVG output path")
    p_plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help(sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except _CONSTRAINT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FieldRouteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
