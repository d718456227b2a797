"""Command-line entry point: ``rrsched {run,compare,generate,gantt,reproduce}``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .engine import EngineConfig, simulate
from .metrics import compare, summarize
from .policies import PolicyError, PolicySpec
from .report import GanttSizeError, render_comparison, render_gantt, render_summary
from .reproduce import reproduce_all
from .workload import (
    Ticks,
    WorkloadParseError,
    WorkloadValidationError,
    dump_workload,
    generate_workload,
    parse_workload,
)


class UsageError(Exception):
    pass


def _ticks(text: str) -> Ticks:
    try:
        return Ticks.of(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _policy(text: str) -> PolicySpec:
    try:
        return PolicySpec.parse(text)
    except PolicyError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_workload_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--workload", metavar="PATH", help="CSV or JSON workload file")
    p.add_argument("--pattern", choices=("increasing", "decreasing", "random"), help="generate instead of reading")
    p.add_argument("--n", type=int, metavar="COUNT", help="number of generated processes")
    p.add_argument("--seed", type=int, default=0, metavar="N")
    p.add_argument("--burst-range", nargs=2, type=_ticks, default=None, metavar=("LO", "HI"))
    p.add_argument("--gap-range", nargs=2, type=_ticks, default=None, metavar=("LO", "HI"))


def _add_output_args(p: argparse.ArgumentParser, formats: tuple[str, ...], default: str) -> None:
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--out", metavar="PATH", help="write here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rrsched", description="Round-robin scheduling simulator (RR, SRBRR, MDTQRR).")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate one policy and print its metrics")
    _add_workload_args(run)
    run.add_argument("--policy", type=_policy, action="append", required=True, metavar="SPEC")
    run.add_argument("--cst", type=_ticks, default=Ticks(0), metavar="TICKS")
    run.add_argument("--gantt", action="store_true", help="append an ASCII Gantt chart (plain format only)")
    _add_output_args(run, ("plain", "markdown", "csv", "json"), "plain")

    cmp_ = sub.add_parser("compare", help="simulate several policies on one workload")
    _add_workload_args(cmp_)
    cmp_.add_argument("--policy", type=_policy, action="append", required=True, metavar="SPEC")
    cmp_.add_argument("--cst", type=_ticks, default=Ticks(0), metavar="TICKS")
    _add_output_args(cmp_, ("plain", "markdown", "csv", "json"), "plain")

    gen = sub.add_parser("generate", help="write a seeded synthetic workload")
    gen.add_argument("--pattern", choices=("increasing", "decreasing", "random"), default="random")
    gen.add_argument("--n", type=int, default=5, metavar="COUNT")
    gen.add_argument("--seed", type=int, default=0, metavar="N")
    gen.add_argument("--burst-range", nargs=2, type=_ticks, default=None, metavar=("LO", "HI"))
    gen.add_argument("--gap-range", nargs=2, type=_ticks, default=None, metavar=("LO", "HI"))
    _add_output_args(gen, ("csv", "json"), "csv")

    gantt = sub.add_parser("gantt", help="render the Gantt chart of one run")
    _add_workload_args(gantt)
    gantt.add_argument("--policy", type=_policy, action="append", required=True, metavar="SPEC")
    gantt.add_argument("--cst", type=_ticks, default=Ticks(0), metavar="TICKS")
    gantt.add_argument("--width", type=int, default=None)
    gantt.add_argument("--rounds", action="store_true", help="mark round boundaries")
    _add_output_args(gantt, ("plain", "svg"), "plain")

    rep = sub.add_parser("reproduce", help="re-run the three published cases and flag differences")
    rep.add_argument("--json", action="store_true", help="machine-readable verdict")
    _add_output_args(rep, ("plain", "markdown", "json"), "plain")
    return parser


def _load_workload(args):
    if args.workload and args.pattern:
        raise UsageError("give either --workload or --pattern/--n, not both")
    if args.workload:
        path = Path(args.workload)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        fmt = "json" if path.suffix.lower() == ".json" else "csv"
        return parse_workload(text, fmt, label=path.name)
    if args.pattern:
        if args.n is None:
            raise UsageError("--pattern needs --n")
        return _generate(args)
    raise UsageError("need --workload PATH or --pattern with --n")


def _generate(args):
    kwargs = {}
    if args.burst_range:
        kwargs["burst_range"] = tuple(args.burst_range)
    if args.gap_range:
        kwargs["arrival_gap_range"] = tuple(args.gap_range)
    return generate_workload(args.pattern, args.n, seed=args.seed, **kwargs)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _single_policy(args) -> PolicySpec:
    if len(args.policy) != 1:
        raise UsageError(f"{args.command} takes exactly one --policy")
    return args.policy[0]


def cmd_run(args) -> int:
    policy = _single_policy(args)
    workload = _load_workload(args)
    config = EngineConfig(args.cst)
    timeline = simulate(workload, policy, config)
    text = render_summary(summarize(timeline, workload, config), args.format)
    if args.gantt and args.format == "plain":
        text += "\n" + render_gantt(timeline, "ascii", show_rounds=True)
    _emit(text, args.out)
    return 0


def cmd_compare(args) -> int:
    if len(args.policy) < 2:
        raise UsageError("compare needs at least two --policy options")
    workload = _load_workload(args)
    config = EngineConfig(args.cst)

    def one(policy):
        return summarize(simulate(workload, policy, config), workload, config)

    with ThreadPoolExecutor() as pool:
        summaries = list(pool.map(one, args.policy))
    _emit(render_comparison(compare(summaries), args.format), args.out)
    return 0


def cmd_generate(args) -> int:
    _emit(dump_workload(_generate(args), args.format), args.out)
    return 0


def cmd_gantt(args) -> int:
    policy = _single_policy(args)
    workload = _load_workload(args)
    timeline = simulate(workload, policy, EngineConfig(args.cst))
    style = "svg" if args.format == "svg" else "ascii"
    _emit(render_gantt(timeline, style, args.width, args.rounds), args.out)
    return 0


def cmd_reproduce(args) -> int:
    results = reproduce_all()
    failures = [c for _, _, checks in results for c in checks if c.status == "mismatch"]
    as_json = args.json or args.format == "json"
    if as_json:
        verdict = {
            "ok": not failures,
            "cases": [
                {
                    "case": case.id,
                    "pattern": case.pattern,
                    "rows": [row.display_cells() for row in table.rows],
                    "cells": [c.__dict__ for c in checks],
                }
                for case, table, checks in results
            ],
        }
        _emit(json.dumps(verdict, indent=2) + "\n", args.out)
    else:
        fmt = "markdown" if args.format == "markdown" else "plain"
        parts = []
        for case, table, checks in results:
            parts.append(f"Case {case.id} ({case.pattern} bursts)\n")
            parts.append(render_comparison(table, fmt))
            for c in checks:
                if c.status != "match":
                    parts.append(
                        f"  {c.status.upper()}: {c.policy} {c.column} printed {c.printed}, computed {c.computed}"
                        + (f" ({c.note})" if c.note else "")
                        + "\n"
                    )
            parts.append("\n")
        parts.append("all non-erratum cells match\n" if not failures else f"{len(failures)} cell(s) differ\n")
        _emit("".join(parts), args.out)
    for c in failures:
        print(f"mismatch: case {c.case} {c.policy} {c.column}: printed {c.printed}, computed {c.computed}", file=sys.stderr)
    return 1 if failures else 0


COMMANDS = {
    "run": cmd_run,
    "compare": cmd_compare,
    "generate": cmd_generate,
    "gantt": cmd_gantt,
    "reproduce": cmd_reproduce,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))  # exits 2
    except (WorkloadParseError, WorkloadValidationError, GanttSizeError, PolicyError, ValueError) as exc:
        print(f"rrsched: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
