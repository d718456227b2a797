"""Processes, workloads, and the half-tick time type.

All simulator time is kept as an integer count of half-ticks so that
median quanta over an even number of bursts stay exact.
"""

from __future__ import annotations

import csv
import io
import json
import random
import re
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Literal, Sequence, Union

TickLike = Union["Ticks", int, float, str, Fraction, Decimal]

_TEXT_NUMBER = re.compile(r"^-?\d+(\.[05])?$")


class WorkloadParseError(ValueError):
    """Malformed workload text. Carries the 1-based line (and column if known)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class WorkloadValidationError(ValueError):
    def __init__(self, violations: Sequence["Violation"]):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True, order=True, slots=True)
class Ticks:
    """Exact time value with 0.5-tick resolution, stored as half-ticks."""

    halves: int

    @classmethod
    def of(cls, value: TickLike) -> Ticks:
        if isinstance(value, Ticks):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not time values")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, str):
            text = value.strip()
            if not _TEXT_NUMBER.match(text):
                raise ValueError(f"{value!r} is not a whole or half tick value")
            value = Fraction(text)
        doubled = Fraction(value) * 2
        if doubled.denominator != 1:
            raise ValueError(f"{value!r} is not a multiple of half a tick")
        return cls(int(doubled))

    @classmethod
    def from_fraction_half_up(cls, value: Fraction) -> Ticks:
        """Nearest half-tick to ``value``, ties rounded upward."""
        doubled = Fraction(value) * 2
        return cls((doubled.numerator * 2 + doubled.denominator) // (2 * doubled.denominator))

    def __add__(self, other: Ticks) -> Ticks:
        return Ticks(self.halves + other.halves)

    def __sub__(self, other: Ticks) -> Ticks:
        return Ticks(self.halves - other.halves)

    def __mul__(self, k: int) -> Ticks:
        if not isinstance(k, int):
            return NotImplemented
        return Ticks(self.halves * k)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.halves != 0

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.halves, 2)

    @property
    def is_whole(self) -> bool:
        return self.halves % 2 == 0

    def to_json(self) -> int | float:
        return self.halves // 2 if self.is_whole else self.halves / 2

    def __str__(self) -> str:
        whole, half = divmod(abs(self.halves), 2)
        sign = "-" if self.halves < 0 else ""
        return f"{sign}{whole}.5" if half else f"{sign}{whole}"

    def __repr__(self) -> str:
        return f"Ticks({self})"


ZERO = Ticks(0)


@dataclass(frozen=True, slots=True)
class Process:
    pid: int
    arrival: Ticks
    burst: Ticks

    @classmethod
    def make(cls, pid: int, arrival: TickLike, burst: TickLike) -> Process:
        return cls(int(pid), Ticks.of(arrival), Ticks.of(burst))


@dataclass(frozen=True)
class Workload:
    processes: tuple[Process, ...]
    label: str = ""
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "processes", tuple(self.processes))

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[int, TickLike, TickLike]], label: str = "") -> Workload:
        return cls(tuple(Process.make(*row) for row in rows), label=label)

    def __len__(self) -> int:
        return len(self.processes)

    def __iter__(self):
        return iter(self.processes)

    @property
    def pids(self) -> tuple[int, ...]:
        return tuple(p.pid for p in self.processes)

    def by_pid(self) -> dict[int, Process]:
        return {p.pid: p for p in self.processes}

    def same_jobs(self, other: Workload) -> bool:
        """True when both hold identical processes, ignoring label and seed."""
        return self.processes == other.processes


@dataclass(frozen=True)
class Violation:
    kind: Literal["empty", "duplicate_pid", "burst", "arrival"]
    pid: int | None = None
    field: str | None = None
    detail: str = ""

    def __str__(self) -> str:
        return self.detail


def validate(workload: Workload) -> list[Violation]:
    """Every invariant violation in ``workload``; an empty list means valid."""
    found: list[Violation] = []
    if not workload.processes:
        found.append(Violation("empty", detail="workload has no processes"))
    seen: set[int] = set()
    reported: set[int] = set()
    for p in workload.processes:
        if p.pid in seen and p.pid not in reported:
            reported.add(p.pid)
            found.append(Violation("duplicate_pid", p.pid, "pid", f"duplicate pid {p.pid}"))
        seen.add(p.pid)
        if p.burst.halves <= 0:
            found.append(Violation("burst", p.pid, "burst", f"pid {p.pid}: burst must be > 0, got {p.burst}"))
        if p.arrival.halves < 0:
            found.append(
                Violation("arrival", p.pid, "arrival", f"pid {p.pid}: arrival must be >= 0, got {p.arrival}")
            )
    return found


def check(workload: Workload) -> Workload:
    problems = validate(workload)
    if problems:
        raise WorkloadValidationError(problems)
    return workload


# --- parsing / serialization ---------------------------------------------

_FIELDS = ("pid", "arrival", "burst")


def parse_workload(text: str, format: Literal["csv", "json"] = "csv", label: str = "") -> Workload:
    if format == "csv":
        rows = _parse_csv(text)
    elif format == "json":
        rows = _parse_json(text)
    else:
        raise ValueError(f"unknown workload format {format!r}")
    return check(Workload(tuple(rows), label=label))


def _parse_csv(text: str) -> list[Process]:
    if text.startswith("﻿"):
        text = text[1:]
    out = []
    reader = csv.reader(io.StringIO(text, newline=""))
    for row in reader:
        lineno = reader.line_num
        cells = [c.strip() for c in row]
        if not cells or all(c == "" for c in cells):
            continue
        if not out and [c.lower() for c in cells] == list(_FIELDS):
            continue
        if len(cells) != 3:
            raise WorkloadParseError(f"expected 3 columns (pid, arrival, burst), got {len(cells)}", lineno)
        column = 1
        try:
            pid = int(cells[0])
            column = 2
            arrival = Ticks.of(cells[1])
            column = 3
            burst = Ticks.of(cells[2])
        except ValueError as exc:
            raise WorkloadParseError(f"{_FIELDS[column - 1]}: {exc}", lineno, column) from None
        out.append(Process(pid, arrival, burst))
    return out


def _parse_json(text: str) -> list[Process]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkloadParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, list):
        raise WorkloadParseError("top-level value must be an array of process objects")
    out = []
    for index, item in enumerate(data):
        if not isinstance(item, dict) or set(item) != set(_FIELDS):
            raise WorkloadParseError(f"element {index} must be an object with keys pid, arrival, burst")
        pid = item["pid"]
        if isinstance(pid, bool) or not isinstance(pid, int):
            raise WorkloadParseError(f"element {index}: pid must be an integer")
        try:
            arrival, burst = _json_ticks(item["arrival"]), _json_ticks(item["burst"])
        except (TypeError, ValueError) as exc:
            raise WorkloadParseError(f"element {index}: {exc}") from None
        out.append(Process(pid, arrival, burst))
    return out


def _json_ticks(value) -> Ticks:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TypeError(f"{value!r} is not a number")
    return Ticks.of(value)


def dump_workload(workload: Workload, format: Literal["csv", "json"] = "csv") -> str:
    if format == "csv":
        buf = io.StringIO(newline="")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_FIELDS)
        for p in workload.processes:
            writer.writerow([p.pid, str(p.arrival), str(p.burst)])
        return buf.getvalue()
    if format == "json":
        rows = [{"pid": p.pid, "arrival": p.arrival.to_json(), "burst": p.burst.to_json()} for p in workload]
        return json.dumps(rows, indent=2) + "\n"
    raise ValueError(f"unknown workload format {format!r}")


# --- synthetic generation ------------------------------------------------

Pattern = Literal["increasing", "decreasing", "random"]


def generate_workload(
    pattern: Pattern,
    n: int,
    burst_range: tuple[TickLike, TickLike] = (1, 100),
    arrival_gap_range: tuple[TickLike, TickLike] = (0, 10),
    seed: int = 0,
) -> Workload:
    """Seeded synthetic workload.

    Bursts and inter-arrival gaps are drawn uniformly over whole ticks inside
    the (inclusive) ranges. The first process always arrives at 0; each later
    arrival adds one gap. Bursts are then ordered according to ``pattern``.
    """
    if pattern not in ("increasing", "decreasing", "random"):
        raise ValueError(f"unknown pattern {pattern!r}")
    if n < 1:
        raise WorkloadValidationError([Violation("empty", detail=f"n must be >= 1, got {n}")])
    b_lo, b_hi = _whole_bounds(burst_range, "burst_range")
    g_lo, g_hi = _whole_bounds(arrival_gap_range, "arrival_gap_range")
    if b_lo < 1:
        raise WorkloadValidationError([Violation("burst", field="burst", detail="burst_range lower bound must be > 0")])
    if g_lo < 0:
        raise WorkloadValidationError(
            [Violation("arrival", field="arrival", detail="arrival_gap_range lower bound must be >= 0")]
        )

    rng = random.Random(seed)
    bursts = [rng.randint(b_lo, b_hi) for _ in range(n)]
    arrivals = [0]
    for _ in range(n - 1):
        arrivals.append(arrivals[-1] + rng.randint(g_lo, g_hi))
    if pattern == "increasing":
        bursts.sort()
    elif pattern == "decreasing":
        bursts.sort(reverse=True)

    procs = tuple(Process(i + 1, Ticks(2 * a), Ticks(2 * b)) for i, (a, b) in enumerate(zip(arrivals, bursts)))
    return Workload(procs, label=f"{pattern} n={n} seed={seed}", seed=seed)


def _whole_bounds(bounds: tuple[TickLike, TickLike], name: str) -> tuple[int, int]:
    lo, hi = (Ticks.of(b) for b in bounds)
    lo_whole = -(-lo.halves // 2)
    hi_whole = hi.halves // 2
    if lo_whole > hi_whole:
        raise WorkloadValidationError(
            [Violation("empty", field=name, detail=f"{name} [{lo}, {hi}] contains no whole tick")]
        )
    return lo_whole, hi_whole
