"""Per-process and aggregate scheduling metrics.

Everything is kept as exact rationals; rounding only happens in
:func:`display`, half-up, to the precision the comparison tables use.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Sequence

from .engine import EngineConfig, Timeline
from .policies import PolicySpec
from .quantum_stats import Criteria, EightyPercent, QuantumPair, criteria_quantum, eighty_percent_check
from .workload import Ticks, Workload


class MetricsError(ValueError):
    pass


def display(value: Fraction | int | Ticks, places: int) -> Decimal:
    """Round half-up to ``places`` decimals."""
    if isinstance(value, Ticks):
        value = value.fraction
    value = Fraction(value)
    scale = 10**places
    scaled = value * scale
    n = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    return Decimal(n).scaleb(-places)


@dataclass(frozen=True)
class ProcessMetrics:
    pid: int
    completion: Ticks
    turnaround: Ticks
    waiting: Ticks
    response: Ticks


@dataclass(frozen=True)
class CriteriaReport:
    quanta: QuantumPair
    value: Criteria
    eighty: EightyPercent


@dataclass(frozen=True)
class RunSummary:
    policy: PolicySpec
    workload: Workload
    per_process: tuple[ProcessMetrics, ...]
    avg_tat: Fraction
    avg_wt: Fraction
    avg_response: Fraction
    context_switches: int
    cpu_time: Ticks
    total_time: Ticks
    makespan: Ticks
    idle: Ticks
    throughput: Fraction
    cpu_utilization: Fraction
    quanta_sequence: tuple[Ticks, ...]
    criteria: CriteriaReport | None = None

    @property
    def quanta_label(self) -> str:
        return ",".join(str(q) for q in self.quanta_sequence)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.policy.name,
            "policy": str(self.policy),
            "quanta": self.quanta_label,
            "avg_tat": str(display(self.avg_tat, 1)),
            "avg_wt": str(display(self.avg_wt, 1)),
            "avg_response": str(display(self.avg_response, 1)),
            "cs": self.context_switches,
            "cpu_time": self.cpu_time.to_json(),
            "total_time": self.total_time.to_json(),
            "makespan": self.makespan.to_json(),
            "idle": self.idle.to_json(),
            "throughput": str(display(self.throughput, 2)),
            "throughput_exact": str(self.throughput),
            "cpu_util": str(display(self.cpu_utilization * 100, 1)),
            "criteria": None
            if self.criteria is None
            else {
                "mtq": self.criteria.quanta.mtq.to_json(),
                "utq": self.criteria.quanta.utq.to_json(),
                "m": self.criteria.quanta.m,
                "exact": str(self.criteria.value.exact),
                "value": str(self.criteria.value.display),
                "below_fraction": str(display(self.criteria.eighty.fraction, 2)),
                "passes_80": self.criteria.eighty.passed,
            },
            "processes": [
                {
                    "pid": p.pid,
                    "completion": p.completion.to_json(),
                    "turnaround": p.turnaround.to_json(),
                    "waiting": p.waiting.to_json(),
                    "response": p.response.to_json(),
                }
                for p in self.per_process
            ],
        }


def context_switches(timeline: Timeline) -> int:
    """Boundaries between consecutive slices, same-process boundaries included."""
    if not timeline.slices:
        raise MetricsError("empty timeline")
    return len(timeline.slices) - 1


def context_switches_by_rounds(timeline: Timeline) -> int:
    """The same count taken as (sum of per-round slice counts) - 1."""
    if not timeline.rounds:
        raise MetricsError("empty timeline")
    return sum(timeline.round_sizes) - 1


def workload_criteria(workload: Workload, policy: PolicySpec) -> CriteriaReport | None:
    """CRITERIA for the whole burst set, as if every process were ready at once."""
    if not policy.is_dynamic:
        return None
    bursts = [p.burst for p in workload]
    pair = QuantumPair.from_bursts(bursts)
    if policy.kind == "srbrr":
        # one quantum for every position
        pair = QuantumPair(pair.mtq, pair.mtq, len(bursts))
    value = criteria_quantum(pair, len(bursts))
    return CriteriaReport(pair, value, eighty_percent_check(bursts, value.exact))


def summarize(timeline: Timeline, workload: Workload, config: EngineConfig | None = None) -> RunSummary:
    cst = (config or EngineConfig()).context_switch_time
    procs = workload.by_pid()
    first_start: dict[int, Ticks] = {}
    for s in timeline.slices:
        first_start.setdefault(s.pid, s.start)
    completion = timeline.completion_times()
    if set(completion) != set(procs) or set(first_start) != set(procs):
        raise MetricsError("timeline and workload cover different pids")

    rows = []
    for p in workload:
        ct = completion[p.pid]
        tat = ct - p.arrival
        rows.append(ProcessMetrics(p.pid, ct, tat, tat - p.burst, first_start[p.pid] - p.arrival))

    n = len(rows)
    ncs = context_switches(timeline)
    cpu_time = sum((p.burst for p in workload), Ticks(0))
    total_time = cpu_time + cst * ncs

    if timeline.policy.kind == "rr":
        quanta = (timeline.policy.fixed_quantum,)
    else:
        quanta = tuple(q for r in timeline.rounds for q in r.quanta)

    return RunSummary(
        policy=timeline.policy,
        workload=workload,
        per_process=tuple(rows),
        avg_tat=sum(r.turnaround.fraction for r in rows) / n,
        avg_wt=sum(r.waiting.fraction for r in rows) / n,
        avg_response=sum(r.response.fraction for r in rows) / n,
        context_switches=ncs,
        cpu_time=cpu_time,
        total_time=total_time,
        makespan=timeline.makespan,
        idle=timeline.idle,
        throughput=Fraction(n) / total_time.fraction,
        cpu_utilization=cpu_time.fraction / total_time.fraction,
        quanta_sequence=quanta,
        criteria=workload_criteria(workload, timeline.policy),
    )


@dataclass(frozen=True)
class ComparisonRow:
    algorithm: str
    policy: PolicySpec
    quanta: str
    avg_tat: Fraction
    avg_wt: Fraction
    cs: int
    throughput: Fraction
    makespan: Ticks

    def display_cells(self) -> dict[str, str]:
        return {
            "algorithm": self.algorithm,
            "time_quantum": self.quanta,
            "avg_tat": str(display(self.avg_tat, 1)),
            "avg_wt": str(display(self.avg_wt, 1)),
            "cs": str(self.cs),
            "throughput": str(display(self.throughput, 2)),
            "makespan": str(self.makespan),
        }


@dataclass(frozen=True)
class ComparisonTable:
    workload: Workload
    rows: tuple[ComparisonRow, ...]


def compare(summaries: Sequence[RunSummary]) -> ComparisonTable:
    if not summaries:
        raise MetricsError("nothing to compare")
    base = summaries[0].workload
    for s in summaries[1:]:
        if not s.workload.same_jobs(base):
            raise MetricsError("summaries were computed over different workloads")
    rows = tuple(
        ComparisonRow(
            s.policy.name,
            s.policy,
            s.quanta_label,
            s.avg_tat,
            s.avg_wt,
            s.context_switches,
            s.throughput,
            s.makespan,
        )
        for s in summaries
    )
    return ComparisonTable(base, rows)
