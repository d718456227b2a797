"""Event-driven single-CPU simulator.

The loop plans a round, runs its slices back to back, and abandons the rest
of the round at the first slice boundary where a newly arrived process is
visible. Slices are never cut short by an arrival.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .policies import PolicySpec, ReadyEntry, RoundPlan, plan_round
from .workload import ZERO, Ticks, Workload, check


@dataclass(frozen=True)
class EngineConfig:
    context_switch_time: Ticks = ZERO

    def __post_init__(self):
        object.__setattr__(self, "context_switch_time", Ticks.of(self.context_switch_time))
        if self.context_switch_time.halves < 0:
            raise ValueError("context_switch_time must be >= 0")


@dataclass(frozen=True)
class Slice:
    pid: int
    start: Ticks
    end: Ticks
    assigned_quantum: Ticks
    round_index: int
    completed: bool

    @property
    def executed(self) -> Ticks:
        return self.end - self.start

    def to_json(self) -> dict:
        return {
            "pid": self.pid,
            "start": self.start.to_json(),
            "end": self.end.to_json(),
            "quantum": self.assigned_quantum.to_json(),
            "round": self.round_index,
            "completed": self.completed,
        }


@dataclass(frozen=True)
class RoundRecord:
    index: int
    start: Ticks
    queue_size: int  # processes the plan covered
    executed: int  # k_r: slices actually run before the round ended
    quanta: tuple[Ticks, ...]  # distinct quanta of the executed positions

    @property
    def abandoned(self) -> bool:
        return self.executed < self.queue_size


@dataclass(frozen=True)
class Timeline:
    policy: PolicySpec
    slices: tuple[Slice, ...]
    rounds: tuple[RoundRecord, ...]
    makespan: Ticks
    idle_periods: tuple[tuple[Ticks, Ticks], ...] = ()
    context_switch_time: Ticks = ZERO

    @property
    def idle(self) -> Ticks:
        return sum((end - start for start, end in self.idle_periods), ZERO)

    @property
    def round_sizes(self) -> tuple[int, ...]:
        return tuple(r.executed for r in self.rounds)

    def completion_times(self) -> dict[int, Ticks]:
        return {s.pid: s.end for s in self.slices if s.completed}

    def to_json(self) -> str:
        doc = {
            "policy": str(self.policy),
            "context_switch_time": self.context_switch_time.to_json(),
            "makespan": self.makespan.to_json(),
            "idle": self.idle.to_json(),
            "idle_periods": [[a.to_json(), b.to_json()] for a, b in self.idle_periods],
            "rounds": [
                {
                    "round": r.index,
                    "start": r.start.to_json(),
                    "queue_size": r.queue_size,
                    "k": r.executed,
                    "quanta": [q.to_json() for q in r.quanta],
                }
                for r in self.rounds
            ],
            "slices": [s.to_json() for s in self.slices],
        }
        return json.dumps(doc, indent=2)


def _distinct(values) -> tuple[Ticks, ...]:
    return tuple(dict.fromkeys(values))


def simulate(workload: Workload, policy: PolicySpec, config: EngineConfig | None = None) -> Timeline:
    check(workload)
    cst = (config or EngineConfig()).context_switch_time
    pending = deque(sorted(workload.processes, key=lambda p: (p.arrival, p.pid)))
    arrival = {p.pid: p.arrival for p in workload.processes}
    remaining = {p.pid: p.burst for p in workload.processes}
    queue: list[int] = []  # FIFO order matters for rr only

    def admit(now: Ticks) -> bool:
        any_new = False
        while pending and pending[0].arrival <= now:
            queue.append(pending.popleft().pid)
            any_new = True
        return any_new

    clock = ZERO
    idle: list[tuple[Ticks, Ticks]] = []
    slices: list[Slice] = []
    rounds: list[RoundRecord] = []

    while pending or queue:
        if not queue:
            nxt = pending[0].arrival
            if nxt > clock:
                idle.append((clock, nxt))
                clock = nxt
        admit(clock)

        round_index = len(rounds) + 1
        round_start = clock
        plan: RoundPlan = plan_round(policy, [ReadyEntry(pid, remaining[pid], arrival[pid]) for pid in queue])
        used: list[Ticks] = []
        for position, pid in enumerate(plan.order, 1):
            quantum = plan.quantum_at[position]
            run = min(quantum, remaining[pid])
            start = clock
            clock = clock + run
            remaining[pid] = remaining[pid] - run
            done = not remaining[pid]
            slices.append(Slice(pid, start, clock, quantum, round_index, done))
            used.append(quantum)

            queue.remove(pid)
            arrived = admit(clock)
            if not done:
                queue.append(pid)
            if cst and queue:
                clock = clock + cst
                arrived = admit(clock) or arrived
            if arrived:
                break

        rounds.append(RoundRecord(round_index, round_start, len(plan.order), len(used), _distinct(used)))

    return Timeline(policy, tuple(slices), tuple(rounds), slices[-1].end, tuple(idle), cst)
