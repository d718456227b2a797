"""Round planners for RR, SRBRR and MDTQRR.

A planner looks at the ready pool and decides one round: the dispatch order
and the quantum granted at each position. The engine executes the plan and
may abandon its tail when new processes arrive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, NamedTuple, Sequence

from .quantum_stats import QuantumPair, median_position, median_quantum, upper_quartile_quantum
from .workload import Ticks

PolicyKind = Literal["rr", "srbrr", "mdtqrr"]

_NAMES = {"rr": "RR", "srbrr": "SRBRR", "mdtqrr": "MDTQRR"}


class PolicyError(ValueError):
    pass


@dataclass(frozen=True)
class PolicySpec:
    kind: PolicyKind
    fixed_quantum: Ticks | None = None

    def __post_init__(self):
        if self.kind not in _NAMES:
            raise PolicyError(f"unknown policy kind {self.kind!r}")
        if self.kind == "rr":
            if self.fixed_quantum is None:
                raise PolicyError("rr needs a fixed quantum, e.g. rr:25")
            if self.fixed_quantum.halves <= 0:
                raise PolicyError(f"rr quantum must be positive, got {self.fixed_quantum}")
        elif self.fixed_quantum is not None:
            raise PolicyError(f"{self.kind} takes no fixed quantum")

    @classmethod
    def parse(cls, text: str) -> PolicySpec:
        """Parse ``rr:<quantum>``, ``srbrr`` or ``mdtqrr``."""
        kind, _, arg = text.strip().lower().partition(":")
        if kind == "rr":
            if not arg:
                raise PolicyError("rr needs a quantum, e.g. rr:25")
            try:
                q = Ticks.of(arg)
            except ValueError as exc:
                raise PolicyError(f"bad rr quantum {arg!r}: {exc}") from None
            return cls("rr", q)
        if kind in ("srbrr", "mdtqrr") and not arg:
            return cls(kind)
        raise PolicyError(f"unknown policy {text!r} (expected rr:<quantum>, srbrr or mdtqrr)")

    @property
    def name(self) -> str:
        return _NAMES[self.kind]

    @property
    def is_dynamic(self) -> bool:
        return self.kind != "rr"

    def __str__(self) -> str:
        return f"rr:{self.fixed_quantum}" if self.kind == "rr" else self.kind


class ReadyEntry(NamedTuple):
    pid: int
    remaining: Ticks
    arrival: Ticks


@dataclass(frozen=True)
class RoundPlan:
    order: tuple[int, ...]
    quantum_at: dict[int, Ticks]  # 1-based position -> quantum
    quanta_label: tuple[Ticks, ...]
    quanta: QuantumPair | None = field(default=None, compare=False)

    def __post_init__(self):
        if set(self.quantum_at) != set(range(1, len(self.order) + 1)):
            raise ValueError("quantum_at must cover every planned position")
        if any(q.halves <= 0 for q in self.quantum_at.values()):
            raise ValueError("every planned quantum must be positive")


def _shortest_first(ready: Sequence[ReadyEntry]) -> list[ReadyEntry]:
    return sorted(ready, key=lambda e: (e.remaining, e.arrival, e.pid))


def _require(ready: Sequence[ReadyEntry]) -> None:
    if not ready:
        raise ValueError("cannot plan a round over an empty ready queue")


def plan_round_rr(ready: Sequence[ReadyEntry], q: Ticks) -> RoundPlan:
    # one slice per round, so arrivals during the slice queue ahead of the
    # preempted process
    _require(ready)
    return RoundPlan((ready[0].pid,), {1: q}, (q,))


def plan_round_srbrr(ready: Sequence[ReadyEntry]) -> RoundPlan:
    _require(ready)
    ordered = _shortest_first(ready)
    q = median_quantum(e.remaining for e in ordered)
    return RoundPlan(
        tuple(e.pid for e in ordered),
        {i: q for i in range(1, len(ordered) + 1)},
        (q,),
    )


def plan_round_mdtqrr(ready: Sequence[ReadyEntry]) -> RoundPlan:
    _require(ready)
    ordered = _shortest_first(ready)
    remaining = [e.remaining for e in ordered]
    pair = QuantumPair(median_quantum(remaining), upper_quartile_quantum(remaining), median_position(len(ordered)))
    quantum_at = {i: (pair.mtq if i <= pair.m else pair.utq) for i in range(1, len(ordered) + 1)}
    label = (pair.mtq,) if pair.m == len(ordered) or pair.mtq == pair.utq else (pair.mtq, pair.utq)
    return RoundPlan(tuple(e.pid for e in ordered), quantum_at, label, pair)


def plan_round(policy: PolicySpec, ready: Sequence[ReadyEntry]) -> RoundPlan:
    if policy.kind == "rr":
        return plan_round_rr(ready, policy.fixed_quantum)
    if policy.kind == "srbrr":
        return plan_round_srbrr(ready)
    return plan_round_mdtqrr(ready)
