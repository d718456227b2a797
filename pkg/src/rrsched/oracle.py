"""Naive clock-stepped reference simulator.

Used only to cross-check :func:`rrsched.engine.simulate`. It advances time one
half-tick at a time and shares nothing with the engine beyond the public data
types: quanta, ordering and slice bookkeeping are all recomputed here.
"""

from __future__ import annotations

import math
import statistics
from fractions import Fraction

from .engine import EngineConfig, RoundRecord, Slice, Timeline
from .policies import PolicySpec
from .workload import Ticks, Workload, check


def _median_halves(values: list[int]) -> int:
    # values in half-ticks; result rounded half-up onto the half-tick grid
    med = Fraction(statistics.median(Fraction(v) for v in values))
    return math.floor(med + Fraction(1, 2))


def _quartile_halves(sorted_values: list[int]) -> int:
    n = len(sorted_values)
    pos = min(n, math.ceil(Fraction(3 * (n + 1), 4)))
    return sorted_values[pos - 1]


def _plan(kind: str, rr_q: int, queue: list[int], rem: dict, arr: dict) -> list[tuple[int, int]]:
    if kind == "rr":
        return [(queue[0], rr_q)]
    ordered = sorted(queue, key=lambda pid: (rem[pid], arr[pid], pid))
    values = [rem[pid] for pid in ordered]
    mtq = _median_halves(values)
    if kind == "srbrr":
        return [(pid, mtq) for pid in ordered]
    utq = _quartile_halves(values)
    m = math.ceil(len(ordered) / 2)
    return [(pid, mtq if i < m else utq) for i, pid in enumerate(ordered)]


def reference_simulate(workload: Workload, policy: PolicySpec, config: EngineConfig | None = None) -> Timeline:
    check(workload)
    cst = (config or EngineConfig()).context_switch_time.halves
    kind = policy.kind
    rr_q = policy.fixed_quantum.halves if kind == "rr" else 0

    arr = {p.pid: p.arrival.halves for p in workload}
    rem = {p.pid: p.burst.halves for p in workload}
    by_arrival = sorted(workload, key=lambda p: (p.arrival.halves, p.pid))
    next_arrival = 0
    unfinished = len(rem)

    queue: list[int] = []
    plan: list[tuple[int, int]] = []
    round_no = 0
    round_info: list[dict] = []
    restart = False
    running = None  # [pid, quantum, used, dispatch_no]
    switch_left = 0
    dispatches = 0
    steps: list = []  # per half-tick: (pid, dispatch_no, quantum, round), "idle" or "switch"

    t = 0
    while True:
        # whatever arrives at this instant becomes visible first
        while next_arrival < len(by_arrival) and by_arrival[next_arrival].arrival.halves <= t:
            queue.append(by_arrival[next_arrival].pid)
            next_arrival += 1
            if round_no:
                restart = True

        if running is not None and (running[2] == running[1] or rem[running[0]] == 0):
            pid = running[0]
            queue.remove(pid)
            if rem[pid]:
                queue.append(pid)
            else:
                unfinished -= 1
            running = None
            if queue:
                switch_left = cst

        if not unfinished:
            break

        if running is None and switch_left:
            switch_left -= 1
            steps.append("switch")
            t += 1
            continue

        if running is None:
            if not queue:
                steps.append("idle")
                t += 1
                continue
            if restart or not plan:
                round_no += 1
                plan = _plan(kind, rr_q, queue, rem, arr)
                round_info.append({"start": t, "size": len(plan), "used": []})
                restart = False
            pid, q = plan.pop(0)
            dispatches += 1
            running = [pid, q, 0, dispatches]
            round_info[-1]["used"].append(q)

        pid = running[0]
        rem[pid] -= 1
        running[2] += 1
        steps.append((pid, running[3], running[1], round_no))
        t += 1

    return _assemble(policy, steps, round_info, cst)


def _assemble(policy, steps, round_info, cst) -> Timeline:
    final_dispatch = {s[0]: s[1] for s in steps if isinstance(s, tuple)}
    idle = []
    for t, s in enumerate(steps):
        if s == "idle":
            if idle and idle[-1][1] == t:
                idle[-1][1] = t + 1
            else:
                idle.append([t, t + 1])
    slices = []
    current = None
    for t, s in enumerate(steps):
        if not isinstance(s, tuple):
            continue
        if current is not None and current[1] == s[1]:
            current[5] = t + 1
            continue
        if current is not None:
            slices.append(current)
        current = [s[0], s[1], s[2], s[3], t, t + 1]
    slices.append(current)

    out = []
    for pid, dno, q, rnd, start, stop in slices:
        out.append(Slice(pid, Ticks(start), Ticks(stop), Ticks(q), rnd, final_dispatch[pid] == dno))

    rounds = tuple(
        RoundRecord(
            i + 1,
            Ticks(info["start"]),
            info["size"],
            len(info["used"]),
            tuple(Ticks(q) for q in dict.fromkeys(info["used"])),
        )
        for i, info in enumerate(round_info)
    )
    return Timeline(policy, tuple(out), rounds, out[-1].end, tuple((Ticks(a), Ticks(b)) for a, b in idle), Ticks(cst))
