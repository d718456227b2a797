"""Exit criteria. Every tolerance here is exact (rational arithmetic).

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
section at the end of the report for one PASS/FAIL line per criterion.
"""

import random
from decimal import Decimal
from fractions import Fraction

from rrsched.engine import EngineConfig, simulate
from rrsched.metrics import context_switches, context_switches_by_rounds, display, summarize
from rrsched.oracle import reference_simulate
from rrsched.policies import PolicySpec
from rrsched.quantum_stats import median_quantum, upper_quartile_quantum
from rrsched.reproduce import check_case, load_manifest, paper_case
from rrsched.workload import Ticks, Workload, generate_workload

T = Ticks.of
RR25, SRBRR, MDTQRR = PolicySpec.parse("rr:25"), PolicySpec("srbrr"), PolicySpec("mdtqrr")


def summaries(case_id):
    w = paper_case(case_id).workload
    return w, {p.kind: summarize(simulate(w, p), w) for p in (RR25, SRBRR, MDTQRR)}


def row(s):
    return display(s.avg_tat, 1), display(s.avg_wt, 1), s.context_switches


def D(*values):
    return tuple(Decimal(v) if isinstance(v, str) else v for v in values)


def test_criterion_1_table1_reproduction():
    w, s = summaries(1)
    assert row(s["rr"]) == D("114.6", "69.8", 9)
    assert row(s["srbrr"]) == D("106.4", "61.6", 7)
    assert s["srbrr"].quanta_label == "10,59,13,2"
    assert display(s["mdtqrr"].avg_tat, 1) == Decimal("94.6") and s["mdtqrr"].context_switches == 4
    assert s["mdtqrr"].quanta_label == "10,59,74"
    assert s["mdtqrr"].avg_wt == Fraction(498, 10)
    assert s["mdtqrr"].avg_tat - Fraction(sum(p.burst.fraction for p in w), 5) == Fraction(498, 10)
    for summary in s.values():
        assert summary.throughput == Fraction(5, 224)
        assert display(summary.throughput, 2) == Decimal("0.02")

    _, cells = check_case(paper_case(1), load_manifest()["errata"])
    flagged = [(c.policy, c.column, c.printed, c.computed) for c in cells if c.status == "erratum"]
    assert flagged == [("mdtqrr", "avg_wt", "50.2", "49.8")]
    assert all(c.status != "mismatch" for c in cells)


def test_criterion_2_table2_reproduction():
    w, s = summaries(2)
    assert row(s["rr"]) == D("101.8", "67.8", 7)
    assert row(s["srbrr"]) == D("87.4", "53.4", 5)
    assert s["srbrr"].quanta_label == "73,23,23,27"
    assert row(s["mdtqrr"]) == D("87.4", "53.4", 4)
    for summary in s.values():
        assert display(summary.throughput, 2) == Decimal("0.03")

    # P5 arrives at 75 during P4's slice; the round is abandoned at 92
    tl = simulate(w, SRBRR)
    assert tl.rounds[1].abandoned and tl.rounds[2].start == T(92)
    assert tl.slices[2].pid == 5 and tl.slices[2].start == T(92)

    _, cells = check_case(paper_case(2), load_manifest()["errata"])
    assert all(c.status != "mismatch" for c in cells)


def test_criterion_3_table3_reproduction():
    w, s = summaries(3)
    assert row(s["rr"]) == D("72.0", "39.6", 8)
    assert row(s["srbrr"]) == D("52.0", "19.6", 5)
    assert s["srbrr"].quanta_label == "7,15,42,48"
    assert row(s["mdtqrr"]) == D("52.0", "19.6", 4)
    assert s["mdtqrr"].quanta_label == "7,15,42,90"
    for summary in s.values():
        assert display(summary.throughput, 2) == Decimal("0.03")

    # P2 is not preempted by P5 (burst 8, arrives at 10)
    for policy in (SRBRR, MDTQRR):
        second = simulate(w, policy).slices[1]
        assert (second.pid, second.start, second.end, second.completed) == (2, T(7), T(22), True)

    _, cells = check_case(paper_case(3), load_manifest()["errata"])
    assert all(c.status == "match" for c in cells)


def test_criterion_4_illustration_single_round():
    w = Workload.from_rows([(i + 1, 0, b) for i, b in enumerate([54, 99, 5, 27, 32])])
    tl = simulate(w, MDTQRR)
    assert len(tl.rounds) == 1
    assert tl.rounds[0].quanta == (T(32), T(99))
    assert [s.end for s in tl.slices] == [T(5), T(32), T(64), T(118), T(217)]
    assert [s.pid for s in tl.slices] == [3, 4, 5, 1, 2]
    s = summarize(tl, w)
    assert s.criteria.value.exact == Fraction(588, 10)
    below = [b for b in (5, 27, 32, 54, 99) if b < Fraction(588, 10)]
    assert s.criteria.eighty.fraction == Fraction(len(below), 5)
    # stated target; bursts strictly below 58.8 are 5, 27, 32, 54
    assert s.criteria.eighty.fraction == Fraction(6, 10), (
        f"80% check reports {s.criteria.eighty.fraction}; bursts below 58.8 are {below}"
    )


def _random_workload(rng: random.Random, seed: int) -> Workload:
    return generate_workload(
        rng.choice(["increasing", "decreasing", "random"]),
        rng.randint(1, 50),
        burst_range=(1, 100),
        arrival_gap_range=(0, rng.choice([3, 10, 40, 150])),
        seed=seed,
    )


def test_criterion_5_oracle_equivalence():
    rng = random.Random(20240501)
    mismatches = []
    runs = 0
    for seed in range(1000):
        w = _random_workload(rng, seed)
        for policy in (PolicySpec("rr", T(rng.randint(1, 100))), SRBRR, MDTQRR):
            runs += 1
            if simulate(w, policy) != reference_simulate(w, policy):
                mismatches.append((seed, str(policy)))
    assert runs == 3000
    assert mismatches == []


def test_criterion_6_property_suite():
    rng = random.Random(6)
    for seed in range(400):
        w = _random_workload(rng, seed)
        n = len(w)
        mean_burst = Fraction(sum(p.burst.fraction for p in w), n)
        for policy in (PolicySpec("rr", T(rng.randint(1, 60))), SRBRR, MDTQRR):
            cst = rng.choice([0, 0, 1, 2])
            config = EngineConfig(T(cst))
            tl = simulate(w, policy, config)
            s = summarize(tl, w, config)

            done = {p.pid: Ticks(0) for p in w}
            for sl in tl.slices:
                done[sl.pid] += sl.executed
            assert done == {p.pid: p.burst for p in w}

            assert context_switches(tl) == len(tl.slices) - 1 == context_switches_by_rounds(tl)
            assert s.avg_wt == s.avg_tat - mean_burst
            if cst == 0:
                assert s.cpu_utilization == 1
            assert s.throughput * s.total_time.fraction == n

    for _ in range(10_000):
        values = sorted(rng.randint(1, 1000) for _ in range(rng.randint(1, 40)))
        mq, uq = median_quantum(values), upper_quartile_quantum(values)
        assert mq <= uq
        k = rng.randint(2, 9)
        scaled = [v * k for v in values]
        assert median_quantum(scaled) == mq * k
        assert upper_quartile_quantum(scaled) == uq * k


def test_criterion_7_batch_rounds_bound():
    rng = random.Random(7)
    sizes = [4096] * 5 + [rng.choice([1, 2, 3, 4, 5, 7, 8, 16]) for _ in range(95)]
    sizes += [int(2 ** rng.uniform(0, 12)) for _ in range(400)]
    for n in sizes:
        w = Workload.from_rows([(i + 1, 0, rng.randint(1, 1000)) for i in range(n)])
        tl = simulate(w, MDTQRR)
        assert len(tl.rounds) <= 6
        for r in tl.rounds:
            assert not r.abandoned
            survivors = sum(1 for s in tl.slices if s.round_index == r.index and not s.completed)
            assert 4 * survivors < r.queue_size


def test_criterion_8_fcfs_degeneration():
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randint(1, 30)
        arrivals = sorted(rng.sample(range(0, 400), n))
        rows = [(i + 1, a, rng.randint(1, 100)) for i, a in enumerate(arrivals)]
        rng.shuffle(rows)
        w = Workload.from_rows(rows)
        q = max(b for _, _, b in rows) + rng.randint(0, 20)
        tl = simulate(w, PolicySpec("rr", T(q)))
        s = summarize(tl, w)

        clock, completion = 0, {}
        for pid, arrival, burst in sorted(rows, key=lambda r: r[1]):
            clock = max(clock, arrival) + burst
            completion[pid] = clock
        assert [sl.pid for sl in tl.slices] == [pid for pid, _, _ in sorted(rows, key=lambda r: r[1])]
        by_pid = {p.pid: p for p in s.per_process}
        for pid, arrival, burst in rows:
            assert by_pid[pid].completion == T(completion[pid])
            assert by_pid[pid].waiting == T(completion[pid] - arrival - burst)
        assert s.avg_tat == Fraction(sum(completion[pid] - a for pid, a, _ in rows), n)
