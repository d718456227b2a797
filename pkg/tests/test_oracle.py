"""Differential checks: event engine vs. the half-tick stepped reference."""

import pytest
from hypothesis import given, settings, strategies as st

from rrsched.engine import EngineConfig, simulate
from rrsched.oracle import reference_simulate
from rrsched.policies import PolicySpec
from rrsched.workload import Process, Ticks, Workload

from .conftest import case_workload, workloads

POLICIES = ["rr:25", "srbrr", "mdtqrr"]


@pytest.mark.parametrize("spec", POLICIES)
def test_paper_cases_agree(paper_workload, spec):
    policy = PolicySpec.parse(spec)
    assert reference_simulate(paper_workload, policy) == simulate(paper_workload, policy)


def test_single_process():
    w = Workload((Process.make(1, 0, 5),))
    tl = reference_simulate(w, PolicySpec("mdtqrr"))
    assert [(s.pid, s.start, s.end) for s in tl.slices] == [(1, Ticks(0), Ticks(10))]


def test_case1_mdtqrr_timeline():
    tl = reference_simulate(case_workload(1), PolicySpec("mdtqrr"))
    assert [str(s.end) for s in tl.slices] == ["10", "32", "80", "150", "224"]


@settings(max_examples=300, deadline=None)
@given(
    workloads(max_n=10, max_burst=30, max_gap=20, half_ticks=True),
    st.one_of(st.builds(lambda q: PolicySpec("rr", Ticks(q)), st.integers(1, 40)), st.sampled_from([PolicySpec("srbrr"), PolicySpec("mdtqrr")])),
    st.integers(0, 4),
)
def test_engine_matches_reference(w, policy, cst):
    config = EngineConfig(Ticks(cst))
    assert simulate(w, policy, config) == reference_simulate(w, policy, config)
