import pytest
from hypothesis import strategies as st

from rrsched.workload import Process, Ticks, Workload

CASES = {
    1: ((0, 2, 5, 7, 9), (10, 22, 48, 70, 74)),
    2: ((0, 6, 13, 21, 75), (73, 50, 23, 19, 5)),
    3: ((0, 6, 8, 9, 10), (7, 15, 90, 42, 8)),
}


def case_workload(n: int) -> Workload:
    arrivals, bursts = CASES[n]
    return Workload.from_rows([(i + 1, a, b) for i, (a, b) in enumerate(zip(arrivals, bursts))], label=f"case {n}")


@pytest.fixture(params=[1, 2, 3], ids=["case1", "case2", "case3"])
def paper_workload(request):
    return case_workload(request.param)


@st.composite
def workloads(draw, max_n=12, max_burst=40, max_gap=15, half_ticks=False):
    n = draw(st.integers(1, max_n))
    unit = 1 if half_ticks else 2
    bursts = draw(st.lists(st.integers(1, max_burst * 2 // unit), min_size=n, max_size=n))
    gaps = draw(st.lists(st.integers(0, max_gap * 2 // unit), min_size=n, max_size=n))
    procs, t = [], 0
    for i, (b, g) in enumerate(zip(bursts, gaps)):
        t += g * unit
        procs.append(Process(i + 1, Ticks(t), Ticks(b * unit)))
    return Workload(tuple(procs))


# --- one pass/fail line per acceptance criterion -------------------------

_criteria: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid and "::test_criterion_" in report.nodeid:
        name = report.nodeid.split("::test_criterion_")[1]
        _criteria.append((name, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in _criteria:
        number, _, title = name.partition("_")
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title.replace('_', ' ')}")
