"""Re-run the three published cases and check every table cell.

Cells listed in the errata manifest are expected to differ from the printed
value; they pass only if the computed value equals the manifest's expected
value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal
from importlib import resources

from .engine import simulate
from .metrics import ComparisonTable, RunSummary, compare, summarize
from .policies import PolicySpec
from .workload import Workload

CELL_COLUMNS = ("time_quantum", "avg_tat", "avg_wt", "cs", "throughput")


def load_manifest() -> dict:
    return json.loads(resources.files("rrsched").joinpath("data/paper_cases.json").read_text("utf-8"))


@dataclass(frozen=True)
class PaperCase:
    id: int
    pattern: str
    workload: Workload
    rows: tuple[dict, ...]


def paper_cases() -> list[PaperCase]:
    out = []
    for case in load_manifest()["cases"]:
        workload = Workload.from_rows(case["processes"], label=f"case {case['id']} ({case['pattern']})")
        out.append(PaperCase(case["id"], case["pattern"], workload, tuple(case["rows"])))
    return out


def paper_case(case_id: int) -> PaperCase:
    for case in paper_cases():
        if case.id == case_id:
            return case
    raise KeyError(case_id)


@dataclass(frozen=True)
class CellCheck:
    case: int
    policy: str
    column: str
    printed: str
    computed: str
    status: str  # "match", "erratum" or "mismatch"
    note: str = ""


def _same(column: str, printed, computed: str) -> bool:
    if column == "time_quantum":
        return str(printed) == computed
    return Decimal(str(printed)) == Decimal(computed)


def check_case(case: PaperCase, errata: list[dict]) -> tuple[ComparisonTable, list[CellCheck]]:
    summaries: list[RunSummary] = []
    for row in case.rows:
        policy = PolicySpec.parse(row["policy"])
        summaries.append(summarize(simulate(case.workload, policy), case.workload))
    table = compare(summaries)
    known = {(e["case"], e["policy"], e["column"]): e for e in errata}
    checks = []
    for row, computed_row in zip(case.rows, table.rows):
        cells = computed_row.display_cells()
        for column in CELL_COLUMNS:
            printed, computed = row[column], cells[column]
            entry = known.get((case.id, row["policy"], column))
            if entry is not None:
                ok = _same(column, entry["expected"], computed)
                status = "erratum" if ok else "mismatch"
                note = entry["note"] if ok else f"erratum expected {entry['expected']}"
            else:
                status = "match" if _same(column, printed, computed) else "mismatch"
                note = ""
            checks.append(CellCheck(case.id, row["policy"], column, str(printed), computed, status, note))
    return table, checks


def reproduce_all() -> list[tuple[PaperCase, ComparisonTable, list[CellCheck]]]:
    manifest = load_manifest()
    return [(case, *check_case(case, manifest["errata"])) for case in paper_cases()]
