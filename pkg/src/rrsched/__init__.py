"""Single-CPU round-robin scheduling simulator with median/upper-quartile
dynamic quanta (MDTQRR) and its RR and SRBRR comparators."""

from .engine import EngineConfig, RoundRecord, Slice, Timeline, simulate
from .metrics import ComparisonTable, ProcessMetrics, RunSummary, compare, context_switches, summarize
from .oracle import reference_simulate
from .policies import PolicySpec, RoundPlan, plan_round
from .report import render_comparison, render_gantt, render_summary
from .workload import (
    Process,
    Ticks,
    Workload,
    WorkloadParseError,
    WorkloadValidationError,
    dump_workload,
    generate_workload,
    parse_workload,
    validate,
)

__all__ = [
    "ComparisonTable", "EngineConfig", "Process", "ProcessMetrics", "PolicySpec", "RoundPlan",
    "RoundRecord", "RunSummary", "Slice", "Ticks", "Timeline", "Workload", "WorkloadParseError",
    "WorkloadValidationError", "compare", "context_switches", "dump_workload", "generate_workload",
    "parse_workload", "plan_round", "reference_simulate", "render_comparison", "render_gantt",
    "render_summary", "simulate", "summarize", "validate",
]
