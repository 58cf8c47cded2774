"""
Experiment report construction, ranking labels and serialization
"""
import json
from typing import Any, Dict, List, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, model_validator

from elbowkit.utils.custom_exceptions import ExperimentError
from elbowkit.utils.settings import REPORT_SCHEMA_VERSION

# (lower bound, label), checked from the top
RANKING_THRESHOLDS = (
    (0.95, 'Excellent'),
    (0.80, 'Good'),
    (0.50, 'Fair'),
    (0.20, 'Poor'),
    (0.10, 'Bad'),
    (0.0, 'Very bad'),
)


class MethodOutcome(BaseModel):
    method: str
    histogram: List[int]
    p_correct: float = Field(ge=0.0, le=1.0)
    label: str
    best: bool


class ExperimentReport(BaseModel):
    schema_version: int = REPORT_SCHEMA_VERSION
    kind: str
    config: Dict[str, Any]
    runs: int
    true_k: int
    decision_offset: int = 0
    methods: List[MethodOutcome]
    duration_seconds: float = 0.0

    @model_validator(mode='after')
    def _check_histograms(self) -> 'ExperimentReport':
        for outcome in self.methods:
            if sum(outcome.histogram) != self.runs:
                raise ValueError(f"{outcome.method} histogram sums to {sum(outcome.histogram)}, expected {self.runs}")
        if self.methods and not any(outcome.best for outcome in self.methods):
            raise ValueError("no method marked best")
        return self

    def outcome(self, method: str) -> MethodOutcome:
        for outcome in self.methods:
            if outcome.method == method:
                return outcome
        raise KeyError(method)


def ranking_label(p_correct: float, is_best: bool = False) -> str:
    """Qualitative rank of a correct-decision rate"""
    if not 0.0 <= p_correct <= 1.0:
        raise ExperimentError(
            f"Correct-decision rate must lie in [0, 1], got {p_correct}",
            context={'p_correct': p_correct}
        )
    if is_best:
        return 'Best'
    for lower, label in RANKING_THRESHOLDS:
        if p_correct >= lower:
            return label
    return 'Very bad'


def build_report(cfg, method_names: Sequence[str], decisions: Sequence[Sequence[int]], duration: float) -> ExperimentReport:
    """
    Aggregate per-run decisions into an ExperimentReport

    Args:
        cfg: ExperimentConfig the runs came from
        method_names: Method labels, in the column order of `decisions`
        decisions: One row per run, one k* per method
        duration: Wall-clock seconds spent on the runs
    """
    table = np.asarray(decisions, dtype=np.int64).reshape(len(decisions), len(method_names))
    counts = [np.bincount(table[:, j], minlength=cfg.K + 1) for j in range(len(method_names))]
    hits = [int(c[cfg.true_k]) if cfg.true_k < len(c) else 0 for c in counts]
    top = max(hits)

    outcomes = []
    for name, histogram, hit in zip(method_names, counts, hits):
        p_correct = hit / cfg.runs
        outcomes.append(MethodOutcome(
            method=name,
            histogram=[int(n) for n in histogram],
            p_correct=p_correct,
            label=ranking_label(p_correct, hit == top),
            best=hit == top
        ))

    return ExperimentReport(
        kind=cfg.kind,
        config=cfg.model_dump(mode='json'),
        runs=cfg.runs,
        true_k=cfg.true_k,
        decision_offset=cfg.decision_offset,
        methods=outcomes,
        duration_seconds=round(duration, 3)
    )


def table_row(outcome: MethodOutcome) -> str:
    """'Good, p_A≈0.82' style cell; exact 0 and 1 print with '='"""
    p = outcome.p_correct
    if p in (0.0, 1.0):
        return f"{outcome.label}, p_A={p:g}"
    return f"{outcome.label}, p_A≈{p:.2f}"


def report_to_json(report: ExperimentReport, include_duration: bool = True) -> str:
    data = report.model_dump(mode='json')
    if not include_duration:
        data.pop('duration_seconds')
    return json.dumps(data, indent=2)


def histogram_frame(report: ExperimentReport) -> pd.DataFrame:
    """Decision counts with one row per index k and one column per method"""
    size = len(report.methods[0].histogram) if report.methods else 0
    frame = pd.DataFrame({'k': np.arange(size)})
    for outcome in report.methods:
        frame[outcome.method] = outcome.histogram
    return frame


def summary_frame(report: ExperimentReport) -> pd.DataFrame:
    """One row per method: chosen index mode, p_A and its table cell"""
    rows = []
    for outcome in report.methods:
        mode = int(np.argmax(outcome.histogram))
        rows.append({
            'method': outcome.method,
            'most_chosen': mode + report.decision_offset,
            'p_A': outcome.p_correct,
            'rank': table_row(outcome),
        })
    return pd.DataFrame(rows, columns=['method', 'most_chosen', 'p_A', 'rank'])
