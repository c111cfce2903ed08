"""Attempted / precision / recall / F-measure against a gold key."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Mapping, Sequence


@dataclass(frozen=True)
class EvalReport:
    total: int
    attempted_count: int
    correct: int
    attempted_pct: float
    precision: float
    recall: float
    f_measure: float
    ignored: int = 0


def f_measure(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if precision < 0 or recall < 0:
        raise ValueError("precision and recall must be non-negative")
    if precision + recall == 0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def score(predictions: Mapping[str, str | None], gold: Mapping[str, str]) -> EvalReport:
    """Score ``predictions`` against ``gold``; ids missing from gold are
    ignored and counted in ``EvalReport.ignored``."""
    if not gold:
        raise ValueError("gold key is empty")
    attempted = correct = ignored = 0
    for iid, sense in predictions.items():
        if iid not in gold:
            ignored += 1
            continue
        if sense is None:
            continue
        attempted += 1
        if sense == gold[iid]:
            correct += 1
    total = len(gold)
    precision = 100.0 * correct / attempted if attempted else 0.0
    recall = 100.0 * correct / total
    return EvalReport(
        total=total,
        attempted_count=attempted,
        correct=correct,
        attempted_pct=100.0 * attempted / total,
        precision=precision,
        recall=recall,
        f_measure=f_measure(precision, recall),
        ignored=ignored,
    )


COLUMNS = ("Attempted", "Precision", "Recall", "F-Measure")


def format_table(rows: Sequence[tuple[str, EvalReport | tuple[float, float, float, float]]]) -> str:
    """Aligned plain-text table, one row per system, values in percent."""
    cells = []
    for name, rep in rows:
        if isinstance(rep, EvalReport):
            values = (rep.attempted_pct, rep.precision, rep.recall, rep.f_measure)
        else:
            values = rep
        cells.append((name, *(f"{v:.2f}" for v in values)))
    header = ("System", *(f"{c} (%)" for c in COLUMNS))
    widths = [max(len(r[i]) for r in [header, *cells]) for i in range(len(header))]

    def line(row: Sequence[str]) -> str:
        first = row[0].ljust(widths[0])
        rest = (v.rjust(w) for v, w in zip(row[1:], widths[1:]))
        return "  ".join([first, *rest]).rstrip()

    sep = "-" * len(line(header))
    return "\n".join([line(header), sep, *(line(r) for r in cells)]) + "\n"


def report_record(system: str, rep: EvalReport) -> str:
    """One JSON line with every metric as its own field."""
    return json.dumps({"system": system, **asdict(rep)}, sort_keys=True)
