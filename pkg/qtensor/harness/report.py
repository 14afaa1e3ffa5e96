# qtensor/harness/report.py
import logging
from typing import List, Optional

import pandas as pd

from ..schemas import CaseOutcome, CaseRecord, RunReport, Verdict

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "case_id",
    "tensor_id",
    "class_name",
    "expected",
    "got",
    "witness_summary",
    "outcome",
    "seed",
]


def make_case(
    case_id: str,
    tensor_id: str,
    class_name: str,
    expected: str,
    got: str,
    ok: bool,
    seed: int,
    verdict: Optional[Verdict] = None,
    disputed: bool = False,
    witness_summary: str = "",
) -> CaseRecord:
    if verdict is not None and verdict.witness is not None and not witness_summary:
        witness_summary = verdict.witness.summary()
    if disputed:
        outcome = CaseOutcome.DISPUTED
    else:
        outcome = CaseOutcome.PASS if ok else CaseOutcome.FAIL
    if outcome == CaseOutcome.FAIL:
        logger.warning(
            f"Case {case_id} failed: {class_name} on {tensor_id} expected {expected}, got {got} (seed {seed})"
        )
    return CaseRecord(
        case_id=case_id,
        tensor_id=tensor_id,
        class_name=class_name,
        expected=expected,
        got=got,
        witness_summary=witness_summary,
        outcome=outcome,
        seed=seed,
    )


def build_report(suite: str, cases: List[CaseRecord], seed: int, wall_time: float) -> RunReport:
    return RunReport(
        suite=suite,
        cases=sorted(cases, key=lambda case: case.case_id),
        seed=seed,
        wall_time=wall_time,
    )


def render_text(report: RunReport) -> str:
    lines = [f"suite {report.suite} (seed {report.seed})"]
    for case in report.cases:
        line = f"  [{case.outcome.value:>8}] {case.case_id}: {case.class_name} on {case.tensor_id} expected {case.expected}, got {case.got}"
        if case.witness_summary:
            line += f"  witness {case.witness_summary}"
        if case.outcome == CaseOutcome.FAIL:
            line += f"  (reproduce with seed {case.seed})"
        lines.append(line)
    lines.append(
        f"{len(report.cases)} cases: {report.passed} passed, {report.failed} failed, "
        f"{report.disputed} disputed in {report.wall_time:.2f}s"
    )
    return "\n".join(lines) + "\n"


def render_records(report: RunReport) -> str:
    """One line of key=value pairs per case, then a summary line."""
    lines = []
    for case in report.cases:
        fields = case.model_dump(mode="json")
        lines.append(f"suite={report.suite} " + " ".join(f"{k}={_value(v)}" for k, v in fields.items()))
    lines.append(
        f"suite={report.suite} cases={len(report.cases)} passed={report.passed} "
        f"failed={report.failed} disputed={report.disputed} seed={report.seed}"
    )
    return "\n".join(lines) + "\n"


def _value(value) -> str:
    text = str(value)
    return text.replace(" ", "_") if text else "-"


def save_report_csv(report: RunReport, path) -> None:
    df = pd.DataFrame([case.model_dump(mode="json") for case in report.cases], columns=CSV_COLUMNS)
    df.to_csv(path, index=False, encoding="utf-8")
    logger.info(f"Report saved to {path}")
