# qtensor/harness/theorem31.py
"""
Within SP0, R0, R, ER and Q stand or fall together. No generator of SP0
tensors exists, so the suite runs on corpus tensors: joint consistency on
the SP0 entries, and the permitted Q-without-R0 divergence outside SP0.
"""

import logging
import time
from typing import Dict, List, Optional

from ..checkers import check_class, is_q_grid_positive
from ..corpus.examples import corpus
from ..schemas import (
    CaseRecord,
    CorpusEntry,
    ExpectedStatus,
    RunReport,
    SearchBudget,
    Verdict,
)
from ..utils.batch_executor import BatchExecutor
from . import Suite, SuiteFactory
from .report import build_report, make_case

logger = logging.getLogger(__name__)

JOINT_CLASSES = ("R0", "R", "ER", "Q")
DIVERGENT_ENTRIES = ("example-3.1", "example-3.2")


def _pattern(verdicts: Dict[str, Verdict]) -> str:
    return "".join("F" if verdicts[name].falsified else "-" for name in JOINT_CLASSES)


def _run_entry(entry: CorpusEntry, budget: SearchBudget) -> List[CaseRecord]:
    sp0 = entry.expected.get("SP0")
    joint = sp0 is not None and sp0.status in (ExpectedStatus.HOLDS, ExpectedStatus.FAILS)
    if not joint and entry.name not in DIVERGENT_ENTRIES:
        return []

    verdicts = {name: check_class(name, entry.tensor, budget) for name in JOINT_CLASSES}
    pattern = _pattern(verdicts)
    label = "/".join(JOINT_CLASSES)

    if sp0 is not None and sp0.status == ExpectedStatus.HOLDS:
        consistent = pattern in ("F" * len(JOINT_CLASSES), "-" * len(JOINT_CLASSES))
        return [make_case(
            case_id=f"theorem31-{entry.name}-joint",
            tensor_id=entry.name,
            class_name=label,
            expected="all falsified or none",
            got=pattern,
            ok=consistent,
            seed=budget.seed,
        )]

    if sp0 is not None and sp0.status == ExpectedStatus.FAILS:
        return [make_case(
            case_id=f"theorem31-{entry.name}-outside-sp0",
            tensor_id=entry.name,
            class_name=label,
            expected="any pattern",
            got=pattern,
            ok=True,
            seed=budget.seed,
        )]

    divergent = verdicts["R0"].falsified and is_q_grid_positive(verdicts["Q"])
    return [make_case(
        case_id=f"theorem31-{entry.name}-divergence",
        tensor_id=entry.name,
        class_name="Q/R0",
        expected="Q-positive and R0 falsified",
        got=f"Q {verdicts['Q'].status.value} ({verdicts['Q'].effort.note}), R0 {verdicts['R0'].status.value}",
        ok=divergent,
        seed=budget.seed,
        verdict=verdicts["R0"],
    )]


def run_theorem31_suite(seed: int = 0, budget: Optional[SearchBudget] = None) -> RunReport:
    started = time.perf_counter()
    budget = (budget or SearchBudget()).with_overrides(seed=seed)
    entries = corpus(budget=budget)
    executor = BatchExecutor(func=lambda entry: _run_entry(entry, budget), num_threads=budget.max_workers)
    cases = [case for batch in executor.execute_ordered(entries) for case in batch]
    return build_report("theorem31", cases, seed, time.perf_counter() - started)


@SuiteFactory.register("theorem31")
class Theorem31Suite(Suite):
    def run(self, budget: SearchBudget, **params) -> RunReport:
        return run_theorem31_suite(seed=budget.seed, budget=budget)
