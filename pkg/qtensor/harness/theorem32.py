# qtensor/harness/theorem32.py
"""Every principal sub-tensor of an SP0 tensor is SP0."""

import logging
import time
from typing import Optional, Tuple

from ..checkers import check_SP0
from ..corpus.examples import corpus
from ..schemas import CaseRecord, CorpusEntry, ExpectedStatus, IndexSet, RunReport, SearchBudget
from ..tensors.core import principal_sub_tensor
from ..utils.batch_executor import BatchExecutor
from ..utils.search import subsets
from . import Suite, SuiteFactory
from .report import build_report, make_case

logger = logging.getLogger(__name__)


def _run_case(task: Tuple[CorpusEntry, Tuple[int, ...]], budget: SearchBudget) -> CaseRecord:
    entry, J = task
    index_set = IndexSet(members=[j + 1 for j in J])
    verdict = check_SP0(principal_sub_tensor(entry.tensor, index_set), budget)
    holds = entry.expected["SP0"].status == ExpectedStatus.HOLDS
    label = "{" + ",".join(str(i) for i in index_set) + "}"
    return make_case(
        case_id=f"theorem32-{entry.name}-J{label}",
        tensor_id=f"{entry.name}[{label}]",
        class_name="SP0",
        # Outside SP0 a falsified sub-tensor is only recorded.
        expected="not falsified" if holds else "recorded",
        got=verdict.status.value,
        ok=(not verdict.falsified) if holds else True,
        seed=budget.seed,
        verdict=verdict,
    )


def run_theorem32_suite(budget: Optional[SearchBudget] = None) -> RunReport:
    started = time.perf_counter()
    budget = budget or SearchBudget()
    tasks = [
        (entry, J)
        for entry in corpus(budget=budget)
        if "SP0" in entry.expected
        and entry.expected["SP0"].status in (ExpectedStatus.HOLDS, ExpectedStatus.FAILS)
        for J in subsets(entry.tensor.dim)
    ]
    executor = BatchExecutor(func=lambda task: _run_case(task, budget), num_threads=budget.max_workers)
    cases = executor.execute_ordered(tasks)
    return build_report("theorem32", cases, budget.seed, time.perf_counter() - started)


@SuiteFactory.register("theorem32")
class Theorem32Suite(Suite):
    def run(self, budget: SearchBudget, **params) -> RunReport:
        return run_theorem32_suite(budget)
