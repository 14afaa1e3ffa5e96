# qtensor/harness/corpus_suite.py
"""
Corpus against checkers: every expectation, every stored witness and every
known solution of every entry.
"""

import logging
import time
from typing import List, Optional

import numpy as np

from ..checkers import check_class, replay_witness
from ..corpus.examples import KNOWN_SOLUTION_TOL, corpus
from ..engine.solver import residual, solve
from ..schemas import (
    CaseRecord,
    CorpusEntry,
    ExpectedStatus,
    RunReport,
    SearchBudget,
    SolveStatus,
    TCPInstance,
)
from ..utils.batch_executor import BatchExecutor
from . import Suite, SuiteFactory
from .report import build_report, make_case

logger = logging.getLogger(__name__)

REDISCOVERY_RADIUS = 1e-6


def _expectation_cases(entry: CorpusEntry, budget: SearchBudget) -> List[CaseRecord]:
    cases = []
    for class_name, expectation in entry.expected.items():
        verdict = check_class(class_name, entry.tensor, budget)
        if expectation.status == ExpectedStatus.HOLDS:
            ok = not verdict.falsified
        elif expectation.status == ExpectedStatus.FAILS:
            ok = verdict.falsified and replay_witness(class_name, entry.tensor, verdict.witness, budget) > budget.falsify_tol
        else:
            ok = True
        cases.append(make_case(
            case_id=f"corpus-{entry.name}-{class_name}",
            tensor_id=entry.name,
            class_name=class_name,
            expected=expectation.status.value,
            got=verdict.status.value,
            ok=ok,
            seed=budget.seed,
            verdict=verdict,
            disputed=expectation.status == ExpectedStatus.DISPUTED,
        ))
    return cases


def _witness_cases(entry: CorpusEntry, budget: SearchBudget) -> List[CaseRecord]:
    cases = []
    for class_name, witness in entry.witnesses.items():
        value = replay_witness(class_name, entry.tensor, witness, budget)
        cases.append(make_case(
            case_id=f"corpus-{entry.name}-{class_name}-witness",
            tensor_id=entry.name,
            class_name=class_name,
            expected=f"violation > {budget.falsify_tol:g}",
            got=f"violation {value:.6g}",
            ok=value > budget.falsify_tol,
            seed=budget.seed,
            witness_summary=witness.summary(),
        ))
    return cases


def _solution_cases(entry: CorpusEntry, budget: SearchBudget) -> List[CaseRecord]:
    cases = []
    for k, known in enumerate(entry.known_solutions):
        instance = TCPInstance(tensor=entry.tensor, q=known.q)
        report = residual(instance, known.x)
        outcome = solve(instance, budget)
        target = np.asarray(known.x)
        rediscovered = outcome.status == SolveStatus.SOLVED and any(
            np.max(np.abs(s.x_array - target)) < REDISCOVERY_RADIUS for s in outcome.solutions
        )
        cases.append(make_case(
            case_id=f"corpus-{entry.name}-solution-{k}",
            tensor_id=entry.name,
            class_name="TCP",
            expected=f"{known.citation}: x = {known.x}",
            got=f"residual {report.value:.3g}, {'rediscovered' if rediscovered else outcome.status.value}",
            ok=report.value <= KNOWN_SOLUTION_TOL and rediscovered,
            seed=budget.seed,
        ))
    return cases


def _run_entry(entry: CorpusEntry, budget: SearchBudget) -> List[CaseRecord]:
    logger.info(f"Verifying {entry.name}")
    return _expectation_cases(entry, budget) + _witness_cases(entry, budget) + _solution_cases(entry, budget)


def run_corpus_suite(budget: Optional[SearchBudget] = None, example51_order: int = 3) -> RunReport:
    started = time.perf_counter()
    budget = budget or SearchBudget()
    entries = corpus(example51_order, budget)
    executor = BatchExecutor(func=lambda entry: _run_entry(entry, budget), num_threads=budget.max_workers)
    cases = [case for batch in executor.execute_ordered(entries) for case in batch]
    return build_report("corpus", cases, budget.seed, time.perf_counter() - started)


@SuiteFactory.register("corpus")
class CorpusSuite(Suite):
    def run(self, budget: SearchBudget, **params) -> RunReport:
        return run_corpus_suite(budget)
