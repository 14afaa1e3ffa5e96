# qtensor/harness/theorem41.py
"""
On nonnegative tensors R0, R, ER and Q coincide, and hold exactly when the
diagonal is positive. Generated tensors must be certified when the diagonal
is positive, and falsified with replaying witnesses otherwise.
"""

import logging
import time
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..checkers import (
    check_ER,
    check_Q_empirical,
    check_Q_nonnegative,
    check_R,
    check_R0,
    has_positive_diagonal,
    replay_witness,
)
from ..corpus.generators import random_nonnegative
from ..schemas import CaseRecord, RunReport, SearchBudget, VerdictStatus
from ..tensors.core import diagonal
from ..utils.batch_executor import BatchExecutor
from . import Suite, SuiteFactory
from .report import build_report, make_case

logger = logging.getLogger(__name__)

Trial = Tuple[int, int, int, int, int]


def _trials(
    trials: int, m_range: Sequence[int], n_range: Sequence[int], seed: int, zero_diagonal_count: Optional[int]
) -> List[Trial]:
    """(trial, m, n, zero diagonal count, tensor seed); even trials keep a positive diagonal."""
    rng = np.random.default_rng(seed)
    specs = []
    for trial in range(trials):
        m = int(rng.choice(list(m_range)))
        n = int(rng.choice(list(n_range)))
        if zero_diagonal_count is not None:
            zeros = min(zero_diagonal_count, n)
        else:
            zeros = 0 if trial % 2 == 0 else int(rng.integers(1, n + 1))
        specs.append((trial, m, n, zeros, int(rng.integers(2**32))))
    return specs


def _run_trial(spec: Trial, budget: SearchBudget) -> List[CaseRecord]:
    trial, m, n, zeros, tensor_seed = spec
    A = random_nonnegative(m, n, zeros, tensor_seed)
    tensor_id = f"nonnegative(m={m},n={n},zero_diagonal={zeros},seed={tensor_seed})"
    positive = has_positive_diagonal(A)
    hints = [np.eye(n)[j] for j in np.nonzero(diagonal(A) == 0)[0]]
    expected = VerdictStatus.CERTIFIED_HOLDS if positive else VerdictStatus.FALSIFIED

    verdicts = {
        "R0": check_R0(A, budget, hints=hints),
        "R": check_R(A, budget, hints=hints),
        "ER": check_ER(A, budget, hints=hints),
        "Q": check_Q_empirical(A, budget),
    }
    if not positive:
        verdicts["Q-nonnegative"] = check_Q_nonnegative(A, budget)

    cases = []
    for class_name, verdict in verdicts.items():
        ok = verdict.status == expected
        if ok and verdict.falsified:
            replay_class = "Q" if class_name == "Q-nonnegative" else class_name
            ok = replay_witness(replay_class, A, verdict.witness, budget) > budget.falsify_tol
        cases.append(
            make_case(
                case_id=f"theorem41-{trial:04d}-{class_name}",
                tensor_id=tensor_id,
                class_name=class_name,
                expected=expected.value,
                got=verdict.status.value,
                ok=ok,
                seed=tensor_seed,
                verdict=verdict,
            )
        )
    return cases


def run_theorem41_suite(
    trials: int,
    m_range: Sequence[int] = (3, 4),
    n_range: Sequence[int] = (2, 3, 4),
    seed: int = 0,
    zero_diagonal_count: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
) -> RunReport:
    started = time.perf_counter()
    budget = (budget or SearchBudget()).with_overrides(seed=seed)
    specs = _trials(trials, m_range, n_range, seed, zero_diagonal_count)
    logger.info(f"Running {len(specs)} nonnegative trials")

    executor = BatchExecutor(func=lambda spec: _run_trial(spec, budget), num_threads=budget.max_workers)
    cases = [case for batch in executor.execute_ordered(specs) for case in batch]
    return build_report("theorem41", cases, seed, time.perf_counter() - started)


@SuiteFactory.register("theorem41")
class Theorem41Suite(Suite):
    def run(self, budget: SearchBudget, **params) -> RunReport:
        return run_theorem41_suite(
            trials=params.get("trials") or 500,
            m_range=params.get("m_range") or (3, 4),
            n_range=params.get("n_range") or (2, 3, 4),
            seed=budget.seed,
            zero_diagonal_count=params.get("zero_diagonal_count"),
            budget=budget,
        )
