# qtensor/checkers/q_tensor.py
import itertools
import logging
from typing import List

import numpy as np

from ..schemas import (
    SearchBudget,
    SolveStatus,
    TCPInstance,
    Tensor,
    Verdict,
    VerdictStatus,
    Witness,
    WitnessKind,
)
from ..engine.solver import solve
from ..utils.search import stream
from . import CheckerFactory, ClassChecker
from .nonnegative import zero_diagonal_violation, check_Q_nonnegative, is_nonnegative
from .violations import falsified, unfalsified

logger = logging.getLogger(__name__)

_Q_FAMILY = 11
MAGNITUDES = (0.5, 1.0, 2.0)
GRID_POSITIVE_NOTE = "all grid q solved"


def q_candidates(n: int, budget: SearchBudget) -> List[np.ndarray]:
    """-e_i first, then every sign pattern under every per-component magnitude, then `random_q` normal vectors."""
    candidates = [-np.eye(n)[i] for i in range(n)]
    for magnitudes in itertools.product(MAGNITUDES, repeat=n):
        for signs in itertools.product((-1.0, 1.0), repeat=n):
            candidates.append(np.array(magnitudes) * np.array(signs))
    rng = stream(budget.seed, _Q_FAMILY)
    candidates.extend(rng.standard_normal(n) for _ in range(budget.random_q))
    return candidates


def check_Q_empirical(A: Tensor, budget: SearchBudget) -> Verdict:
    """
    Nonnegative tensors get the exact diagonal test. Otherwise TCP(q, A) is
    solved on the q grid; only a certified unsolvable q falsifies Q.
    """
    if is_nonnegative(A, budget).status == VerdictStatus.CERTIFIED_HOLDS:
        return check_Q_nonnegative(A, budget)

    solved = unresolved = 0
    candidates = q_candidates(A.dim, budget)
    for searches, q in enumerate(candidates, start=1):
        instance = TCPInstance(tensor=A, q=tuple(float(v) for v in q))
        outcome = solve(instance, budget, stop_at_first=True)
        if outcome.status == SolveStatus.SOLVED:
            solved += 1
        elif outcome.status == SolveStatus.NO_SOLUTION_CERTIFIED:
            witness = Witness(
                kind=WitnessKind.QVECTOR,
                q=instance.q,
                violation=float(np.max(np.abs(q))),
            )
            logger.info(f"Q violated: {witness.summary()} ({outcome.proof_note})")
            return falsified("Q", witness, budget, samples=searches, searches=searches, note=outcome.proof_note)
        else:
            unresolved += 1
            logger.debug(f"No solution found for q = {q.tolist()}")

    if unresolved:
        note = f"solver-incomplete: {unresolved} of {len(candidates)} q unresolved"
    else:
        note = f"{GRID_POSITIVE_NOTE} ({solved})"
    return unfalsified("Q", budget, samples=len(candidates), searches=len(candidates), note=note)


@CheckerFactory.register("Q")
class QChecker(ClassChecker):
    def check(self, A: Tensor, budget: SearchBudget) -> Verdict:
        return check_Q_empirical(A, budget)

    def violation(self, A: Tensor, witness: Witness, budget: SearchBudget) -> float:
        if witness.kind == WitnessKind.INDEX:
            return zero_diagonal_violation(A, witness, budget)
        if witness.kind != WitnessKind.QVECTOR or len(witness.q) != A.dim:
            return 0.0
        outcome = solve(TCPInstance(tensor=A, q=witness.q), budget, stop_at_first=True)
        if outcome.status != SolveStatus.NO_SOLUTION_CERTIFIED:
            return 0.0
        return float(np.max(np.abs(witness.q)))


def is_q_grid_positive(verdict: Verdict) -> bool:
    """Q unfalsified with every sampled q solved: evidence for Q, not a proof."""
    return (
        verdict.status == VerdictStatus.UNFALSIFIED
        and verdict.effort.note.startswith(GRID_POSITIVE_NOTE)
    )
