# qtensor/checkers/nonnegative.py
"""
Exact coefficient scans: nonnegativity, positive diagonal, and the Q test
for nonnegative tensors (Q iff every diagonal coefficient is positive).
"""

import logging

import numpy as np

from ..exceptions import PreconditionError
from ..schemas import SearchBudget, Tensor, Verdict, Witness, WitnessKind
from ..tensors.core import diagonal
from . import CheckerFactory, ClassChecker
from .violations import SystemVariant, certified, falsified, system_violation

logger = logging.getLogger(__name__)


def is_nonnegative(A: Tensor, budget: SearchBudget = SearchBudget()) -> Verdict:
    negative = np.argwhere(A.coeffs < 0)
    if len(negative) == 0:
        return certified("nonnegative", "coefficient-scan", budget)
    index = tuple(int(i) + 1 for i in negative[0])
    value = float(A.coeffs[tuple(negative[0])])
    witness = Witness(kind=WitnessKind.INDEX, index=index, violation=-value)
    return falsified("nonnegative", witness, budget, searches=1, note=f"a_{''.join(map(str, index))} = {value!r}")


def has_positive_diagonal(A: Tensor) -> bool:
    return bool(np.all(diagonal(A) > 0))


def zero_diagonal_violation(A: Tensor, witness: Witness, budget: SearchBudget) -> float:
    """A zero diagonal a_{j...j} of a nonnegative tensor: e_j then solves the t = 0 system."""
    index = witness.index
    if len(index) != A.order or len(set(index)) != 1 or not 1 <= index[0] <= A.dim:
        return 0.0
    if np.any(A.coeffs < 0) or A.coeffs[tuple(i - 1 for i in index)] != 0.0:
        return 0.0
    x = witness.x if witness.x is not None else np.eye(A.dim)[index[0] - 1]
    return system_violation(A, x, 0.0, SystemVariant.R0, budget)


def check_Q_nonnegative(A: Tensor, budget: SearchBudget = SearchBudget()) -> Verdict:
    """
    Exact Q verdict for a nonnegative tensor. A zero diagonal coefficient
    a_{j...j} is reported with the index and the point e_j, which violates R0.
    """
    if is_nonnegative(A, budget).falsified:
        raise PreconditionError(
            "check_Q_nonnegative needs a nonnegative tensor; use check_Q_empirical instead"
        )
    d = diagonal(A)
    if np.all(d > 0):
        logger.info("Nonnegative tensor with positive diagonal: Q certified")
        return certified("Q", "nonnegative-positive-diagonal", budget)

    j = int(np.nonzero(d <= 0)[0][0])
    x = tuple(float(v) for v in np.eye(A.dim)[j])
    provisional = Witness(kind=WitnessKind.INDEX, index=(j + 1,) * A.order, x=x, violation=1.0)
    witness = provisional.model_copy(
        update={"violation": zero_diagonal_violation(A, provisional, budget)}
    )
    logger.info(f"Zero diagonal coefficient at index {j + 1}: Q falsified")
    return falsified("Q", witness, budget, searches=1, note="zero diagonal coefficient")


@CheckerFactory.register("nonnegative")
class NonnegativeChecker(ClassChecker):
    def check(self, A: Tensor, budget: SearchBudget) -> Verdict:
        return is_nonnegative(A, budget)

    def violation(self, A: Tensor, witness: Witness, budget: SearchBudget) -> float:
        if witness.kind != WitnessKind.INDEX or len(witness.index) != A.order:
            return 0.0
        if not all(1 <= i <= A.dim for i in witness.index):
            return 0.0
        return max(0.0, -float(A.coeffs[tuple(i - 1 for i in witness.index)]))
