# qtensor/engine/composer.py
import logging

import numpy as np

from ..exceptions import DimensionMismatchError, PreconditionError, SubproblemUnsolvedError
from ..schemas import IndexSet, SearchBudget, Solution, SolveStatus, TCPInstance, Tensor
from ..tensors.core import principal_sub_tensor
from ..utils.search import embed
from .solver import make_solution, residual, solve

logger = logging.getLogger(__name__)


def compose_theorem21(A: Tensor, q, budget: SearchBudget) -> Solution:
    """
    Solve TCP(q, A) for a tensor whose first two coefficient rows are equal.

    Components 1 and 2 of Ax^{m-1} then coincide, so the index with the larger
    q value can be set to zero: with q_2 <= q_1 index 1 is dropped and the
    principal sub-tensor over [n] minus {1} is solved against q without its
    first entry; otherwise index 2 is dropped. The sub-solution is embedded
    with a zero in the dropped slot.
    """
    q = np.asarray(q, dtype=np.float64).reshape(-1)
    if A.dim < 2:
        raise PreconditionError("compose_theorem21 needs dimension >= 2")
    if q.shape[0] != A.dim:
        raise DimensionMismatchError(expected=A.dim, got=q.shape[0], what="q")
    if not np.array_equal(A.coeffs[0], A.coeffs[1]):
        raise PreconditionError("compose_theorem21 needs a_{1 i2...im} = a_{2 i2...im} for every tail")

    dropped = 0 if q[1] <= q[0] else 1
    keep = [i for i in range(A.dim) if i != dropped]
    logger.debug(f"Dropping index {dropped + 1}, solving the sub-problem on {[k + 1 for k in keep]}")

    sub = principal_sub_tensor(A, IndexSet(members=[k + 1 for k in keep]))
    sub_instance = TCPInstance(tensor=sub, q=tuple(float(v) for v in q[keep]))
    outcome = solve(sub_instance, budget, stop_at_first=True)
    if outcome.status != SolveStatus.SOLVED:
        raise SubproblemUnsolvedError(
            f"Sub-problem without index {dropped + 1} ended {outcome.status.value}"
        )

    y = embed(outcome.solutions[0].x_array, keep, A.dim)
    instance = TCPInstance(tensor=A, q=tuple(float(v) for v in q))
    report = residual(instance, y)
    if report.value > budget.accept_tol:
        raise SubproblemUnsolvedError(
            f"Composed point misses the tolerance at component {report.worst_index} ({report.value:.3g})"
        )
    return make_solution(instance, y, budget)
