# qtensor/engine/solver.py
"""
TCP(q, A) solver by complementary-support enumeration.

Every solution x has a support J = {i : x_i > 0} on which the slack
w = Ax^{m-1} + q vanishes, while x_i = 0 and w_i >= 0 off J. For each J we
solve the square system w_J(x_J) = 0 by damped Newton from several starts
in the positive orthant, and we try to rule J out exactly from the
coefficients first. A NO-SOLUTION-CERTIFIED outcome is only ever claimed
when every support was ruled out exactly.
"""

import logging
import time
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from ..exceptions import (
    DimensionMismatchError,
    PreconditionError,
    SolverRefusalError,
)
from ..schemas import (
    IndexSet,
    MonomialForm,
    ResidualReport,
    SearchBudget,
    Solution,
    SolveOutcome,
    SolveStats,
    SolveStatus,
    TCPInstance,
    Tensor,
)
from ..tensors.core import apply, diagonal, jacobian, monomial_form, restrict_form
from ..utils.batch_executor import BatchExecutor
from ..utils.search import embed, mask_of, stream, subsets

logger = logging.getLogger(__name__)

MAX_SOLVE_DIM = 20
NEWTON_TOL = 1e-12
START_RANGE = (-2.0, 2.0)  # log10 bounds of random starts
MIN_DAMPING = 1e-10


def _as_vector(inst: TCPInstance, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape[0] != inst.tensor.dim:
        raise DimensionMismatchError(expected=inst.tensor.dim, got=x.shape[0], what="x")
    return x


def residual(inst: TCPInstance, x) -> ResidualReport:
    """max-norm of min(x, Ax^{m-1} + q) and the 1-based index attaining it."""
    x = _as_vector(inst, x)
    gap = np.abs(np.minimum(x, apply(inst.tensor, x) + inst.q_array))
    worst = int(np.argmax(gap))
    return ResidualReport(value=float(gap[worst]), worst_index=worst + 1)


def make_solution(inst: TCPInstance, x: np.ndarray, budget: SearchBudget) -> Solution:
    slack = apply(inst.tensor, x) + inst.q_array
    return Solution(
        x=tuple(float(v) for v in x),
        support=IndexSet(members=[i + 1 for i in np.nonzero(x > budget.support_tol)[0]]),
        slack=tuple(float(v) for v in slack),
        residual=float(np.max(np.abs(np.minimum(x, slack)))),
    )


def _accept(inst: TCPInstance, x: np.ndarray, budget: SearchBudget) -> Optional[Solution]:
    x = np.where((x < 0) & (x >= -budget.feas_tol), 0.0, x)
    if not np.all(np.isfinite(x)) or np.any(x < 0):
        return None
    solution = make_solution(inst, x, budget)
    if min(solution.slack) < -budget.feas_tol or solution.residual > budget.accept_tol:
        return None
    return solution


def _merge(solutions: List[Solution], radius: float) -> List[Solution]:
    """Keep first-seen order; a near-duplicate replaces its representative if its residual is smaller."""
    kept: List[Solution] = []
    for candidate in solutions:
        for k, existing in enumerate(kept):
            if np.max(np.abs(candidate.x_array - existing.x_array)) < radius:
                if candidate.residual < existing.residual:
                    kept[k] = candidate
                break
        else:
            kept.append(candidate)
    return kept


def _damped_newton(F, DF, z0: np.ndarray, max_iter: int) -> Tuple[np.ndarray, int]:
    z = np.array(z0, dtype=np.float64)
    f = F(z)
    iterations = 0
    with np.errstate(over="ignore", invalid="ignore"):
        while iterations < max_iter and np.max(np.abs(f)) >= NEWTON_TOL:
            iterations += 1
            step = np.linalg.lstsq(DF(z), -f, rcond=None)[0]
            norm2 = f @ f
            alpha = 1.0
            while alpha >= MIN_DAMPING:
                trial = z + alpha * step
                f_trial = F(trial)
                if f_trial @ f_trial < norm2:
                    break
                alpha *= 0.5
            else:
                break
            z, f = trial, f_trial
            if np.max(np.abs(alpha * step)) < NEWTON_TOL:
                break
    return z, iterations


def _solve_support(
    inst: TCPInstance, J: Sequence[int], budget: SearchBudget
) -> Tuple[List[Solution], int]:
    A, q, n = inst.tensor, inst.q_array, inst.tensor.dim
    J = list(J)
    if not J:
        found = _accept(inst, np.zeros(n), budget)
        return ([found] if found else []), 0

    idx = np.ix_(J, J)

    def F(z):
        return (apply(A, embed(z, J, n)) + q)[J]

    def DF(z):
        return jacobian(A, embed(z, J, n))[idx]

    rng = stream(budget.seed, mask_of(J))
    starts = [np.ones(len(J))] + [
        10.0 ** rng.uniform(*START_RANGE, size=len(J)) for _ in range(budget.multistarts)
    ]

    candidates = []
    total_iterations = 0
    for z0 in starts:
        z, iterations = _damped_newton(F, DF, z0, budget.newton_max_iter)
        total_iterations += iterations
        found = _accept(inst, embed(z, J, n), budget)
        if found is not None:
            candidates.append(found)
    return _merge(candidates, budget.merge_radius), total_iterations


def solve_support(inst: TCPInstance, J: IndexSet, budget: SearchBudget) -> List[Solution]:
    """
    Roots of the support-J system w_J = 0 with x zero off J that pass the
    nonnegativity, off-support slack and residual filters. An empty list only
    means nothing was found under the budget.
    """
    if J.members and J.members[-1] > inst.tensor.dim:
        raise DimensionMismatchError(
            expected=inst.tensor.dim, got=J.members[-1], what="support index"
        )
    solutions, _ = _solve_support(inst, J.zero_based(), budget)
    return solutions


# ------------------------------------------------------------------
# Exact support refutation
# ------------------------------------------------------------------
def _label(J: Sequence[int]) -> str:
    return "{" + ",".join(str(j + 1) for j in J) + "}"


def _uniform_sign(form: MonomialForm, constant: float) -> int:
    """+1 / -1 when form + constant has that strict sign on the whole open orthant, else 0."""
    coeffs = list(form.terms.values())
    if all(c >= 0 for c in coeffs) and (constant > 0 or (constant >= 0 and any(c > 0 for c in coeffs))):
        return 1
    if all(c <= 0 for c in coeffs) and (constant < 0 or (constant <= 0 and any(c < 0 for c in coeffs))):
        return -1
    return 0


def _sign_changes(coeffs: np.ndarray) -> int:
    signs = [np.sign(c) for c in coeffs if c != 0.0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _single_positive_root(coeffs: np.ndarray) -> float:
    """Bisection for the unique positive root of a polynomial with one sign change."""
    nonzero = np.nonzero(coeffs)[0]
    coeffs = coeffs[nonzero[0]:]
    low_sign = np.sign(coeffs[0])
    lo, hi = 0.0, 1.0
    while np.sign(P.polyval(hi, coeffs)) == low_sign and hi < 1e150:
        lo, hi = hi, hi * 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if np.sign(P.polyval(mid, coeffs)) == low_sign:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _substitute(form: MonomialForm, constant: float, pinned: Dict[int, float]):
    """
    Univariate coefficients (by power) after substituting pinned values, the
    free variables, and per power the magnitude summed before cancellation.
    """
    free = sorted({j for j in form.variables() if j not in pinned})
    if len(free) > 1:
        return None, free, None
    coeffs = np.zeros(form.degree + 1)
    magnitudes = np.zeros(form.degree + 1)
    coeffs[0] = constant
    magnitudes[0] = abs(constant)
    for exponents, c in form.terms.items():
        value = c
        power = 0
        for j, e in enumerate(exponents):
            if e == 0:
                continue
            if j in pinned:
                value *= pinned[j] ** e
            else:
                power = e
        coeffs[power] += value
        magnitudes[power] += abs(value)
    return coeffs, free, magnitudes


def _cancelled(coeffs: np.ndarray, magnitudes: np.ndarray, tol: float) -> np.ndarray:
    """Powers whose terms cancel to rounding level; their true sign is unknown."""
    return (magnitudes > 0) & (np.abs(coeffs) <= tol * (1.0 + magnitudes))


def refute_support(inst: TCPInstance, J: Sequence[int], tol: float = 1e-9) -> Optional[str]:
    """
    Try to prove that no solution has exact support J (0-based). Returns a
    short note naming the argument, or None when J cannot be ruled out.

    Arguments used, in order:
      * an on-support equation whose terms and constant share one strict sign;
      * an off-support slack with nonpositive terms and a negative constant;
      * equations that are univariate after substitution: no sign change in
        the coefficients means no positive root, one sign change pins the
        variable to the unique root found by bisection. With every variable
        pinned the remaining equations and slacks are evaluated.
    """
    A, q = inst.tensor, inst.q
    J = list(J)
    on = set(J)
    forms = {
        i: restrict_form(monomial_form(A, i + 1), J) for i in range(A.dim)
    }

    for i in J:
        if _uniform_sign(forms[i], q[i]) != 0:
            return f"support {_label(J)}: equation {i + 1} has no zero on the open orthant"
    for i in range(A.dim):
        if i in on:
            continue
        coeffs = list(forms[i].terms.values())
        if all(c <= 0 for c in coeffs) and q[i] < 0:
            return f"support {_label(J)}: slack {i + 1} is negative on the open orthant"

    pinned: Dict[int, float] = {}
    progress = True
    while progress and len(pinned) < len(J):
        progress = False
        for i in J:
            coeffs, free, magnitudes = _substitute(forms[i], q[i], pinned)
            if coeffs is None:
                continue
            scale = 1.0 + float(np.sum(magnitudes))
            cancelled = _cancelled(coeffs, magnitudes, tol)
            coeffs[cancelled] = 0.0
            if cancelled.any():
                # rounding decides the sign of a cancelled power, or the equation holds
                continue
            if not free or not np.any(coeffs[1:]):
                if abs(coeffs[0]) > tol * scale:
                    return f"support {_label(J)}: equation {i + 1} is a nonzero constant after root pinning"
                continue
            changes = _sign_changes(coeffs)
            if changes == 0:
                return f"support {_label(J)}: equation {i + 1} has no positive root (coefficient signs)"
            if changes == 1:
                pinned[free[0]] = _single_positive_root(coeffs)
                progress = True

    if len(pinned) < len(J):
        return None

    x = embed([pinned[j] for j in J], J, A.dim)
    w = apply(A, x) + inst.q_array
    scale = 1.0 + float(np.max(np.abs(apply(A, x)))) + float(np.max(np.abs(inst.q_array)))
    for i in J:
        if abs(w[i]) > tol * scale:
            return f"support {_label(J)}: pinned roots leave equation {i + 1} unsatisfied"
    for i in range(A.dim):
        if i not in on and w[i] < -tol * scale:
            return f"support {_label(J)}: slack {i + 1} is negative at the pinned roots"
    return None


# ------------------------------------------------------------------
# Full enumeration
# ------------------------------------------------------------------
def _support_task(inst: TCPInstance, J: Tuple[int, ...], budget: SearchBudget):
    note = refute_support(inst, J, tol=budget.feas_tol)
    if note is not None:
        logger.debug(f"Refuted {note}")
        return J, [], note, 0
    solutions, iterations = _solve_support(inst, J, budget)
    logger.debug(
        f"Support {_label(J)}: {len(solutions)} root(s) after {iterations} Newton iterations"
    )
    return J, solutions, None, iterations


def solve(inst: TCPInstance, budget: SearchBudget, stop_at_first: bool = False) -> SolveOutcome:
    """
    Enumerate all 2^n supports (ascending cardinality, lexicographic within)
    and aggregate the roots found. With `stop_at_first` the enumeration ends
    at the first support that yields a solution; the result is the same for
    any worker count.
    """
    n = inst.tensor.dim
    if n > MAX_SOLVE_DIM:
        logger.error(f"Refusing to enumerate 2^{n} supports")
        raise SolverRefusalError(
            f"Support enumeration needs 2^{n} subsystems; dimension {n} exceeds {MAX_SOLVE_DIM}"
        )

    started = time.perf_counter()
    supports = subsets(n, include_empty=True)
    executor = BatchExecutor(
        func=lambda J: _support_task(inst, J, budget), num_threads=budget.max_workers
    )

    results = []
    chunk = budget.max_workers if stop_at_first else len(supports)
    for offset in range(0, len(supports), chunk):
        batch = executor.execute_ordered(supports[offset:offset + chunk])
        if stop_at_first:
            for result in batch:
                results.append(result)
                if result[1]:
                    break
            if results[-1][1]:
                break
        else:
            results.extend(batch)

    solutions = _merge(
        [s for _, found, _, _ in results for s in found], budget.merge_radius
    )
    notes = [note for _, _, note, _ in results if note is not None]
    stats = SolveStats(
        supports_explored=len(results),
        supports_refuted=len(notes),
        newton_iterations=sum(iterations for *_, iterations in results),
        wall_time=time.perf_counter() - started,
    )

    if solutions:
        return SolveOutcome(status=SolveStatus.SOLVED, solutions=solutions, stats=stats)
    if len(notes) == len(supports):
        return SolveOutcome(
            status=SolveStatus.NO_SOLUTION_CERTIFIED,
            proof_note="; ".join(notes),
            stats=stats,
        )
    return SolveOutcome(status=SolveStatus.NO_SOLUTION_FOUND, stats=stats)


def _off_diagonal_nonzero(A: Tensor) -> bool:
    coeffs = np.array(A.coeffs)
    for i in range(A.dim):
        coeffs[(i,) * A.order] = 0.0
    return bool(np.any(coeffs != 0.0))


def solve_diagonal(A: Tensor, q) -> Solution:
    """Closed form x_i = (max(0, -q_i) / d_i)^{1/(m-1)} for a positive-diagonal diagonal tensor."""
    q = np.asarray(q, dtype=np.float64).reshape(-1)
    if q.shape[0] != A.dim:
        raise DimensionMismatchError(expected=A.dim, got=q.shape[0], what="q")
    if _off_diagonal_nonzero(A):
        raise PreconditionError("solve_diagonal needs a tensor with zero off-diagonal coefficients")
    d = diagonal(A)
    if np.any(d <= 0):
        raise PreconditionError(f"solve_diagonal needs a positive diagonal, got {d.tolist()}")

    x = (np.maximum(0.0, -q) / d) ** (1.0 / (A.order - 1))
    inst = TCPInstance(tensor=A, q=tuple(float(v) for v in q))
    return make_solution(inst, x, SearchBudget())
