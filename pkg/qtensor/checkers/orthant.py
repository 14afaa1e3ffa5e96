# qtensor/checkers/orthant.py
"""Semi-positivity and copositivity: searches over the nonnegative orthant, normalized to the simplex."""

import logging

import numpy as np

from ..schemas import SearchBudget, Tensor, Verdict, VerdictStatus, Witness, WitnessKind
from ..tensors.core import apply, apply_scalar, jacobian
from ..utils.search import (
    coordinate_descent,
    embed,
    mask_of,
    project_simplex,
    sample_simplex,
    stream,
    subsets,
)
from . import CheckerFactory, ClassChecker
from .nonnegative import is_nonnegative
from .violations import (
    certified,
    copositive_violation,
    falsified,
    semipositive_violation,
    unfalsified,
)

logger = logging.getLogger(__name__)

_SEMIPOSITIVE_FAMILY = 4
_COPOSITIVE_FAMILY = 5


def _point_witness(x: np.ndarray, value: float) -> Witness:
    return Witness(kind=WitnessKind.POINT, x=tuple(float(v) for v in x / x.sum()), violation=value)


def check_semipositive(A: Tensor, budget: SearchBudget) -> Verdict:
    """
    Looks for x >= 0, x != 0 with (Ax^{m-1})_i < 0 at every i where x_i > 0.
    Per support J: vertices and simplex samples, then coordinate descent on
    the best sample through the simplex projection.
    """
    if is_nonnegative(A, budget).status == VerdictStatus.CERTIFIED_HOLDS:
        logger.info("Nonnegative tensor: semipositive certified")
        return certified("semipositive", "nonnegative-coefficients", budget)

    n = A.dim
    samples = searches = 0
    for J in subsets(n):
        searches += 1
        rng = stream(budget.seed, _SEMIPOSITIVE_FAMILY, mask_of(J))
        if len(J) == 1:
            candidates = [np.ones(1)]
        else:
            candidates = [sample_simplex(rng, len(J)) for _ in range(budget.samples)]

        best, best_value = None, -np.inf
        for z in candidates:
            samples += 1
            value = semipositive_violation(A, embed(z, J, n), budget)
            if value > best_value:
                best, best_value = z, value
        if best_value <= budget.falsify_tol and len(J) > 1:
            z, _ = coordinate_descent(
                lambda z: -semipositive_violation(A, embed(project_simplex(z), J, n), budget),
                best,
                iterations=budget.refine_iter,
            )
            best = project_simplex(z)
            best_value = semipositive_violation(A, embed(best, J, n), budget)
        if best_value > budget.falsify_tol:
            x = embed(best, J, n)
            logger.info(f"semipositive violated on support {[j + 1 for j in J]}")
            return falsified("semipositive", _point_witness(x, best_value), budget, samples, searches)

    return unfalsified("semipositive", budget, samples=samples, searches=searches)


def _gradient(A: Tensor, x: np.ndarray) -> np.ndarray:
    """Gradient of Ax^m for a general (unsymmetrized) tensor."""
    return apply(A, x) + jacobian(A, x).T @ x


def _projected_gradient(A: Tensor, x0: np.ndarray, iterations: int) -> np.ndarray:
    x = x0
    value = apply_scalar(A, x)
    step = 1.0
    for _ in range(iterations):
        g = _gradient(A, x)
        while step > 1e-12:
            trial = project_simplex(x - step * g)
            trial_value = apply_scalar(A, trial)
            if trial_value < value:
                break
            step *= 0.5
        else:
            break
        if np.max(np.abs(trial - x)) < 1e-14:
            break
        x, value = trial, trial_value
        step *= 2.0
    return x


def check_copositive(A: Tensor, budget: SearchBudget) -> Verdict:
    """
    Minimizes Ax^m over the simplex: vertices first, then projected gradient
    from the best `multistarts` of `samples` random simplex points.
    """
    if is_nonnegative(A, budget).status == VerdictStatus.CERTIFIED_HOLDS:
        logger.info("Nonnegative tensor: copositive certified")
        return certified("copositive", "nonnegative-coefficients", budget)

    n = A.dim
    samples = 0
    for j in range(n):
        samples += 1
        value = copositive_violation(A, np.eye(n)[j], budget)
        if value > budget.falsify_tol:
            return falsified("copositive", _point_witness(np.eye(n)[j], value), budget, samples, 1)

    rng = stream(budget.seed, _COPOSITIVE_FAMILY)
    points = [sample_simplex(rng, n) for _ in range(budget.samples)]
    samples += len(points)
    points.sort(key=lambda x: apply_scalar(A, x))

    searches = 0
    for x0 in points[: budget.multistarts]:
        searches += 1
        x = _projected_gradient(A, x0, budget.refine_iter)
        value = copositive_violation(A, x, budget)
        if value > budget.falsify_tol:
            logger.info(f"copositive violated, Ax^m = {-value:.3g}")
            return falsified("copositive", _point_witness(x, value), budget, samples, searches)

    return unfalsified("copositive", budget, samples=samples, searches=searches)


@CheckerFactory.register("semipositive")
class SemipositiveChecker(ClassChecker):
    def check(self, A: Tensor, budget: SearchBudget) -> Verdict:
        return check_semipositive(A, budget)

    def violation(self, A: Tensor, witness: Witness, budget: SearchBudget) -> float:
        if witness.kind != WitnessKind.POINT:
            return 0.0
        return semipositive_violation(A, witness.x, budget)


@CheckerFactory.register("copositive")
class CopositiveChecker(ClassChecker):
    def check(self, A: Tensor, budget: SearchBudget) -> Verdict:
        return check_copositive(A, budget)

    def violation(self, A: Tensor, witness: Witness, budget: SearchBudget) -> float:
        if witness.kind != WitnessKind.POINT:
            return 0.0
        return copositive_violation(A, witness.x, budget)
