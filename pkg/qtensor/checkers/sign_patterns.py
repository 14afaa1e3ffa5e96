# qtensor/checkers/sign_patterns.py
import itertools
import logging
from typing import List, Tuple

import numpy as np
from scipy.optimize import minimize

from ..schemas import SearchBudget, Tensor, Verdict, Witness, WitnessKind
from ..utils.search import sample_sphere, stream
from . import CheckerFactory, ClassChecker
from .violations import falsified, sign_product_violation, unfalsified

logger = logging.getLogger(__name__)

_P0_FAMILY = 6
_P0PRIME_FAMILY = 7


def sign_patterns(n: int) -> List[Tuple[int, ...]]:
    """All 3^n - 1 nonzero patterns in {-1, 0, 1}^n, fewest nonzeros first."""
    patterns = [p for p in itertools.product((0, 1, -1), repeat=n) if any(p)]
    return sorted(patterns, key=lambda p: sum(1 for s in p if s))


def _search(A: Tensor, budget: SearchBudget, prime: bool) -> Verdict:
    """
    One orthant per sign pattern: sphere samples folded into the orthant,
    then Nelder-Mead from the best sample when no sample violates.
    """
    name = "P0prime" if prime else "P0"
    family = _P0PRIME_FAMILY if prime else _P0_FAMILY

    def objective(x):
        return -sign_product_violation(A, x, prime, budget)

    samples = searches = 0
    for ordinal, pattern in enumerate(sign_patterns(A.dim)):
        searches += 1
        signs = np.array(pattern, dtype=np.float64)
        active = np.nonzero(signs)[0]
        rng = stream(budget.seed, family, ordinal)

        count = 1 if len(active) == 1 else budget.samples
        best, best_value = None, np.inf
        for _ in range(count):
            samples += 1
            x = np.zeros(A.dim)
            x[active] = np.abs(sample_sphere(rng, len(active))) * signs[active]
            value = objective(x)
            if value < best_value:
                best, best_value = x, value

        if -best_value <= budget.falsify_tol and len(active) > 1:
            result = minimize(
                lambda z: objective(_fold(z, active, signs, A.dim)),
                np.abs(best[active]),
                method="Nelder-Mead",
                options={"maxiter": budget.refine_iter, "xatol": 1e-12, "fatol": 1e-14},
            )
            candidate = _fold(result.x, active, signs, A.dim)
            if objective(candidate) < best_value:
                best, best_value = candidate, objective(candidate)

        if -best_value > budget.falsify_tol:
            x = best / np.linalg.norm(best)
            witness = Witness(kind=WitnessKind.POINT, x=tuple(float(v) for v in x), violation=-best_value)
            logger.info(f"{name} violated in orthant {pattern}: {witness.summary()}")
            return falsified(name, witness, budget, samples=samples, searches=searches)

    return unfalsified(name, budget, samples=samples, searches=searches)


def _fold(z: np.ndarray, active: np.ndarray, signs: np.ndarray, n: int) -> np.ndarray:
    """Map free coordinates into the orthant of the pattern."""
    x = np.zeros(n)
    x[active] = np.abs(z) * signs[active]
    return x


def check_P0(A: Tensor, budget: SearchBudget) -> Verdict:
    return _search(A, budget, prime=False)


def check_P0prime(A: Tensor, budget: SearchBudget) -> Verdict:
    """For even m, x_i^{m-1} has the sign of x_i, so P0prime coincides with P0."""
    if A.order % 2 == 0:
        verdict = check_P0(A, budget)
        update = {
            "class_name": "P0prime",
            "effort": verdict.effort.model_copy(update={"note": "even order, same verdict as P0"}),
        }
        if verdict.witness is not None:
            value = sign_product_violation(A, verdict.witness.x, prime=True, budget=budget)
            update["witness"] = verdict.witness.model_copy(update={"violation": value})
        return verdict.model_copy(update=update)
    return _search(A, budget, prime=True)


@CheckerFactory.register("P0")
class P0Checker(ClassChecker):
    def check(self, A: Tensor, budget: SearchBudget) -> Verdict:
        return check_P0(A, budget)

    def violation(self, A: Tensor, witness: Witness, budget: SearchBudget) -> float:
        if witness.kind != WitnessKind.POINT:
            return 0.0
        return sign_product_violation(A, witness.x, prime=False, budget=budget)


@CheckerFactory.register("P0prime")
class P0primeChecker(ClassChecker):
    def check(self, A: Tensor, budget: SearchBudget) -> Verdict:
        return check_P0prime(A, budget)

    def violation(self, A: Tensor, witness: Witness, budget: SearchBudget) -> float:
        if witness.kind != WitnessKind.POINT:
            return 0.0
        return sign_product_violation(A, witness.x, prime=True, budget=budget)
