# qtensor/checkers/strong_p0.py
"""
SP0 (x -> Ax^{m-1} is a P0-function). Membership is never certified; a
violation is a pair x != y with a negative product
(x_i - y_i)((Ax^{m-1})_i - (Ay^{m-1})_i) at every index where they differ.
"""

import logging
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import PreconditionError
from ..schemas import SearchBudget, Tensor, Verdict, Witness, WitnessKind
from ..tensors.core import component_depends_on, monomial_form
from ..utils.search import coordinate_descent, embed, mask_of, stream, subsets
from . import CheckerFactory, ClassChecker
from .violations import falsified, pair_violation, unfalsified

logger = logging.getLogger(__name__)

_GUIDED_FAMILY = 8
_SUBTENSOR_FAMILY = 9
_STRUCTURED_FAMILY = 10

Pair = Tuple[np.ndarray, np.ndarray]


def sp0_odd_necessary(A: Tensor, budget: SearchBudget = SearchBudget()) -> Verdict:
    """
    For odd m an SP0 tensor has every component either identically zero or
    free of its own variable. Exact on coefficients; passing is not sufficient.
    """
    if A.order % 2 == 0:
        raise PreconditionError(f"sp0_odd_necessary needs an odd order, got m = {A.order}")

    for i in range(1, A.dim + 1):
        form = monomial_form(A, i)
        if form.terms and component_depends_on(A, i, i):
            magnitude = max(abs(c) for e, c in form.terms.items() if e[i - 1] > 0)
            witness = Witness(kind=WitnessKind.INDEX, index=(i,), violation=magnitude)
            return falsified(
                "SP0", witness, budget, searches=1,
                note=f"component {i} is not identically zero and depends on x_{i}",
            )
    return unfalsified("SP0", budget, searches=1, note="odd-order necessary condition holds")


def _pair_witness(A: Tensor, x: np.ndarray, y: np.ndarray, value: float) -> Witness:
    norm = np.linalg.norm(np.concatenate([x, y]))
    return Witness(
        kind=WitnessKind.PAIR,
        x=tuple(float(v) for v in x / norm),
        y=tuple(float(v) for v in y / norm),
        violation=value,
    )


def _guided_pair(A: Tensor, i: int, budget: SearchBudget) -> Optional[Pair]:
    """
    Pairs differing only in coordinate i (0-based). Component i is an even
    form, so negating the pair flips the sign of the only active product.
    """
    rng = stream(budget.seed, _GUIDED_FAMILY)
    for _ in range(budget.samples):
        x = rng.standard_normal(A.dim)
        y = x.copy()
        y[i] = rng.standard_normal()
        for candidate in ((x, y), (-x, -y)):
            if pair_violation(A, *candidate, budget) > budget.falsify_tol:
                return candidate
    return None


def _best_of(
    A: Tensor, budget: SearchBudget, build: Callable[[np.ndarray], Pair], draw: Callable[[], np.ndarray]
) -> Tuple[Pair, float, int]:
    """Best of `samples` draws, then coordinate descent on the parameters of the best draw."""

    def objective(z):
        return -pair_violation(A, *build(z), budget)

    best_z, best_value = None, np.inf
    for _ in range(budget.samples):
        z = draw()
        value = objective(z)
        if value < best_value:
            best_z, best_value = z, value
    if -best_value <= budget.falsify_tol:
        best_z, best_value = coordinate_descent(objective, best_z, iterations=budget.refine_iter)
    return build(best_z), -best_value, budget.samples


def check_SP0(A: Tensor, budget: SearchBudget) -> Verdict:
    n = A.dim
    samples = searches = 0

    def found(pair: Pair, value: float, note: str) -> Verdict:
        logger.info(f"SP0 violated ({note})")
        return falsified("SP0", _pair_witness(A, *pair, value), budget, samples, searches, note)

    if A.order % 2 == 1:
        necessary = sp0_odd_necessary(A, budget)
        if necessary.falsified:
            searches += 1
            i = necessary.witness.index[0] - 1
            pair = _guided_pair(A, i, budget)
            samples += budget.samples
            if pair is not None:
                return found(pair, pair_violation(A, *pair, budget), f"guided by component {i + 1}")

    # Principal sub-tensors: zero outside J leaves those indices inactive.
    for J in subsets(n):
        searches += 1
        k = len(J)
        rng = stream(budget.seed, _SUBTENSOR_FAMILY, mask_of(J))
        pair, value, used = _best_of(
            A,
            budget,
            build=lambda z, J=J, k=k: (embed(z[:k], J, n), embed(z[k:], J, n)),
            draw=lambda rng=rng, k=k: rng.standard_normal(2 * k),
        )
        samples += used
        if value > budget.falsify_tol:
            return found(pair, value, f"principal sub-tensor on {[j + 1 for j in J]}")

    # Pairs sharing every coordinate outside S.
    for S in subsets(n):
        if len(S) == n:
            continue
        searches += 1
        k = len(S)
        rest = [j for j in range(n) if j not in S]
        rng = stream(budget.seed, _STRUCTURED_FAMILY, mask_of(S))
        pair, value, used = _best_of(
            A,
            budget,
            build=lambda z, S=S, rest=rest, k=k: _structured(z, S, rest, k, n),
            draw=lambda rng=rng, k=k: rng.standard_normal(2 * k + n - k),
        )
        samples += used
        if value > budget.falsify_tol:
            return found(pair, value, f"pair differing on {[j + 1 for j in S]}")

    return unfalsified("SP0", budget, samples=samples, searches=searches)


def _structured(z: np.ndarray, S: Sequence[int], rest: Sequence[int], k: int, n: int) -> Pair:
    shared = embed(z[2 * k:], rest, n)
    return shared + embed(z[:k], S, n), shared + embed(z[k:2 * k], S, n)


@CheckerFactory.register("SP0")
class SP0Checker(ClassChecker):
    def check(self, A: Tensor, budget: SearchBudget) -> Verdict:
        return check_SP0(A, budget)

    def violation(self, A: Tensor, witness: Witness, budget: SearchBudget) -> float:
        if witness.kind == WitnessKind.PAIR:
            return pair_violation(A, witness.x, witness.y, budget)
        if witness.kind == WitnessKind.INDEX and A.order % 2 == 1 and len(witness.index) == 1:
            i = witness.index[0]
            if not 1 <= i <= A.dim:
                return 0.0
            form = monomial_form(A, i)
            return max((abs(c) for e, c in form.terms.items() if e[i - 1] > 0), default=0.0)
        return 0.0
