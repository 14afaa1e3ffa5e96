# qtensor/checkers/systems.py
"""
R0, R and ER searches. Each class forbids a nonzero x >= 0 (with t >= 0)
solving a homogeneous system; a violation is searched support by support
with x normalized to the simplex of the support.
"""

import logging
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares

from ..schemas import SearchBudget, Tensor, Verdict, VerdictStatus, Witness, WitnessKind
from ..tensors.core import apply, jacobian
from ..utils.search import embed, mask_of, sample_simplex, stream, subsets
from . import CheckerFactory, ClassChecker
from .nonnegative import has_positive_diagonal, is_nonnegative
from .violations import SystemVariant, certified, falsified, system_violation, unfalsified

logger = logging.getLogger(__name__)

_FAMILY = {SystemVariant.R0: 1, SystemVariant.R: 2, SystemVariant.ER: 3}
LSQ_TOL = 1e-14


def _support_problem(A: Tensor, J: Sequence[int], variant: SystemVariant):
    n, k = A.dim, len(J)
    idx = np.ix_(J, J)
    with_t = variant != SystemVariant.R0

    def fun(z):
        x = embed(z[:k], J, n)
        f = apply(A, x)[list(J)]
        if variant == SystemVariant.R:
            f = f + z[k]
        elif variant == SystemVariant.ER:
            f = f + z[k] * z[:k]
        return np.append(f, z[:k].sum() - 1.0)

    def jac(z):
        x = embed(z[:k], J, n)
        out = np.zeros((k + 1, k + int(with_t)))
        out[:k, :k] = jacobian(A, x)[idx]
        if variant == SystemVariant.R:
            out[:k, k] = 1.0
        elif variant == SystemVariant.ER:
            out[:k, :k] += z[k] * np.eye(k)
            out[:k, k] = z[:k]
        out[k, :k] = 1.0
        return out

    return fun, jac


def _polish(
    A: Tensor, J: Sequence[int], variant: SystemVariant, z0: np.ndarray, budget: SearchBudget
) -> Tuple[np.ndarray, float]:
    fun, jac = _support_problem(A, J, variant)
    result = least_squares(
        fun,
        z0,
        jac=jac,
        bounds=(0.0, np.inf),
        method="trf",
        xtol=LSQ_TOL,
        ftol=LSQ_TOL,
        gtol=LSQ_TOL,
        max_nfev=budget.refine_iter,
    )
    k = len(J)
    t = float(result.x[k]) if variant != SystemVariant.R0 else 0.0
    return embed(result.x[:k], J, A.dim), t


def _initial_t(A: Tensor, x: np.ndarray, J: Sequence[int], variant: SystemVariant) -> float:
    f = apply(A, x)[list(J)]
    if variant == SystemVariant.R:
        return max(0.0, -float(np.mean(f)))
    if variant == SystemVariant.ER:
        return max(0.0, -float(np.mean(f / np.maximum(x[list(J)], 1e-12))))
    return 0.0


def _witness(A: Tensor, x: np.ndarray, t: float, variant: SystemVariant, budget: SearchBudget) -> Optional[Witness]:
    value = system_violation(A, x, t, variant, budget)
    if value <= budget.falsify_tol:
        return None
    total = float(np.sum(np.maximum(x, 0.0)))
    xn = tuple(float(v) for v in np.maximum(x, 0.0) / total)
    if variant == SystemVariant.R0:
        return Witness(kind=WitnessKind.POINT, x=xn, violation=value)
    power = A.order - 1 if variant == SystemVariant.R else A.order - 2
    return Witness(kind=WitnessKind.POINT_SCALAR, x=xn, t=t / total**power, violation=value)


def search_system(
    A: Tensor, budget: SearchBudget, variant: SystemVariant, hints: Iterable = ()
) -> Verdict:
    """
    Hints are tried first, then every vertex e_j exactly, then multistart
    bounded least squares on (x_J, t) for supports of size two and more.
    Starts come from per-support streams, so a larger budget only adds starts.
    """
    name = variant.value
    if is_nonnegative(A, budget).status == VerdictStatus.CERTIFIED_HOLDS and has_positive_diagonal(A):
        logger.info(f"Nonnegative tensor with positive diagonal: {name} certified")
        return certified(name, "nonnegative-positive-diagonal", budget)

    samples = searches = 0
    for hint in hints:
        x = np.asarray(hint, dtype=np.float64)
        samples += 1
        J = [int(j) for j in np.nonzero(x > budget.support_tol)[0]]
        if not J:
            continue
        candidates = [(x, 0.0)]
        if variant != SystemVariant.R0:
            xn = x / x.sum()
            z0 = np.append(xn[J], _initial_t(A, xn, J, variant))
            candidates.append(_polish(A, J, variant, z0, budget))
        for cx, ct in candidates:
            witness = _witness(A, cx, ct, variant, budget)
            if witness is not None:
                logger.info(f"{name} violated at hint: {witness.summary()}")
                return falsified(name, witness, budget, samples=samples, searches=searches, note="hint")

    n = A.dim
    for j in range(n):
        searches += 1
        samples += 1
        x = np.eye(n)[j]
        t = 0.0 if variant == SystemVariant.R0 else max(0.0, -float(A.coeffs[(j,) * A.order]))
        witness = _witness(A, x, t, variant, budget)
        if witness is not None:
            logger.info(f"{name} violated at a vertex: {witness.summary()}")
            return falsified(name, witness, budget, samples=samples, searches=searches)

    for J in subsets(n):
        if len(J) < 2:
            continue
        searches += 1
        rng = stream(budget.seed, _FAMILY[variant], mask_of(J))
        for _ in range(budget.multistarts):
            samples += 1
            xJ = sample_simplex(rng, len(J))
            x0 = embed(xJ, J, n)
            z0 = xJ if variant == SystemVariant.R0 else np.append(xJ, _initial_t(A, x0, J, variant))
            x, t = _polish(A, J, variant, z0, budget)
            witness = _witness(A, x, t, variant, budget)
            if witness is not None:
                logger.info(f"{name} violated on support {[j + 1 for j in J]}: {witness.summary()}")
                return falsified(name, witness, budget, samples=samples, searches=searches)

    return unfalsified(name, budget, samples=samples, searches=searches)


def _replay(A: Tensor, witness: Witness, variant: SystemVariant, budget: SearchBudget) -> float:
    if witness.kind == WitnessKind.POINT:
        return system_violation(A, witness.x, 0.0, variant, budget)
    if witness.kind == WitnessKind.POINT_SCALAR:
        if variant == SystemVariant.R0 and witness.t != 0.0:
            return 0.0
        return system_violation(A, witness.x, witness.t, variant, budget)
    return 0.0


def check_R0(A: Tensor, budget: SearchBudget, hints: Iterable = ()) -> Verdict:
    return search_system(A, budget, SystemVariant.R0, hints)


def check_R(A: Tensor, budget: SearchBudget, hints: Iterable = ()) -> Verdict:
    return search_system(A, budget, SystemVariant.R, hints)


def check_ER(A: Tensor, budget: SearchBudget, hints: Iterable = ()) -> Verdict:
    return search_system(A, budget, SystemVariant.ER, hints)


@CheckerFactory.register("R0")
class R0Checker(ClassChecker):
    def check(self, A: Tensor, budget: SearchBudget) -> Verdict:
        return check_R0(A, budget)

    def violation(self, A: Tensor, witness: Witness, budget: SearchBudget) -> float:
        return _replay(A, witness, SystemVariant.R0, budget)


@CheckerFactory.register("R")
class RChecker(ClassChecker):
    def check(self, A: Tensor, budget: SearchBudget) -> Verdict:
        return check_R(A, budget)

    def violation(self, A: Tensor, witness: Witness, budget: SearchBudget) -> float:
        return _replay(A, witness, SystemVariant.R, budget)


@CheckerFactory.register("ER")
class ERChecker(ClassChecker):
    def check(self, A: Tensor, budget: SearchBudget) -> Verdict:
        return check_ER(A, budget)

    def violation(self, A: Tensor, witness: Witness, budget: SearchBudget) -> float:
        return _replay(A, witness, SystemVariant.ER, budget)
