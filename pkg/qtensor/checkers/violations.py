# qtensor/checkers/violations.py
"""
Violation measures for every witness shape. Each returns the magnitude by
which the point (or pair) violates the class definition after the
normalization its homogeneity allows, and 0.0 when it is not a violation.
A witness counts only when its replayed violation exceeds falsify_tol.
"""

from enum import Enum
from typing import Optional

import numpy as np

from ..schemas import Effort, SearchBudget, Tensor, Verdict, VerdictStatus, Witness
from ..tensors.core import apply, apply_scalar


class SystemVariant(str, Enum):
    R0 = "R0"
    R = "R"
    ER = "ER"


def _simplex_normalize(x: np.ndarray, budget: SearchBudget) -> Optional[np.ndarray]:
    if np.any(x < -budget.feas_tol):
        return None
    x = np.maximum(x, 0.0)
    total = x.sum()
    if total <= budget.support_tol:
        return None
    return x / total


def system_violation(
    A: Tensor, x, t: float, variant: SystemVariant, budget: SearchBudget
) -> float:
    """
    Nonzero x >= 0 and t >= 0 solving the homogeneous system of the variant:
    on the support (Ax^{m-1})_i + t = 0 (R), + t x_i = 0 (ER), = 0 (R0);
    off the support (Ax^{m-1})_i + t >= 0 (R) or >= 0 (R0, ER).
    Measured on the simplex, where t scales by s^{m-1} (R) or s^{m-2} (ER).
    """
    x = np.asarray(x, dtype=np.float64)
    total = float(np.sum(np.maximum(x, 0.0)))
    xn = _simplex_normalize(x, budget)
    if xn is None or t < 0:
        return 0.0
    if variant == SystemVariant.R0:
        tn = 0.0
    elif variant == SystemVariant.R:
        tn = t / total ** (A.order - 1)
    else:
        tn = t / total ** (A.order - 2)

    f = apply(A, xn)
    on = xn > budget.support_tol
    if variant == SystemVariant.ER:
        equations, off_slack = f + tn * xn, f
    elif variant == SystemVariant.R:
        equations, off_slack = f + tn, f + tn
    else:
        equations, off_slack = f, f

    if np.any(np.abs(equations[on]) > budget.accept_tol):
        return 0.0
    if np.any(off_slack[~on] < -budget.feas_tol):
        return 0.0
    return float(np.max(xn))


def semipositive_violation(A: Tensor, x, budget: SearchBudget) -> float:
    """-max of (Ax^{m-1})_i over active i, for x on the simplex."""
    xn = _simplex_normalize(np.asarray(x, dtype=np.float64), budget)
    if xn is None:
        return 0.0
    active = xn > budget.support_tol
    return max(0.0, -float(np.max(apply(A, xn)[active])))


def copositive_violation(A: Tensor, x, budget: SearchBudget) -> float:
    xn = _simplex_normalize(np.asarray(x, dtype=np.float64), budget)
    if xn is None:
        return 0.0
    return max(0.0, -apply_scalar(A, xn))


def sign_product_violation(A: Tensor, x, prime: bool, budget: SearchBudget) -> float:
    """
    -max over active i of x_i (Ax^{m-1})_i, or of x_i^{m-1} (Ax^{m-1})_i when
    `prime`, with x on the unit sphere.
    """
    x = np.asarray(x, dtype=np.float64)
    norm = np.linalg.norm(x)
    if norm <= budget.support_tol:
        return 0.0
    xn = x / norm
    active = np.abs(xn) > budget.support_tol
    factor = xn ** (A.order - 1) if prime else xn
    products = factor * apply(A, xn)
    return max(0.0, -float(np.max(products[active])))


def pair_products(A: Tensor, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    return (x - y) * (apply(A, x) - apply(A, y))


def pair_violation(A: Tensor, x, y, budget: SearchBudget) -> float:
    """-max over i with x_i != y_i of (x_i - y_i)((Ax^{m-1})_i - (Ay^{m-1})_i), pair scaled jointly to unit norm."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    norm = np.linalg.norm(np.concatenate([x, y]))
    if norm == 0.0:
        return 0.0
    xn, yn = x / norm, y / norm
    active = np.abs(xn - yn) > budget.pair_tol
    if not np.any(active):
        return 0.0
    return max(0.0, -float(np.max(pair_products(A, xn, yn)[active])))


# ------------------------------------------------------------------
# Verdict constructors
# ------------------------------------------------------------------
def certified(class_name: str, certificate: str, budget: SearchBudget, note: str = "") -> Verdict:
    return Verdict(
        class_name=class_name,
        status=VerdictStatus.CERTIFIED_HOLDS,
        certificate=certificate,
        effort=Effort(seed=budget.seed, note=note),
    )


def falsified(
    class_name: str, witness: Witness, budget: SearchBudget, samples: int = 0, searches: int = 0, note: str = ""
) -> Verdict:
    return Verdict(
        class_name=class_name,
        status=VerdictStatus.FALSIFIED,
        witness=witness,
        effort=Effort(samples=samples, searches=searches, seed=budget.seed, note=note),
    )


def unfalsified(
    class_name: str, budget: SearchBudget, samples: int = 0, searches: int = 0, note: str = ""
) -> Verdict:
    return Verdict(
        class_name=class_name,
        status=VerdictStatus.UNFALSIFIED,
        effort=Effort(samples=samples, searches=searches, seed=budget.seed, note=note),
    )
