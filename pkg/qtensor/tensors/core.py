# qtensor/tensors/core.py
"""
Dense tensor operations: construction from sparse entries, the polynomial map
x -> Ax^{m-1}, its Jacobian, principal sub-tensors and coefficient-level
structure (monomial forms, variable dependence).
"""

import logging
from collections import defaultdict
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..exceptions import DimensionMismatchError, TensorValidationError
from ..schemas import IndexSet, MonomialForm, Tensor

logger = logging.getLogger(__name__)

MAX_COEFFS = 10**7

Entry = Tuple[Tuple[int, ...], float]


def _build(order: int, dim: int, entries: Iterable[Entry], warn: bool) -> Tensor:
    if order < 2:
        raise TensorValidationError(f"Tensor order must be >= 2, got {order}")
    if dim < 1:
        raise TensorValidationError(f"Tensor dimension must be >= 1, got {dim}")
    if dim**order > MAX_COEFFS:
        raise TensorValidationError(
            f"Tensor with n^m = {dim}^{order} coefficients exceeds the desk-scale limit of {MAX_COEFFS}"
        )

    coeffs = np.zeros((dim,) * order)
    normalized: List[Entry] = []
    seen = set()
    for index, value in entries:
        index = tuple(int(i) for i in index)
        if len(index) != order or not all(1 <= i <= dim for i in index):
            raise TensorValidationError(
                f"Entry index {index} is out of range for order {order}, dim {dim}"
            )
        if not np.isfinite(float(value)):
            raise TensorValidationError(f"Entry {index} has non-finite value {value}")
        if warn and index in seen:
            logger.warning(f"Duplicate entry {index}; keeping the last value {value}")
        seen.add(index)
        coeffs[tuple(i - 1 for i in index)] = float(value)
        normalized.append((index, float(value)))

    return Tensor(order=order, dim=dim, coeffs=coeffs, entries=tuple(normalized))


def from_entries(order: int, dim: int, entries: Iterable[Entry]) -> Tensor:
    """
    Build a tensor from (1-based index tuple, value) pairs. Unlisted
    coefficients are zero; duplicate tuples resolve last-write-wins.
    """
    return _build(order, dim, entries, warn=True)


def zeros(order: int, dim: int) -> Tensor:
    return _build(order, dim, (), warn=False)


def from_array(coeffs: np.ndarray) -> Tensor:
    """Tensor from a dense (n,)*m array; the entry list holds every nonzero coefficient."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    order, dim = coeffs.ndim, coeffs.shape[0]
    entries = [
        (tuple(int(i) + 1 for i in index), float(coeffs[tuple(index)]))
        for index in np.argwhere(coeffs != 0.0)
    ]
    return _build(order, dim, entries, warn=False)


def nonzero_entries(A: Tensor) -> List[Entry]:
    return [
        (tuple(int(i) + 1 for i in index), float(A.coeffs[tuple(index)]))
        for index in np.argwhere(A.coeffs != 0.0)
    ]


def _as_vector(A: Tensor, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape[0] != A.dim:
        raise DimensionMismatchError(expected=A.dim, got=x.shape[0], what="x")
    return x


def apply(A: Tensor, x) -> np.ndarray:
    """(Ax^{m-1})_i = sum over i2..im of a_{i i2 ... im} x_{i2} ... x_{im}."""
    x = _as_vector(A, x)
    v = A.coeffs
    for _ in range(A.order - 1):
        v = v @ x
    return v


def apply_scalar(A: Tensor, x) -> float:
    """Ax^m = x^T (Ax^{m-1})."""
    x = _as_vector(A, x)
    return float(x @ apply(A, x))


def jacobian(A: Tensor, x) -> np.ndarray:
    """n x n Jacobian of x -> Ax^{m-1}."""
    x = _as_vector(A, x)
    jac = np.zeros((A.dim, A.dim))
    for axis in range(1, A.order):
        v = np.moveaxis(A.coeffs, axis, -1)
        for _ in range(A.order - 2):
            v = np.tensordot(v, x, axes=([v.ndim - 2], [0]))
        jac += v
    return jac


def diagonal(A: Tensor) -> np.ndarray:
    return np.array([A.coeffs[(i,) * A.order] for i in range(A.dim)])


def principal_sub_tensor(A: Tensor, J: IndexSet) -> Tensor:
    """
    Restriction of all m indices to J, relabeled to 1..|J| in J's order.
    """
    if len(J) == 0:
        raise TensorValidationError("Principal sub-tensor needs a nonempty index set")
    if J.members[-1] > A.dim:
        raise TensorValidationError(f"Index set {J.members} exceeds dimension {A.dim}")

    idx = J.zero_based()
    return from_array(A.coeffs[np.ix_(*([idx] * A.order))])


def _check_index(A: Tensor, i: int, what: str = "component") -> None:
    if not 1 <= i <= A.dim:
        raise TensorValidationError(f"{what} index {i} out of range [1, {A.dim}]")


def monomial_form(A: Tensor, i: int) -> MonomialForm:
    """
    Aggregate component i of Ax^{m-1} by monomial: the coefficient of exponent
    vector e is the sum of a_{i i2 ... im} over tuples with multiplicity profile e.
    Terms whose coefficients cancel exactly are dropped.
    """
    _check_index(A, i)
    row = A.coeffs[i - 1]
    terms = defaultdict(float)
    for index in np.argwhere(row != 0.0):
        exponents = tuple(int(e) for e in np.bincount(index, minlength=A.dim))
        terms[exponents] += float(row[tuple(index)])
    return MonomialForm(
        component=i,
        degree=A.order - 1,
        terms={e: c for e, c in terms.items() if c != 0.0},
    )


def component_depends_on(A: Tensor, i: int, j: int) -> bool:
    """Exact test: does component i have a nonzero term with positive exponent on x_j."""
    _check_index(A, j, what="variable")
    return (j - 1) in monomial_form(A, i).variables()


def restrict_form(form: MonomialForm, indices: Sequence[int]) -> MonomialForm:
    """Drop every term using a variable outside the 0-based `indices` (those variables are zero)."""
    keep = set(indices)
    return MonomialForm(
        component=form.component,
        degree=form.degree,
        terms={
            e: c
            for e, c in form.terms.items()
            if all(k in keep for k, ek in enumerate(e) if ek > 0)
        },
    )
