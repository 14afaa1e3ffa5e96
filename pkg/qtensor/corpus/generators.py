# qtensor/corpus/generators.py
import logging

import numpy as np
from scipy.special import comb

from ..exceptions import PreconditionError
from ..schemas import Tensor
from ..tensors.core import from_array, from_entries

logger = logging.getLogger(__name__)

MIN_POSITIVE_DIAGONAL = 0.1


def example51_family(m: int) -> Tensor:
    """
    2-dimensional tensor of odd order m with
    Ax^{m-1} = ((x1 - x2)^{m-1}, (x1 - x2)^{m-1}): the binomial coefficient
    (-1)^k C(m-1, k) sits at (1, 1 x (m-1-k), 2 x k) in component 1 and at
    (2, 2 x k, 1 x (m-1-k)) in component 2, for k = 0 .. m-1.
    """
    if m < 3 or m % 2 == 0:
        raise PreconditionError(f"example51_family needs an odd order m >= 3, got {m}")

    entries = []
    for k in range(m):
        value = float((-1) ** k * comb(m - 1, k, exact=True))
        entries.append(((1,) + (1,) * (m - 1 - k) + (2,) * k, value))
        entries.append(((2,) + (2,) * k + (1,) * (m - 1 - k), value))
    return from_entries(m, 2, entries)


def random_nonnegative(m: int, n: int, zero_diagonal_count: int, seed: int) -> Tensor:
    """
    Coefficients uniform in [0, 1]. Exactly `zero_diagonal_count` diagonal
    entries, chosen at random, are 0; the other diagonal entries lie in [0.1, 1].
    """
    if m < 2 or n < 1:
        raise PreconditionError(f"random_nonnegative needs m >= 2 and n >= 1, got m = {m}, n = {n}")
    if not 0 <= zero_diagonal_count <= n:
        raise PreconditionError(
            f"zero_diagonal_count must lie in [0, {n}], got {zero_diagonal_count}"
        )

    rng = np.random.default_rng(seed)
    coeffs = rng.uniform(0.0, 1.0, size=(n,) * m)
    zeroed = set(rng.choice(n, size=zero_diagonal_count, replace=False).tolist())
    for i in range(n):
        diag = (i,) * m
        if i in zeroed:
            coeffs[diag] = 0.0
        else:
            coeffs[diag] = MIN_POSITIVE_DIAGONAL + (1.0 - MIN_POSITIVE_DIAGONAL) * coeffs[diag]
    return from_array(coeffs)
