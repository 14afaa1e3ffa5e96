"""
Shared numerical helpers for the solver and the class checkers: seeded
random streams, subset enumeration, simplex/sphere sampling and a small
coordinate-descent refiner.
"""

import itertools
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np


def stream(seed: int, *ordinals: int) -> np.random.Generator:
    """Independent generator for task `ordinals` under the root `seed`."""
    return np.random.default_rng([int(seed), *(int(o) for o in ordinals)])


def mask_of(indices: Iterable[int]) -> int:
    """Bitmask of 0-based indices; a stable task ordinal for a support."""
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def subsets(n: int, include_empty: bool = False) -> List[Tuple[int, ...]]:
    """0-based subsets of range(n), ascending cardinality, lexicographic within."""
    start = 0 if include_empty else 1
    return [
        combo
        for size in range(start, n + 1)
        for combo in itertools.combinations(range(n), size)
    ]


def embed(values: Sequence[float], indices: Sequence[int], n: int) -> np.ndarray:
    x = np.zeros(n)
    x[list(indices)] = values
    return x


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {x >= 0, sum x = 1}."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ks = np.arange(1, len(v) + 1)
    rho = np.nonzero(u - css / ks > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def sample_simplex(rng: np.random.Generator, k: int) -> np.ndarray:
    return rng.dirichlet(np.ones(k))


def sample_sphere(rng: np.random.Generator, k: int) -> np.ndarray:
    z = rng.standard_normal(k)
    norm = np.linalg.norm(z)
    return z / norm if norm > 0 else np.eye(k)[0]


def coordinate_descent(
    objective: Callable[[np.ndarray], float],
    z0: np.ndarray,
    step: float = 0.25,
    iterations: int = 200,
    min_step: float = 1e-10,
) -> Tuple[np.ndarray, float]:
    """
    Pattern search along coordinate axes: try +/- step on each coordinate,
    keep improvements, halve the step when a full sweep makes no progress.
    """
    z = np.array(z0, dtype=np.float64)
    best = objective(z)
    for _ in range(iterations):
        if step < min_step:
            break
        improved = False
        for k in range(len(z)):
            for direction in (1.0, -1.0):
                trial = z.copy()
                trial[k] += direction * step
                value = objective(trial)
                if value < best:
                    z, best, improved = trial, value, True
                    break
        if not improved:
            step *= 0.5
    return z, best
