from .composer import compose_theorem21
from .solver import refute_support, residual, solve, solve_diagonal, solve_support

__all__ = [
    "compose_theorem21",
    "refute_support",
    "residual",
    "solve",
    "solve_diagonal",
    "solve_support",
]
