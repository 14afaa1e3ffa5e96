# qtensor/checkers/__init__.py
import pkgutil
from abc import ABC, abstractmethod
from importlib import import_module
from typing import Type

from ..exceptions import PreconditionError, UsageError
from ..schemas import CLASS_NAMES, SearchBudget, Tensor, Verdict, Witness


class ClassChecker(ABC):
    """Abstract base class for all tensor class checkers"""

    name: str = ""

    @abstractmethod
    def check(self, A: Tensor, budget: SearchBudget) -> Verdict:
        """Three-valued membership verdict for the class"""
        pass

    @abstractmethod
    def violation(self, A: Tensor, witness: Witness, budget: SearchBudget) -> float:
        """Replayed violation magnitude of a witness; 0.0 when it violates nothing"""
        pass

    def verifies(self, A: Tensor, witness: Witness, budget: SearchBudget) -> bool:
        return self.violation(A, witness, budget) > budget.falsify_tol


class CheckerFactory:
    """Registry for all available class checkers"""

    _checkers: dict[str, Type[ClassChecker]] = {}

    @classmethod
    def register(cls, name: str) -> callable:
        """Decorator for registering new checkers"""

        def decorator(checker_class: Type[ClassChecker]) -> Type[ClassChecker]:
            checker_class.name = name
            cls._checkers[name.lower()] = checker_class
            return checker_class

        return decorator

    @classmethod
    def get_checker(cls, name: str) -> ClassChecker:
        """Retrieve a checker implementation by class name (case-insensitive)"""
        normalized_name = name.lower()

        if normalized_name not in cls._checkers:
            raise UsageError(
                f"Unsupported class: {name}. "
                f"Available classes: {', '.join(cls.names())}"
            )

        return cls._checkers[normalized_name]()

    @classmethod
    def names(cls) -> list[str]:
        return [name for name in CLASS_NAMES if name.lower() in cls._checkers]


def check_class(class_name: str, A: Tensor, budget: SearchBudget) -> Verdict:
    return CheckerFactory.get_checker(class_name).check(A, budget)


def replay_witness(class_name: str, A: Tensor, witness: Witness, budget: SearchBudget) -> float:
    """Re-evaluate the class definition at `witness`; the result is the violation magnitude."""
    return CheckerFactory.get_checker(class_name).violation(A, witness, budget)


def make_witness(class_name: str, A: Tensor, budget: SearchBudget, **fields) -> Witness:
    """
    Build a witness whose `violation` is the replayed value. Raises
    PreconditionError when the candidate does not violate the class.
    """
    provisional = Witness(violation=1.0, **fields)
    value = replay_witness(class_name, A, provisional, budget)
    if value <= budget.falsify_tol:
        raise PreconditionError(
            f"Candidate {provisional.kind.value} witness does not violate {class_name} (replayed {value:.3g})"
        )
    return provisional.model_copy(update={"violation": value})


# Auto-discover and register all checker implementations
__path__ = pkgutil.extend_path(__path__, __name__)
for _, module_name, _ in pkgutil.iter_modules(__path__):
    if module_name != "__init__":  # Skip self
        import_module(f"{__name__}.{module_name}")

from .nonnegative import check_Q_nonnegative, has_positive_diagonal, is_nonnegative  # noqa: E402
from .orthant import check_copositive, check_semipositive  # noqa: E402
from .q_tensor import check_Q_empirical, is_q_grid_positive  # noqa: E402
from .sign_patterns import check_P0, check_P0prime  # noqa: E402
from .strong_p0 import check_SP0, sp0_odd_necessary  # noqa: E402
from .systems import check_ER, check_R, check_R0  # noqa: E402

__all__ = [
    "ClassChecker",
    "CheckerFactory",
    "check_class",
    "replay_witness",
    "make_witness",
    "is_nonnegative",
    "has_positive_diagonal",
    "check_Q_nonnegative",
    "check_Q_empirical",
    "is_q_grid_positive",
    "check_R0",
    "check_R",
    "check_ER",
    "check_semipositive",
    "check_P0",
    "check_P0prime",
    "check_SP0",
    "sp0_odd_necessary",
    "check_copositive",
]
