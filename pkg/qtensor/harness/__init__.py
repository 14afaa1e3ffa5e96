# qtensor/harness/__init__.py
import pkgutil
from abc import ABC, abstractmethod
from importlib import import_module
from typing import Type

from ..exceptions import UsageError
from ..schemas import RunReport, SearchBudget

SUITE_NAMES = ["theorem31", "theorem32", "theorem41", "section5", "corpus"]


class Suite(ABC):
    """Abstract base class for all verification suites"""

    name: str = ""

    @abstractmethod
    def run(self, budget: SearchBudget, **params) -> RunReport:
        """Run the suite and return its report"""
        pass


class SuiteFactory:
    """Registry for all available verification suites"""

    _suites: dict[str, Type[Suite]] = {}

    @classmethod
    def register(cls, name: str) -> callable:
        """Decorator for registering new suites"""

        def decorator(suite_class: Type[Suite]) -> Type[Suite]:
            suite_class.name = name
            cls._suites[name.lower()] = suite_class
            return suite_class

        return decorator

    @classmethod
    def get_suite(cls, name: str) -> Suite:
        """Retrieve a suite implementation by name"""
        normalized_name = name.lower()

        if normalized_name not in cls._suites:
            raise UsageError(
                f"Unsupported suite: {name}. "
                f"Available suites: {', '.join(SUITE_NAMES)}"
            )

        return cls._suites[normalized_name]()


# Auto-discover and register all suite implementations
__path__ = pkgutil.extend_path(__path__, __name__)
for _, module_name, _ in pkgutil.iter_modules(__path__):
    if module_name != "__init__":  # Skip self
        import_module(f"{__name__}.{module_name}")

from .corpus_suite import run_corpus_suite  # noqa: E402
from .report import render_records, render_text, save_report_csv  # noqa: E402
from .section5 import run_section5_suite  # noqa: E402
from .theorem31 import run_theorem31_suite  # noqa: E402
from .theorem32 import run_theorem32_suite  # noqa: E402
from .theorem41 import run_theorem41_suite  # noqa: E402

__all__ = [
    "Suite",
    "SuiteFactory",
    "SUITE_NAMES",
    "run_corpus_suite",
    "run_section5_suite",
    "run_theorem31_suite",
    "run_theorem32_suite",
    "run_theorem41_suite",
    "render_records",
    "render_text",
    "save_report_csv",
]
