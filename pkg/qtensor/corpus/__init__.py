from .examples import corpus, get_entry
from .export import export_corpus, expected_table
from .generators import example51_family, random_nonnegative

__all__ = [
    "corpus",
    "get_entry",
    "export_corpus",
    "expected_table",
    "example51_family",
    "random_nonnegative",
]
