"""Tensor complementarity problems: solver, class checkers, example corpus and verification suites."""

__version__ = "0.1.0"
