# qtensor/harness/section5.py
"""
Three matrix results that do not carry over to tensors, each shown by a
concrete tensor:
  (a) a semi-positive Q tensor whose TCP(0, A) has a solution with a single
      nonzero component;
  (b) a Q tensor with a positive solution of Ax^{m-1} = 0;
  (c) copositive Q tensors that are not R0.
"""

import logging
import time
from typing import List, Optional

import numpy as np

from ..checkers import check_R0, check_copositive, check_Q_empirical, check_semipositive, is_q_grid_positive
from ..corpus.examples import example_31, example_32
from ..corpus.generators import example51_family
from ..engine.solver import residual
from ..schemas import CaseRecord, RunReport, SearchBudget, TCPInstance
from ..tensors.core import apply
from . import Suite, SuiteFactory
from .report import build_report, make_case

logger = logging.getLogger(__name__)

EXAMPLE51_ORDERS = (3, 5, 7)


def _fact_a(budget: SearchBudget) -> List[CaseRecord]:
    A = example_32()
    semipositive = check_semipositive(A, budget)
    q_verdict = check_Q_empirical(A, budget)
    report = residual(TCPInstance(tensor=A, q=(0.0, 0.0)), (1.0, 0.0))
    return [
        make_case("section5-a-semipositive", "example-3.2", "semipositive", "not falsified",
                  semipositive.status.value, not semipositive.falsified, budget.seed, semipositive),
        make_case("section5-a-q", "example-3.2", "Q", "Q-positive",
                  f"{q_verdict.status.value} ({q_verdict.effort.note})", is_q_grid_positive(q_verdict),
                  budget.seed, q_verdict),
        make_case("section5-a-tcp0", "example-3.2", "TCP(0, A)", "residual 0 at (1, 0)",
                  f"residual {report.value!r}", report.value == 0.0, budget.seed),
    ]


def _fact_b(budget: SearchBudget) -> List[CaseRecord]:
    cases = []
    for m in EXAMPLE51_ORDERS:
        value = apply(example51_family(m), np.ones(2))
        cases.append(make_case(
            f"section5-b-m{m}", f"example-5.1(m={m})", "system (5.1)", "A(1,1)^{m-1} = 0",
            "(" + ", ".join(repr(float(v)) for v in value) + ")",
            bool(np.all(value == 0.0)), budget.seed,
        ))
    return cases


def _fact_c(budget: SearchBudget) -> List[CaseRecord]:
    cases = []
    for name, A in (("example-3.1", example_31()), ("example-3.2", example_32())):
        copositive = check_copositive(A, budget)
        q_verdict = check_Q_empirical(A, budget)
        r0 = check_R0(A, budget)
        ok = not copositive.falsified and is_q_grid_positive(q_verdict) and r0.falsified
        cases.append(make_case(
            f"section5-c-{name}", name, "copositive/Q/R0",
            "copositive unfalsified, Q-positive, R0 falsified",
            f"{copositive.status.value}/{q_verdict.status.value}/{r0.status.value}",
            ok, budget.seed, r0,
        ))
    return cases


def run_section5_suite(budget: Optional[SearchBudget] = None) -> RunReport:
    started = time.perf_counter()
    budget = budget or SearchBudget()
    cases = _fact_a(budget) + _fact_b(budget) + _fact_c(budget)
    return build_report("section5", cases, budget.seed, time.perf_counter() - started)


@SuiteFactory.register("section5")
class Section5Suite(Suite):
    def run(self, budget: SearchBudget, **params) -> RunReport:
        return run_section5_suite(budget)
