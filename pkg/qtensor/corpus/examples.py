# qtensor/corpus/examples.py
"""
The named example tensors with expected classifications, known TCP
solutions and stored witnesses. Everything is verified when the corpus is
built: each known solution must pass the residual tolerance and each stored
witness must replay through its class checker.
"""

import logging
import math
from typing import Dict, List, Optional, Tuple

from ..checkers import make_witness
from ..engine.solver import residual
from ..exceptions import PreconditionError
from ..schemas import (
    CorpusEntry,
    Expectation,
    ExpectedStatus,
    KnownSolution,
    SearchBudget,
    TCPInstance,
    Tensor,
    WitnessKind,
)
from ..tensors.core import from_entries
from .generators import example51_family

logger = logging.getLogger(__name__)

KNOWN_SOLUTION_TOL = 1e-8

HOLDS = ExpectedStatus.HOLDS
FAILS = ExpectedStatus.FAILS
DISPUTED = ExpectedStatus.DISPUTED


def _expect(**statuses: Tuple[ExpectedStatus, str]) -> Dict[str, Expectation]:
    return {name: Expectation(status=s, citation=c) for name, (s, c) in statuses.items()}


def _solutions(citation: str, *pairs) -> List[KnownSolution]:
    return [
        KnownSolution(q=tuple(float(v) for v in q), x=tuple(float(v) for v in x), citation=f"{citation} {case}")
        for case, q, x in pairs
    ]


def _verified(entry: CorpusEntry, stored: Dict[str, dict], budget: SearchBudget) -> CorpusEntry:
    for known in entry.known_solutions:
        report = residual(TCPInstance(tensor=entry.tensor, q=known.q), known.x)
        if report.value > KNOWN_SOLUTION_TOL:
            raise PreconditionError(
                f"{entry.name}: known solution {known.x} for q = {known.q} has residual {report.value:.3g}"
            )
    witnesses = {
        class_name: make_witness(class_name, entry.tensor, budget, **fields)
        for class_name, fields in stored.items()
    }
    return entry.model_copy(update={"witnesses": witnesses})


def _point(*x) -> dict:
    return {"kind": WitnessKind.POINT, "x": tuple(float(v) for v in x)}


def _pair(x, y) -> dict:
    return {"kind": WitnessKind.PAIR, "x": tuple(map(float, x)), "y": tuple(map(float, y))}


def example_31() -> Tensor:
    return from_entries(4, 2, [((1, 1, 2, 2), 1.0), ((2, 2, 2, 2), 1.0), ((2, 1, 1, 2), -1.0)])


def example_32() -> Tensor:
    return from_entries(3, 2, [((1, 2, 2), 1.0), ((2, 2, 2), 1.0), ((2, 1, 2), -1.0)])


def example_33(m: int = 3, n: int = 3) -> Tensor:
    return from_entries(m, n, [((1,) + (2,) * (m - 1), 1.0)])


def example_34() -> Tensor:
    return from_entries(4, 2, [((1, 1, 2, 2), 1.0), ((2, 1, 2, 2), 1.0)])


def example_35() -> Tensor:
    return from_entries(3, 2, [((1, 2, 1), 1.0), ((2, 1, 1), -1.0)])


def example_36() -> Tensor:
    return from_entries(3, 2, [((1, 2, 2), 1.0), ((2, 1, 1), -1.0)])


def example_41() -> Tensor:
    return from_entries(3, 2, [((1, 1, 1), 1.0), ((2, 2, 2), 1.0)])


def example_42() -> Tensor:
    return from_entries(4, 2, [((1, 1, 2, 2), -1.0), ((2, 2, 2, 2), 1.0)])


def _example31_c3() -> Tuple[float, float]:
    x2 = ((1.0 + math.sqrt(5.0)) / 2.0) ** (1.0 / 3.0)
    return 1.0 / x2**2, x2


def _example31_c4() -> Tuple[float, float]:
    x2 = ((math.sqrt(5.0) - 1.0) / 2.0) ** (1.0 / 3.0)
    return 1.0 / x2**2, x2


def corpus(example51_order: int = 3, budget: Optional[SearchBudget] = None) -> List[CorpusEntry]:
    budget = budget or SearchBudget()
    c = "Example"
    entries = []

    entries.append(_verified(CorpusEntry(
        name="example-3.1",
        tensor=example_31(),
        expected=_expect(
            P0=(HOLDS, f"{c} 3.1: the tensor is P0"),
            Q=(HOLDS, f"{c} 3.1: cases C1-C4 solve every q"),
            R0=(FAILS, f"{c} 3.1: (1, 0) solves TCP(0, A)"),
            copositive=(HOLDS, f"{c} 3.1: x^T Ax^3 = x2^4 >= 0"),
        ),
        known_solutions=_solutions(
            f"{c} 3.1",
            ("C1", (1, 1), (0, 0)),
            ("C2", (1, -1), (0, 1)),
            ("C3", (-1, -1), _example31_c3()),
            ("C4", (-1, 1), _example31_c4()),
            ("TCP(0, A)", (0, 0), (1, 0)),
        ),
        notes="Ax^3 = (x1 x2^2, x2^3 - x1^2 x2); Q and P0 but not R0.",
    ), {"R0": _point(1, 0)}, budget))

    entries.append(_verified(CorpusEntry(
        name="example-3.2",
        tensor=example_32(),
        expected=_expect(
            P0prime=(HOLDS, f"{c} 3.2: the tensor is P0prime"),
            Q=(HOLDS, f"{c} 3.2: cases C1-C5 solve every q"),
            R0=(FAILS, f"{c} 3.2: (1, 0) solves TCP(0, A)"),
            semipositive=(HOLDS, f"{c} 3.2: every P0prime tensor is semi-positive"),
            copositive=(HOLDS, f"{c} 3.2: x^T Ax^2 = x2^3 >= 0"),
        ),
        known_solutions=_solutions(
            f"{c} 3.2",
            ("C1 (a, b) = (1, 1)", (1, 1), (0, 0)),
            ("C2 (a, b) = (1, 1)", (-1, 1), (2, 1)),
            ("C2 (a, b) = (2, 1)", (-4, 1), (2.5, 2)),
            ("C3 (a, b) = (2, 1)", (4, -1), (0, 1)),
            ("C4 (a, b) = (1, 2)", (-1, -4), (0, 2)),
            ("C5 (a, b) = (2, 1)", (-4, -1), (1.5, 2)),
            ("TCP(0, A)", (0, 0), (1, 0)),
        ),
        notes="Ax^2 = (x2^2, x2^2 - x1 x2); Q and P0prime but not R0.",
    ), {"R0": _point(1, 0)}, budget))

    entries.append(_verified(CorpusEntry(
        name="example-3.3",
        tensor=example_33(),
        expected=_expect(
            SP0=(HOLDS, f"{c} 3.3: the tensor is SP0"),
            P0=(HOLDS, f"{c} 3.3: the tensor is P0"),
            P0prime=(HOLDS, f"{c} 3.3: the tensor is P0prime"),
        ),
        known_solutions=_solutions(f"{c} 3.3", ("q = -e1", (-1, 0, 0), (0, 1, 0))),
        notes="Instantiated at m = 3, n = 3: Ax^2 = (x2^2, 0, 0).",
    ), {}, budget))

    entries.append(_verified(CorpusEntry(
        name="example-3.4",
        tensor=example_34(),
        expected=_expect(
            P0=(HOLDS, f"{c} 3.4: the tensor is P0"),
            SP0=(FAILS, f"{c} 3.4: the pair (1, 1), (1, -2) gives product -9 at index 2"),
        ),
        notes="Ax^3 = (x1 x2^2, x1 x2^2).",
    ), {"SP0": _pair((1, 1), (1, -2))}, budget))

    entries.append(_verified(CorpusEntry(
        name="example-3.5",
        tensor=example_35(),
        expected=_expect(
            P0=(HOLDS, f"{c} 3.5: the tensor is P0"),
            P0prime=(FAILS, f"{c} 3.5: any alpha > 0, beta < 0 violates P0prime"),
        ),
        notes="Ax^2 = (x1 x2, -x1^2).",
    ), {"P0prime": _point(1, -1)}, budget))

    entries.append(_verified(CorpusEntry(
        name="example-3.6",
        tensor=example_36(),
        expected=_expect(
            P0prime=(HOLDS, f"{c} 3.6: the tensor is P0prime"),
            P0=(FAILS, f"{c} 3.6: any alpha < 0, beta > 0 violates P0"),
        ),
        notes="Ax^2 = (x2^2, -x1^2).",
    ), {"P0": _point(-1, 1)}, budget))

    entries.append(_verified(CorpusEntry(
        name="example-4.1",
        tensor=example_41(),
        expected=_expect(
            nonnegative=(HOLDS, f"{c} 4.1: the tensor is nonnegative"),
            SP0=(FAILS, f"{c} 4.1: the pair (-2, -3), (1, 2) violates SP0"),
        ),
        known_solutions=_solutions(f"{c} 4.1", ("diagonal", (-1, -4), (1, 2))),
        notes=(
            "Ax^2 = (x1^2, x2^2). The stated product -12 at index 2 recomputes to -25; "
            "only the signs are relied on."
        ),
    ), {"SP0": _pair((-2, -3), (1, 2))}, budget))

    entries.append(_verified(CorpusEntry(
        name="example-4.2",
        tensor=example_42(),
        expected=_expect(
            nonnegative=(FAILS, f"{c} 4.2: a_1122 = -1"),
            SP0=(DISPUTED, f"{c} 4.2: claimed SP0; the pair (1, 1), (2, 1) is active only at index 1 with product -1"),
        ),
        notes="Ax^3 = (-x1 x2^2, x2^3).",
    ), {
        "nonnegative": {"kind": WitnessKind.INDEX, "index": (1, 1, 2, 2)},
        "SP0": _pair((1, 1), (2, 1)),
    }, budget))

    m = example51_order
    a, b = 1.0, 1.0
    entries.append(_verified(CorpusEntry(
        name="example-5.1",
        tensor=example51_family(m),
        expected=_expect(
            semipositive=(HOLDS, f"{c} 5.1: the tensor is semi-positive"),
            Q=(HOLDS, f"{c} 5.1: cases C1-C5 solve every q"),
        ),
        known_solutions=_solutions(
            f"{c} 5.1",
            ("C1", (a ** (m - 1), b ** (m - 1)), (0, 0)),
            ("C2", (-(a ** (m - 1)), b ** (m - 1)), (a, 0)),
            ("C3", (a ** (m - 1), -(b ** (m - 1))), (0, b)),
            ("C4 (a, b) = (1, 2)", (-1.0, -(2.0 ** (m - 1))), (0, 2)),
            ("C5 (a, b) = (2, 1)", (-(2.0 ** (m - 1)), -1.0), (2, 0)),
            ("system (5.1)", (0, 0), (1, 1)),
        ),
        notes=f"Order m = {m}: Ax^{m - 1} = ((x1 - x2)^{m - 1}, (x1 - x2)^{m - 1}); (1, 1) > 0 solves Ax^{m - 1} = 0.",
    ), {}, budget))

    logger.debug(f"Built corpus with {len(entries)} entries")
    return entries


def get_entry(name: str, example51_order: int = 3) -> CorpusEntry:
    for entry in corpus(example51_order):
        if entry.name == name:
            return entry
    raise PreconditionError(f"Unknown corpus entry {name}")
