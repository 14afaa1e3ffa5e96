# qtensor/schemas.py

import os
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_validator,
    model_validator,
)

Vector = Tuple[float, ...]
IndexTuple = Tuple[int, ...]

CLASS_NAMES = [
    "nonnegative",
    "Q",
    "R0",
    "R",
    "ER",
    "semipositive",
    "P0",
    "P0prime",
    "SP0",
    "copositive",
]


# ========================
# Tensor-core Schemas
# ========================
class IndexSet(BaseModel):
    """
    Sorted, duplicate-free set of 1-based indices. Used for supports of TCP
    solutions and for the index sets of principal sub-tensors.
    """

    model_config = ConfigDict(frozen=True)

    members: IndexTuple = Field(
        default=(), description="Sorted 1-based indices", examples=[(1, 2)]
    )

    @field_validator("members", mode="before")
    @classmethod
    def _canonical(cls, value):
        members = tuple(sorted({int(i) for i in value}))
        if members and members[0] < 1:
            raise ValueError(f"Index set members must be >= 1, got {members}")
        return members

    @classmethod
    def of(cls, *indices: int) -> "IndexSet":
        return cls(members=indices)

    def zero_based(self) -> List[int]:
        return [i - 1 for i in self.members]

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, index: int) -> bool:
        return index in self.members


class Tensor(BaseModel):
    """
    Dense m-order n-dimensional real tensor. `coeffs` has shape (n,)*m and is
    indexed row-major by (i1, ..., im) - 1. `entries` keeps the sparse
    construction input with 1-based index tuples.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    order: int = Field(..., ge=2, description="Order m of the tensor")
    dim: int = Field(..., ge=1, description="Dimension n of the tensor")
    coeffs: np.ndarray = Field(..., description="Dense coefficient array of shape (n,)*m")
    entries: Tuple[Tuple[IndexTuple, float], ...] = Field(
        default=(), description="Sparse construction input, 1-based index tuples"
    )

    @field_validator("coeffs", mode="before")
    @classmethod
    def _as_array(cls, value):
        array = np.array(value, dtype=np.float64, copy=True)
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def _check_shape(self) -> "Tensor":
        if self.coeffs.shape != (self.dim,) * self.order:
            raise ValueError(
                f"coeffs shape {self.coeffs.shape} does not match order {self.order}, dim {self.dim}"
            )
        if not np.all(np.isfinite(self.coeffs)):
            raise ValueError("coeffs must be finite")
        for index, _ in self.entries:
            if len(index) != self.order or not all(1 <= i <= self.dim for i in index):
                raise ValueError(f"Entry index {index} out of range for dim {self.dim}")
        return self

    @property
    def flat(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return (
            self.order == other.order
            and self.dim == other.dim
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash((self.order, self.dim, self.coeffs.tobytes()))


class MonomialForm(BaseModel):
    """
    Component i of Ax^{m-1} aggregated by monomial: exponent vector -> coefficient.
    """

    model_config = ConfigDict(frozen=True)

    component: int = Field(..., ge=1, description="1-based component index")
    degree: int = Field(..., ge=1, description="Total degree m-1 of every term")
    terms: Dict[IndexTuple, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_exponents(self) -> "MonomialForm":
        for exponents in self.terms:
            if any(e < 0 for e in exponents) or sum(exponents) != self.degree:
                raise ValueError(
                    f"Exponent vector {exponents} is not a degree-{self.degree} monomial"
                )
        return self

    def evaluate(self, x) -> float:
        x = np.asarray(x, dtype=np.float64)
        return float(
            sum(c * np.prod(x ** np.array(e)) for e, c in self.terms.items())
        )

    def variables(self) -> set:
        """0-based indices of variables appearing with a nonzero coefficient."""
        return {
            j
            for exponents, c in self.terms.items()
            if c != 0.0
            for j, e in enumerate(exponents)
            if e > 0
        }


# ========================
# TCP Engine Schemas
# ========================
class TCPInstance(BaseModel):
    model_config = ConfigDict(frozen=True)

    tensor: Tensor
    q: Vector = Field(..., description="Constant vector q of length n")

    @model_validator(mode="after")
    def _check_length(self) -> "TCPInstance":
        if len(self.q) != self.tensor.dim:
            raise ValueError(
                f"q has length {len(self.q)}, tensor dimension is {self.tensor.dim}"
            )
        if not np.all(np.isfinite(self.q)):
            raise ValueError("q must be finite")
        return self

    @property
    def q_array(self) -> np.ndarray:
        return np.asarray(self.q, dtype=np.float64)


class ResidualReport(BaseModel):
    value: float = Field(..., ge=0, description="max-norm of min(x, Ax^{m-1}+q)")
    worst_index: int = Field(..., ge=1, description="1-based most violated component")


class Solution(BaseModel):
    """
    A nonnegative point solving TCP(q, A) to tolerance, with its support,
    slack w = Ax^{m-1} + q and complementarity residual.
    """

    x: Vector
    support: IndexSet
    slack: Vector
    residual: float = Field(..., ge=0)

    @property
    def x_array(self) -> np.ndarray:
        return np.asarray(self.x, dtype=np.float64)


class SolveStatus(str, Enum):
    SOLVED = "SOLVED"
    NO_SOLUTION_CERTIFIED = "NO-SOLUTION-CERTIFIED"
    NO_SOLUTION_FOUND = "NO-SOLUTION-FOUND"


class SolveStats(BaseModel):
    supports_explored: int = Field(default=0, ge=0)
    supports_refuted: int = Field(default=0, ge=0)
    newton_iterations: int = Field(default=0, ge=0)
    wall_time: float = Field(default=0.0, ge=0, description="Seconds")


class SolveOutcome(BaseModel):
    status: SolveStatus
    solutions: List[Solution] = Field(default_factory=list)
    proof_note: Optional[str] = None
    stats: SolveStats = Field(default_factory=SolveStats)

    @model_validator(mode="after")
    def _check_status(self) -> "SolveOutcome":
        if self.status == SolveStatus.SOLVED and not self.solutions:
            raise ValueError("A SOLVED outcome carries at least one solution")
        if self.status != SolveStatus.SOLVED and self.solutions:
            raise ValueError(f"A {self.status.value} outcome carries no solutions")
        return self


_BUDGET_ENV = {
    "seed": ("QTENSOR_SEED", int),
    "multistarts": ("QTENSOR_MULTISTARTS", int),
    "newton_max_iter": ("QTENSOR_NEWTON_MAX_ITER", int),
    "samples": ("QTENSOR_SAMPLES", int),
    "random_q": ("QTENSOR_RANDOM_Q", int),
    "max_workers": ("QTENSOR_MAX_WORKERS", int),
    "feas_tol": ("QTENSOR_FEAS_TOL", float),
    "accept_tol": ("QTENSOR_ACCEPT_TOL", float),
    "support_tol": ("QTENSOR_SUPPORT_TOL", float),
    "falsify_tol": ("QTENSOR_FALSIFY_TOL", float),
}


class SearchBudget(BaseModel):
    """
    Seeds, counts and tolerances controlling every search: Newton multistarts
    in the solver and the sampling searches of the class checkers.
    """

    model_config = ConfigDict(frozen=True)

    seed: int = Field(default=0, ge=0, lt=2**64, description="Root seed of all random streams")
    multistarts: int = Field(default=8, ge=1, description="Random starts per support")
    newton_max_iter: int = Field(default=100, ge=1)
    samples: int = Field(default=200, ge=1, description="Samples per checker search family")
    random_q: int = Field(default=8, ge=1, description="Random q vectors added to the Q grid")
    refine_iter: int = Field(default=200, ge=1, description="Local refinement iterations")
    max_workers: int = Field(default=1, ge=1)
    feas_tol: float = Field(default=1e-9, gt=0)
    accept_tol: float = Field(default=1e-8, gt=0)
    support_tol: float = Field(default=1e-7, gt=0)
    falsify_tol: float = Field(default=1e-7, gt=0)
    pair_tol: float = Field(default=1e-9, gt=0)
    merge_radius: float = Field(default=1e-6, gt=0)

    @classmethod
    def from_env(cls, **overrides) -> "SearchBudget":
        """Build a budget from QTENSOR_* environment variables, then explicit overrides."""
        values = {}
        for field, (var, cast) in _BUDGET_ENV.items():
            raw = os.getenv(var)
            if raw:
                values[field] = cast(raw)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_overrides(self, **overrides) -> "SearchBudget":
        values = self.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return SearchBudget(**values)


# ========================
# Class-checker Schemas
# ========================
class VerdictStatus(str, Enum):
    CERTIFIED_HOLDS = "CERTIFIED"
    FALSIFIED = "FALSIFIED"
    UNFALSIFIED = "UNFALSIFIED"


class WitnessKind(str, Enum):
    POINT = "point"
    PAIR = "pair"
    POINT_SCALAR = "point_scalar"
    INDEX = "index"
    QVECTOR = "qvector"


class Witness(BaseModel):
    """
    Evidence that a tensor violates a class definition. Which fields are set
    depends on `kind`; `violation` is the replayed violation magnitude.
    """

    kind: WitnessKind
    x: Optional[Vector] = None
    y: Optional[Vector] = None
    t: Optional[float] = Field(default=None, ge=0)
    index: Optional[IndexTuple] = None
    q: Optional[Vector] = None
    violation: float = Field(..., gt=0)

    @model_validator(mode="after")
    def _check_fields(self) -> "Witness":
        required = {
            WitnessKind.POINT: ("x",),
            WitnessKind.PAIR: ("x", "y"),
            WitnessKind.POINT_SCALAR: ("x", "t"),
            WitnessKind.INDEX: ("index",),
            WitnessKind.QVECTOR: ("q",),
        }[self.kind]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.kind.value} witness is missing {', '.join(missing)}")
        return self

    def summary(self) -> str:
        def fmt(v):
            return "(" + ", ".join(f"{c:.6g}" for c in v) + ")"

        parts = {
            WitnessKind.POINT: lambda: f"x={fmt(self.x)}",
            WitnessKind.PAIR: lambda: f"x={fmt(self.x)} y={fmt(self.y)}",
            WitnessKind.POINT_SCALAR: lambda: f"x={fmt(self.x)} t={self.t:.6g}",
            WitnessKind.INDEX: lambda: "index=" + "".join(str(i) for i in self.index)
            + (f" x={fmt(self.x)}" if self.x is not None else ""),
            WitnessKind.QVECTOR: lambda: f"q={fmt(self.q)}",
        }
        return f"{parts[self.kind]()} violation={self.violation:.3g}"


class Effort(BaseModel):
    samples: int = Field(default=0, ge=0)
    searches: int = Field(default=0, ge=0)
    seed: int = Field(default=0, ge=0)
    note: str = ""


class Verdict(BaseModel):
    class_name: str
    status: VerdictStatus
    certificate: Optional[str] = None
    witness: Optional[Witness] = None
    effort: Effort = Field(default_factory=Effort)

    @model_validator(mode="after")
    def _check_evidence(self) -> "Verdict":
        if self.status == VerdictStatus.FALSIFIED and self.witness is None:
            raise ValueError("A FALSIFIED verdict carries a witness")
        if self.status == VerdictStatus.CERTIFIED_HOLDS and not self.certificate:
            raise ValueError("A CERTIFIED verdict carries a certificate tag")
        return self

    @property
    def falsified(self) -> bool:
        return self.status == VerdictStatus.FALSIFIED

    def record(self) -> Dict[str, object]:
        """Flat structured record for serialization."""
        record = {
            "class": self.class_name,
            "status": self.status.value,
            "certificate": self.certificate or "",
            "samples": self.effort.samples,
            "searches": self.effort.searches,
            "seed": self.effort.seed,
            "note": self.effort.note,
        }
        if self.witness is not None:
            record["witness_kind"] = self.witness.kind.value
            for name in ("x", "y", "q"):
                value = getattr(self.witness, name)
                if value is not None:
                    record[f"witness_{name}"] = ",".join(repr(float(v)) for v in value)
            if self.witness.t is not None:
                record["witness_t"] = repr(self.witness.t)
            if self.witness.index is not None:
                record["witness_index"] = ",".join(str(i) for i in self.witness.index)
            record["violation"] = repr(self.witness.violation)
        return record


# ========================
# Corpus Schemas
# ========================
class ExpectedStatus(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    DISPUTED = "Disputed"


class Expectation(BaseModel):
    status: ExpectedStatus
    citation: str = Field(..., description="Where the expected classification is stated")


class KnownSolution(BaseModel):
    q: Vector
    x: Vector
    citation: str


class CorpusEntry(BaseModel):
    """
    A named example tensor with its expected classifications, known TCP
    solutions and stored witnesses for the classes it is expected to fail.
    """

    name: str = Field(..., examples=["example-3.1"])
    tensor: Tensor
    expected: Dict[str, Expectation] = Field(default_factory=dict)
    known_solutions: List[KnownSolution] = Field(default_factory=list)
    witnesses: Dict[str, Witness] = Field(default_factory=dict)
    notes: str = ""


# ========================
# Harness Schemas
# ========================
class CaseOutcome(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    DISPUTED = "disputed"


class CaseRecord(BaseModel):
    case_id: str
    tensor_id: str
    class_name: str
    expected: str
    got: str
    witness_summary: str = ""
    outcome: CaseOutcome
    seed: int = Field(default=0, ge=0, description="Reproduction seed")


class RunReport(BaseModel):
    suite: str
    cases: List[CaseRecord] = Field(default_factory=list)
    seed: int = Field(default=0, ge=0)
    wall_time: float = Field(default=0.0, ge=0)

    @computed_field
    @property
    def passed(self) -> int:
        return sum(1 for case in self.cases if case.outcome == CaseOutcome.PASS)

    @computed_field
    @property
    def failed(self) -> int:
        return sum(1 for case in self.cases if case.outcome == CaseOutcome.FAIL)

    @computed_field
    @property
    def disputed(self) -> int:
        return sum(1 for case in self.cases if case.outcome == CaseOutcome.DISPUTED)

    @property
    def ok(self) -> bool:
        return self.failed == 0
