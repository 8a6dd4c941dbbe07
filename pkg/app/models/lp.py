from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from .common import FrozenModel, RationalField
from .partition import BellyShape


class Relation(str, Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class Sense(str, Enum):
    MIN = "min"
    MAX = "max"


class LpFamily(str, Enum):
    ONE = "1"
    TWO = "2"
    THREE = "3"
    DUAL = "dual"


class LpParams(FrozenModel):
    l0: int
    k0: int = 1
    m0: int  # defaults to 2(l0+k0)
    c: RationalField
    n: Optional[int] = None

    @model_validator(mode="before")
    @classmethod
    def default_m0(cls, data):
        if isinstance(data, dict) and data.get("m0") is None and "l0" in data:
            data = {**data, "m0": 2 * (int(data["l0"]) + int(data.get("k0", 1)))}
        return data

    @model_validator(mode="after")
    def check_parity(self):
        if self.l0 < 0 or self.l0 % 2:
            raise ValueError(f"l0 must be a non-negative even integer, got {self.l0}")
        if self.k0 < 1 or self.k0 % 2 == 0:
            raise ValueError(f"k0 must be a positive odd integer, got {self.k0}")
        if self.m0 < 2 or self.m0 % 2:
            raise ValueError(f"m0 must be a positive even integer, got {self.m0}")
        if self.n is not None and (self.n < 1 or self.n % 2 == 0):
            raise ValueError(f"n must be a positive odd integer, got {self.n}")
        if self.c <= 0:
            raise ValueError(f"c must be positive, got {self.c}")
        return self

    @property
    def even_ells(self) -> List[int]:
        return list(range(0, self.l0 + 1, 2))

    @property
    def even_ms(self) -> List[int]:
        return list(range(2, self.m0 + 1, 2))

    def header(self) -> str:
        text = f"l0={self.l0} k0={self.k0} m0={self.m0} c={self.c.numerator}/{self.c.denominator}"
        return text + (f" n={self.n}" if self.n is not None else "")


class Variable(FrozenModel):
    name: str
    nonnegative: bool = True


def _canonical_terms(terms) -> Dict[int, Fraction]:
    return {index: Fraction(value) for index, value in sorted(dict(terms).items()) if value != 0}


class Constraint(BaseModel):
    terms: Dict[int, RationalField] = Field(default_factory=dict)
    relation: Relation
    rhs: RationalField = Fraction(0)
    tag: str
    belly: Optional[BellyShape] = None

    @field_validator("terms", mode="after")
    @classmethod
    def sort_terms(cls, v):
        return _canonical_terms(v)

    def evaluate(self, values: List[Fraction]) -> Fraction:
        return sum((coef * values[index] for index, coef in self.terms.items()), Fraction(0))

    def holds(self, values: List[Fraction]) -> bool:
        lhs = self.evaluate(values)
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


class Objective(BaseModel):
    sense: Sense
    terms: Dict[int, RationalField] = Field(default_factory=dict)
    constant: RationalField = Fraction(0)

    @field_validator("terms", mode="after")
    @classmethod
    def sort_terms(cls, v):
        return _canonical_terms(v)

    def evaluate(self, values: List[Fraction]) -> Fraction:
        return self.constant + sum((coef * values[index] for index, coef in self.terms.items()), Fraction(0))


class LinearProgram(BaseModel):
    family: LpFamily
    params: Optional[LpParams] = None
    variables: List[Variable]
    objective: Objective
    constraints: List[Constraint] = []

    @model_validator(mode="after")
    def check_indices(self):
        count = len(self.variables)
        names = [v.name for v in self.variables]
        if len(set(names)) != count:
            raise ValueError("Variable names must be unique")
        rows = [self.objective.terms] + [c.terms for c in self.constraints]
        for terms in rows:
            for index in terms:
                if not 0 <= index < count:
                    raise ValueError(f"Variable index {index} is not declared")
        return self

    @property
    def variable_names(self) -> List[str]:
        return [v.name for v in self.variables]

    def index(self, name: str) -> int:
        return self.variable_names.index(name)

    def values_from(self, assignment: Dict[str, Fraction]) -> List[Fraction]:
        missing = [name for name in self.variable_names if name not in assignment]
        if missing:
            raise ValueError(f"Assignment is missing variables: {', '.join(missing[:5])}")
        return [Fraction(assignment[name]) for name in self.variable_names]


class CertificateMode(BaseModel):
    joint_large_leg: bool = False
    fragment: Optional[str] = None
    round_bits: Optional[int] = None
    dropped_y: List[int] = []


class DualCertificate(BaseModel):
    params: LpParams
    mode: CertificateMode = CertificateMode()
    w: Dict[int, RationalField]
    y: Dict[int, RationalField]
    objective: RationalField


class VerdictStatus(str, Enum):
    POSITIVE = "positive"
    NONPOSITIVE = "nonpositive"
    INFEASIBLE = "infeasible"


class Verdict(BaseModel):
    status: VerdictStatus
    tag: Optional[str] = None
    objective: Optional[RationalField] = None
