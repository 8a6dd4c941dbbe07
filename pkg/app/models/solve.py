from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel

from .common import RationalField


class SolveStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class PivotRule(str, Enum):
    BLAND = "bland"
    DANTZIG = "dantzig"


class SolveResult(BaseModel):
    status: SolveStatus
    objective: Optional[RationalField] = None
    assignment: Dict[str, RationalField] = {}
    pivot_count: int = 0
    pivots: List[Tuple[int, int]] = []


class Feasibility(BaseModel):
    feasible: bool
    tag: Optional[str] = None
