from typing import List, Tuple

from pydantic import field_validator, model_validator

from .common import FrozenModel

Partition = Tuple[int, ...]
CycleType = Partition


def check_partition(parts) -> Partition:
    parts = tuple(int(p) for p in parts)
    if any(p < 1 for p in parts):
        raise ValueError(f"Partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"Partition parts must be weakly decreasing: {parts}")
    return parts


class BellyShape(FrozenModel):
    k: int
    belly: Partition = ()

    @field_validator("belly", mode="before")
    @classmethod
    def validate_belly(cls, v):
        return check_partition(v)

    @model_validator(mode="after")
    def check_leg(self):
        if self.k < len(self.belly):
            raise ValueError(f"Leg k={self.k} is shorter than the belly height {len(self.belly)}")
        return self

    @property
    def size(self) -> int:
        return sum(self.belly)

    @property
    def height(self) -> int:
        return len(self.belly)

    @property
    def first_part(self) -> int:
        return self.belly[0] if self.belly else 0

    def label(self) -> str:
        return f"k={self.k};b={','.join(map(str, self.belly))}"


class RimHookRemoval(FrozenModel):
    remaining: Partition
    height: int
    start_row: int


class XiShape(FrozenModel):
    valid: bool
    shape: Partition = ()
    height: int = 0


class CharacterTable(FrozenModel):
    n: int
    shapes: List[Partition]
    values: List[List[int]]

    def entry(self, shape: Partition, cycle_type: CycleType) -> int:
        return self.values[self.shapes.index(tuple(shape))][self.shapes.index(tuple(cycle_type))]
