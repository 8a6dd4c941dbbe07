from typing import Dict, List, Tuple

from pydantic import BaseModel, model_validator

# images over the 0-based ground set [n]; files use 1-based images
Permutation = Tuple[int, ...]


def check_permutation(images, n: int) -> Permutation:
    images = tuple(int(i) for i in images)
    if len(images) != n or sorted(images) != list(range(n)):
        raise ValueError(f"{images} is not a permutation of [{n}]")
    return images


class PermSet(BaseModel):
    n: int
    elements: List[Permutation] = []

    @model_validator(mode="after")
    def check_elements(self):
        if self.n < 1:
            raise ValueError(f"Ground set size must be positive, got {self.n}")
        self.elements = [check_permutation(p, self.n) for p in self.elements]
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("Permutation set contains duplicates")
        return self

    @property
    def size(self) -> int:
        return len(self.elements)


class Coloring(BaseModel):
    n: int
    assignment: Dict[Permutation, str]
    sign_respecting: bool = False

    @property
    def palette_size(self) -> int:
        return len(set(self.assignment.values()))

    def color_classes(self) -> Dict[str, List[Permutation]]:
        classes: Dict[str, List[Permutation]] = {}
        for perm, color in self.assignment.items():
            classes.setdefault(color, []).append(perm)
        return classes
