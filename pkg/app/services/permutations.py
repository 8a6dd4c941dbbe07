from functools import lru_cache
from itertools import permutations as _itertools_permutations
from typing import Iterable, List

from app.models.partition import CycleType
from app.models.permutation import Permutation


def identity(n: int) -> Permutation:
    return tuple(range(n))


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """(sigma tau)(i) = sigma(tau(i))."""
    return tuple(sigma[i] for i in tau)


def inverse(perm: Permutation) -> Permutation:
    result = [0] * len(perm)
    for i, image in enumerate(perm):
        result[image] = i
    return tuple(result)


def quotient(sigma: Permutation, tau: Permutation) -> Permutation:
    """sigma tau^{-1}"""
    return compose(sigma, inverse(tau))


def cycle_lengths(perm: Permutation) -> List[int]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        lengths.append(length)
    return lengths


def cycle_type(perm: Permutation) -> CycleType:
    return tuple(sorted(cycle_lengths(perm), reverse=True))


def sign(perm: Permutation) -> int:
    return (-1) ** (len(perm) - len(cycle_lengths(perm)))


def is_single_cycle(perm: Permutation) -> bool:
    lengths = cycle_lengths(perm)
    return sum(1 for length in lengths if length >= 2) == 1


def all_permutations(n: int) -> List[Permutation]:
    return list(_itertools_permutations(range(n)))


@lru_cache(maxsize=None)
def single_cycles(n: int) -> tuple:
    """Connection set of the Birkhoff graph on S_n."""
    return tuple(p for p in _itertools_permutations(range(n)) if is_single_cycle(p))


def from_one_based(images: Iterable[int]) -> Permutation:
    return tuple(int(i) - 1 for i in images)


def to_one_based(perm: Permutation) -> List[int]:
    return [i + 1 for i in perm]


def extend(perm: Permutation, n: int) -> Permutation:
    """Natural inclusion S_m -> S_n fixing the extra points."""
    return tuple(perm) + tuple(range(len(perm), n))
