import logging
from collections import Counter
from functools import lru_cache
from math import comb, factorial

from app.core.config import settings
from app.core.exceptions import LimitExceededError, PreconditionError
from app.models.partition import BellyShape, CharacterTable, CycleType, Partition
from app.services.partitions import enumerate_partitions, rim_hook_removals, standard_count, xi_shape


@lru_cache(maxsize=None)
def _murnaghan_nakayama(shape: Partition, cycle_type: CycleType) -> int:
    if not cycle_type:
        return 1
    if cycle_type[0] == 1:
        return standard_count(shape)
    # largest part first
    size, rest = cycle_type[0], cycle_type[1:]
    total = 0
    for _, remaining, height in rim_hook_removals(shape, size):
        total += (-1) ** (height - 1) * _murnaghan_nakayama(remaining, rest)
    return total


def mn_character(shape: Partition, cycle_type: CycleType) -> int:
    shape = tuple(shape)
    cycle_type = tuple(sorted(cycle_type, reverse=True))
    if sum(shape) != sum(cycle_type):
        raise PreconditionError(f"Shape {shape} and cycle type {cycle_type} have different sizes")
    return _murnaghan_nakayama(shape, cycle_type)


def character_table(n: int, limit: int | None = None) -> CharacterTable:
    limit = settings.CHARACTER_TABLE_LIMIT if limit is None else limit
    if n > limit:
        raise LimitExceededError(f"Character table for n={n} exceeds the limit {limit}")
    shapes = enumerate_partitions(n)
    values = [[_murnaghan_nakayama(shape, cycle_type) for cycle_type in shapes] for shape in shapes]
    logging.info(f"Character table of S_{n}: {len(shapes)} x {len(shapes)}")
    return CharacterTable(n=n, shapes=shapes, values=values)


def limit_coeff(belly_shape: BellyShape, ell: int) -> int:
    """Value of chi^{b^n_{k,beta}} on an (n-ell)-cycle once n is large; it no longer depends on n."""
    xi = xi_shape(belly_shape, ell)
    if not xi.valid:
        return 0
    return (-1) ** (xi.height - 1) * standard_count(xi.shape)


def hook_cycle_type(n: int, ell: int) -> CycleType:
    if ell < 0 or ell > n - 1:
        raise PreconditionError(f"ell={ell} must lie in [0, {n - 1}]")
    return (n - ell,) + (1,) * ell


def cycle_class_size(n: int, m: int) -> int:
    """Number of m-cycles in S_n."""
    if m < 2 or m > n:
        raise PreconditionError(f"m={m} must lie in [2, {n}]")
    return comb(n, m) * factorial(m - 1)


def sign_of_cycle_type(cycle_type: CycleType) -> int:
    return (-1) ** (sum(cycle_type) - len(cycle_type))


def centralizer_size(cycle_type: CycleType) -> int:
    size = 1
    for length, multiplicity in Counter(cycle_type).items():
        size *= length ** multiplicity * factorial(multiplicity)
    return size
