from functools import lru_cache
from math import comb, factorial
from typing import Iterator, List

from app.core.exceptions import PreconditionError
from app.models.partition import BellyShape, Partition, RimHookRemoval, XiShape, check_partition


def parse_partition(text: str) -> Partition:
    """Read the "a,b,c" form; the empty string is the empty partition."""
    text = text.strip()
    if not text:
        return ()
    try:
        return check_partition(int(part) for part in text.split(","))
    except ValueError as e:
        raise ValueError(f"Invalid partition {text!r}: {e}") from e


def format_partition(shape: Partition) -> str:
    return ",".join(str(part) for part in shape)


def _partitions_bounded(n: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions(n: int) -> tuple:
    return tuple(_partitions_bounded(n, n))


def enumerate_partitions(n: int) -> List[Partition]:
    """All partitions of n in descending lexicographic order."""
    if n < 0:
        raise PreconditionError(f"n must be non-negative, got {n}")
    return list(_partitions(n))


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    # Euler's pentagonal number recurrence
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    j = 1
    while True:
        first = j * (3 * j - 1) // 2
        if first > n:
            break
        sign = 1 if j % 2 else -1
        total += sign * partition_count(n - first)
        second = j * (3 * j + 1) // 2
        if second <= n:
            total += sign * partition_count(n - second)
        j += 1
    return total


def transpose(shape: Partition) -> Partition:
    if not shape:
        return ()
    return tuple(sum(1 for part in shape if part >= i) for i in range(1, shape[0] + 1))


def realize_belly(belly_shape: BellyShape, n: int) -> Partition:
    """The shape b^n_{k,beta}: first row n-|beta|-k, then beta shifted one column right, then the leg."""
    minimum = belly_shape.size + belly_shape.k + belly_shape.first_part + 1
    if n < minimum:
        raise PreconditionError(f"n={n} is too small to realize {belly_shape.label()}, need n >= {minimum}")
    return (n - belly_shape.size - belly_shape.k,) + mu_shape(belly_shape)


def mu_shape(belly_shape: BellyShape) -> Partition:
    shifted = tuple(part + 1 for part in belly_shape.belly)
    return shifted + (1,) * (belly_shape.k - belly_shape.height)


@lru_cache(maxsize=None)
def rim_hook_removals(shape: Partition, size: int) -> tuple:
    """(start_row, remaining, height) for every rim hook of the given size, top row first.

    Works on beta-numbers x_i = shape_i + (s-1-i): removing a rim hook of size r whose top
    row is i moves x_i to x_i - r, and the hook height is one more than the number of
    beta-numbers jumped over.
    """
    s = len(shape)
    beta = [shape[i] + (s - 1 - i) for i in range(s)]
    members = set(beta)
    removals = []
    for i, x in enumerate(beta):
        target = x - size
        if target < 0 or target in members:
            continue
        jumped = sum(1 for other in beta if target < other < x)
        moved = sorted((members - {x}) | {target}, reverse=True)
        remaining = tuple(v - (s - 1 - j) for j, v in enumerate(moved))
        remaining = tuple(part for part in remaining if part > 0)
        removals.append((i, remaining, jumped + 1))
    return tuple(removals)


def enumerate_rim_hooks(shape: Partition, size: int) -> List[RimHookRemoval]:
    if size < 1:
        raise PreconditionError(f"Rim hook size must be positive, got {size}")
    return [
        RimHookRemoval(remaining=remaining, height=height, start_row=row)
        for row, remaining, height in rim_hook_removals(tuple(shape), size)
    ]


def xi_shape(belly_shape: BellyShape, ell: int) -> XiShape:
    """Remove the rim hook of size n - ell that contains the end of the first row.

    Any n past the stabilization point gives the same answer, so the smallest such n is used.
    """
    if ell < 0:
        raise PreconditionError(f"ell must be non-negative, got {ell}")
    n = max(
        belly_shape.size + belly_shape.k + belly_shape.first_part + 1,
        belly_shape.size + belly_shape.k + ell + 1,
    )
    shape = realize_belly(belly_shape, n)
    for row, remaining, height in rim_hook_removals(shape, n - ell):
        if row == 0:
            return XiShape(valid=True, shape=remaining, height=height)
    return XiShape(valid=False)


@lru_cache(maxsize=None)
def _hook_length_count(shape: Partition) -> int:
    columns = transpose(shape)
    product = 1
    for i, part in enumerate(shape):
        for j in range(part):
            product *= (part - j - 1) + (columns[j] - i - 1) + 1
    total = factorial(sum(shape))
    assert total % product == 0, f"hook product does not divide n! for {shape}"
    return total // product


def standard_count(shape: Partition) -> int:
    """f_lambda by the hook length formula."""
    return _hook_length_count(tuple(shape))


@lru_cache(maxsize=None)
def _skew_count(shape: Partition, strip: int) -> int:
    if sum(shape) == strip:
        return 1
    total = 0
    for i, part in enumerate(shape):
        is_corner = i == len(shape) - 1 or shape[i + 1] < part
        if not is_corner or (i == 0 and part <= strip):
            continue
        smaller = shape[:i] + ((part - 1,) if part > 1 else ()) + shape[i + 1:]
        total += _skew_count(smaller, strip)
    return total


def skew_standard_count(shape: Partition, strip: int) -> int:
    """Standard fillings of shape minus the first `strip` cells of its first row."""
    shape = tuple(shape)
    first = shape[0] if shape else 0
    if strip < 0 or strip > first:
        raise PreconditionError(f"strip={strip} must lie in [0, {first}]")
    return _skew_count(shape, strip)


def kostka_hook(shape: Partition, m: int) -> int:
    """K_{lambda,(n-m,1^m)}: every 1 sits in the first row, the m singletons fill the rest standardly."""
    n = sum(shape)
    if m < 0 or m > n - 1:
        raise PreconditionError(f"m={m} must lie in [0, {n - 1}]")
    if shape[0] < n - m:
        return 0
    return skew_standard_count(shape, n - m)


def kostka_belly(belly_shape: BellyShape, m: int, n: int) -> int:
    if m > n - belly_shape.first_part - 1:
        raise PreconditionError(f"m={m} exceeds n - beta_1 - 1 = {n - belly_shape.first_part - 1}")
    realize_belly(belly_shape, n)
    return comb(m, belly_shape.k + belly_shape.size) * standard_count(mu_shape(belly_shape))


def belly_shapes(l0: int, k0: int) -> List[BellyShape]:
    """Index set (k, beta) with |beta| <= l0 and max(1, ht(beta)) <= k <= k0, in canonical order."""
    return [
        BellyShape(k=k, belly=belly)
        for size in range(l0 + 1)
        for belly in enumerate_partitions(size)
        for k in range(max(1, len(belly)), k0 + 1)
    ]
