import logging
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import Dict, List, Tuple

from app.core.config import settings
from app.core.exceptions import LimitExceededError, PreconditionError
from app.models.permutation import Coloring, PermSet, Permutation
from app.services.permutations import (
    all_permutations,
    compose,
    extend,
    identity,
    inverse,
    is_single_cycle,
    quotient,
    sign,
)

ColorToken = Tuple[int, ...]


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _require_positive(n: int) -> None:
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")


def _require_power_of_two(n: int) -> None:
    if not is_power_of_two(n):
        raise PreconditionError(f"The improved constructions need n to be a power of 2, got {n}")


def _block(first: Permutation, second: Permutation) -> Permutation:
    """(first, second) in S_a x S_b placed on [a] and its complement."""
    offset = len(first)
    return tuple(first) + tuple(offset + i for i in second)


def swap_halves(n: int) -> Permutation:
    """gamma = prod (i, n/2 + i)"""
    half = n // 2
    return tuple(range(half, n)) + tuple(range(half))


@lru_cache(maxsize=None)
def _basic_independent(n: int) -> tuple:
    if n == 1:
        return (identity(1),)
    low, high = n // 2, (n + 1) // 2
    inner = _basic_independent(high)
    return tuple(
        _block(sigma, compose(inverse(extend(sigma, high)), tau))
        for sigma in all_permutations(low)
        for tau in inner
    )


@lru_cache(maxsize=None)
def _improved_independent(n: int) -> tuple:
    if n <= 2:
        return (identity(n),)
    half = n // 2
    inner = _improved_independent(half)
    base = [_block(sigma, compose(inverse(sigma), tau)) for sigma in all_permutations(half) for tau in inner]
    gamma = swap_halves(n)
    return tuple(base + [compose(gamma, p) for p in base])


def construct_independent(n: int, improved: bool = False) -> PermSet:
    _require_positive(n)
    if improved:
        _require_power_of_two(n)
    if n > settings.CONSTRUCT_LIMIT:
        raise LimitExceededError(f"Materializing an independent set for n={n} exceeds {settings.CONSTRUCT_LIMIT}")
    elements = _improved_independent(n) if improved else _basic_independent(n)
    logging.info(f"Independent set n={n} improved={improved}: {len(elements)} permutations")
    return PermSet(n=n, elements=list(elements))


def independent_set_size(n: int, improved: bool = False) -> int:
    """Size of construct_independent(n, improved) without building it."""
    _require_positive(n)
    if improved:
        _require_power_of_two(n)
        return 1 if n <= 2 else 2 * factorial(n // 2) * independent_set_size(n // 2, True)
    return 1 if n == 1 else factorial(n // 2) * independent_set_size((n + 1) // 2)


def theorem_independent_bound(n: int, improved: bool = False) -> int:
    """Closed-form products: prod floor(n/2^i)! or (n/2) prod_{i < log2 n} (2^i)!."""
    _require_positive(n)
    if improved:
        _require_power_of_two(n)
        if n == 1:
            return 1
        product = n // 2
        for i in range(1, n.bit_length() - 1):
            product *= factorial(2 ** i)
        return product
    product = 1
    for i in range(1, n.bit_length()):
        product *= factorial(n // 2 ** i)
    return product


def _coset_subsets(n: int, size: int) -> List[Tuple[int, ...]]:
    return list(combinations(range(n), size))


def _coset_representative(n: int, subset: Tuple[int, ...]) -> Permutation:
    """Lex-minimal t with t([size]) = subset."""
    rest = tuple(i for i in range(n) if i not in subset)
    return tuple(subset) + rest


def _split(h: Permutation, size: int) -> Permutation:
    """h in S_A x S_B with A = [size]; returns hat(h_A) hat(h_B) in S_size."""
    h_a = h[:size]
    h_b = tuple(image - size for image in h[size:])
    return compose(h_a, extend(h_b, size))


@lru_cache(maxsize=None)
def _basic_coloring(n: int) -> Dict[Permutation, ColorToken]:
    if n == 1:
        return {identity(1): ()}
    size = (n + 1) // 2
    inner = _basic_coloring(size)
    subsets = {subset: i for i, subset in enumerate(_coset_subsets(n, size))}
    colors = {}
    for sigma in all_permutations(n):
        subset = tuple(sorted(sigma[:size]))
        t = _coset_representative(n, subset)
        h = compose(inverse(t), sigma)
        colors[sigma] = (subsets[subset],) + inner[_split(h, size)]
    return colors


@lru_cache(maxsize=None)
def _improved_coloring(n: int) -> Dict[Permutation, ColorToken]:
    if n <= 2:
        return {p: (i,) for i, p in enumerate(all_permutations(n))}
    half = n // 2
    inner = _improved_coloring(half)
    gamma = swap_halves(n)
    # every pair {uH, u gamma H} has exactly one coset whose image of [n/2] contains 0
    pairs = {subset: i for i, subset in enumerate(s for s in _coset_subsets(n, half) if 0 in s)}
    colors = {}
    for sigma in all_permutations(n):
        subset = tuple(sorted(sigma[:half]))
        if 0 in subset:
            u = _coset_representative(n, subset)
            h = compose(inverse(u), sigma)
        else:
            subset = tuple(i for i in range(n) if i not in subset)
            u = _coset_representative(n, subset)
            h = compose(gamma, compose(inverse(u), sigma))
        colors[sigma] = (pairs[subset],) + inner[_split(h, half)]
    return colors


def _token(color: ColorToken) -> str:
    return ".".join(map(str, color)) or "0"


def construct_coloring(n: int, improved: bool = False) -> Coloring:
    _require_positive(n)
    if improved:
        _require_power_of_two(n)
    if n > settings.FULL_SCAN_LIMIT:
        raise LimitExceededError(f"Materializing a coloring of S_{n} exceeds {settings.FULL_SCAN_LIMIT}")
    colors = _improved_coloring(n) if improved else _basic_coloring(n)
    coloring = Coloring(
        n=n,
        assignment={p: _token(c) for p, c in colors.items()},
        sign_respecting=improved,
    )
    logging.info(f"Coloring n={n} improved={improved}: {coloring.palette_size} colors")
    return coloring


def coloring_palette_size(n: int, improved: bool = False) -> int:
    _require_positive(n)
    if improved:
        _require_power_of_two(n)
        if n <= 2:
            return factorial(n)
        return comb(n, n // 2) // 2 * coloring_palette_size(n // 2, True)
    if n == 1:
        return 1
    return comb(n, (n + 1) // 2) * coloring_palette_size((n + 1) // 2)


def theorem_palette_bound(n: int, improved: bool = False) -> int:
    """prod_{i=0}^{ceil(log2 n)} binom(ceil(n/2^i), ceil(n/2^(i+1))) or (2/n) prod binom(2^i, 2^(i-1))."""
    _require_positive(n)
    if improved:
        _require_power_of_two(n)
        if n == 1:
            return 1
        product = 1
        for i in range(1, n.bit_length()):
            product *= comb(2 ** i, 2 ** (i - 1))
        return product * 2 // n
    product = 1
    for i in range((n - 1).bit_length() + 1):
        top = -(-n // 2 ** i)
        product *= comb(top, -(-n // 2 ** (i + 1)))
    return product


def verify_independent(perm_set: PermSet, limit: int | None = None) -> bool:
    limit = settings.FULL_SCAN_LIMIT if limit is None else limit
    if perm_set.n > limit:
        raise LimitExceededError(f"Pairwise scan for n={perm_set.n} exceeds {limit}")
    return _pairwise_independent(perm_set.elements)


def _pairwise_independent(elements: List[Permutation]) -> bool:
    inverses = [inverse(p) for p in elements]
    for i, a in enumerate(elements):
        for b_inverse in inverses[i + 1:]:
            if is_single_cycle(compose(a, b_inverse)):
                return False
    return True


def verify_coloring(coloring: Coloring, check_signs: bool | None = None, limit: int | None = None) -> bool:
    """Every color class is independent (and single-signed when asked); scans only within classes."""
    limit = settings.FULL_SCAN_LIMIT if limit is None else limit
    if coloring.n > limit:
        raise LimitExceededError(f"Coloring scan for n={coloring.n} exceeds {limit}")
    check_signs = coloring.sign_respecting if check_signs is None else check_signs
    if len(coloring.assignment) != factorial(coloring.n):
        return False
    for members in coloring.color_classes().values():
        if check_signs and len({sign(p) for p in members}) > 1:
            return False
        if not _pairwise_independent(members):
            return False
    return True
