import logging
from collections import Counter
from fractions import Fraction
from itertools import permutations as k_tuples
from math import factorial, perm as falling_factorial
from typing import Optional, Tuple

from app.core.config import settings
from app.core.exceptions import LimitExceededError, PreconditionError
from app.models.partition import Partition
from app.models.permutation import PermSet, Permutation
from app.services.characters import cycle_class_size, hook_cycle_type, mn_character
from app.services.exactq import Rational, rational_pow
from app.services.partitions import enumerate_partitions, kostka_hook
from app.services.permutations import compose, cycle_type, is_single_cycle, quotient, sign

Witness = Tuple[Tuple[int, ...], Tuple[int, ...]]


def is_birkhoff_edge(sigma: Permutation, tau: Permutation) -> bool:
    if len(sigma) != len(tau):
        raise PreconditionError(f"Ground sets differ: {len(sigma)} vs {len(tau)}")
    return is_single_cycle(quotient(sigma, tau))


def quotient_cycle_types(perm_set: PermSet) -> Counter:
    """Cycle types of pi pi'^{-1} over all ordered pairs of A."""
    return Counter(cycle_type(quotient(a, b)) for a in perm_set.elements for b in perm_set.elements)


def count_edges_ell(perm_set: PermSet, ell: int) -> int:
    """Ordered pairs whose quotient is a single (n - ell)-cycle."""
    n = perm_set.n
    if ell < 0 or ell > n - 2:
        raise PreconditionError(f"ell={ell} must lie in [0, {n - 2}]")
    target = hook_cycle_type(n, ell)
    return sum(
        1 for a in perm_set.elements for b in perm_set.elements if cycle_type(quotient(a, b)) == target
    )


def density(perm_set: PermSet) -> Rational:
    return Fraction(perm_set.size, factorial(perm_set.n))


def phi_char(perm_set: PermSet, shape: Partition, types: Optional[Counter] = None) -> Rational:
    if sum(shape) != perm_set.n:
        raise PreconditionError(f"Shape {shape} is not a partition of {perm_set.n}")
    if not perm_set.elements:
        raise PreconditionError("phi_char needs a nonempty set")
    types = quotient_cycle_types(perm_set) if types is None else types
    total = sum(count * mn_character(shape, cycle) for cycle, count in types.items())
    return Fraction(total, perm_set.size ** 2)


def parseval_sides(perm_set: PermSet, ell: int) -> Tuple[int, Rational]:
    """(|E_ell[A,A]| counted directly, the same count through the characters of phi_A)."""
    n = perm_set.n
    if n > settings.CHARACTER_TABLE_LIMIT:
        raise LimitExceededError(f"n={n} exceeds the character table limit {settings.CHARACTER_TABLE_LIMIT}")
    direct = count_edges_ell(perm_set, ell)
    types = quotient_cycle_types(perm_set)
    cycle = hook_cycle_type(n, ell)
    spectral = sum(
        (phi_char(perm_set, shape, types) * mn_character(shape, cycle) for shape in enumerate_partitions(n)),
        Fraction(0),
    )
    spectral *= Fraction(perm_set.size ** 2 * cycle_class_size(n, n - ell), factorial(n))
    return direct, spectral


def parseval_check(perm_set: PermSet, ell: int) -> bool:
    direct, spectral = parseval_sides(perm_set, ell)
    return direct == spectral


def hit_counts(perm_set: PermSet, k: int) -> Counter:
    """#{pi in A : pi(J) = I} keyed by (I, J)."""
    counts = Counter()
    for J in k_tuples(range(perm_set.n), k):
        for p in perm_set.elements:
            counts[(tuple(p[j] for j in J), J)] += 1
    return counts


def pseudorandom_witness(perm_set: PermSet, k: int, r: Rational) -> Optional[Witness]:
    """None when every Pr[pi(J) = I] < r/(n)_k, else the (I, J) of largest probability, lexicographic ties."""
    n = perm_set.n
    if k < 1 or k > n:
        raise PreconditionError(f"k={k} must lie in [1, {n}]")
    counts = hit_counts(perm_set, k)
    if not counts:
        return None
    (I, J), count = min(counts.items(), key=lambda item: (-item[1], item[0]))
    if count * falling_factorial(n, k) >= Fraction(r) * perm_set.size:
        return I, J
    return None


def _lex_min_with_values(n: int, positions, values) -> Permutation:
    """Lexicographically smallest permutation sending positions[j] to values[j]."""
    images = [None] * n
    for position, value in zip(positions, values):
        images[position] = value
    free = iter(sorted(set(range(n)) - set(values)))
    return tuple(next(free) if image is None else image for image in images)


def density_increment_step(perm_set: PermSet, k: int, r: Rational, witness: Witness) -> PermSet:
    """Restrict the witnessed event to S_{n-k}: density grows by a factor r, edges and signs are kept."""
    n = perm_set.n
    I, J = tuple(witness[0]), tuple(witness[1])
    if len(I) != k or len(J) != k:
        raise PreconditionError(f"Witness tuples must have length k={k}")
    hits = [p for p in perm_set.elements if all(p[j] == i for i, j in zip(I, J))]
    if len(hits) * falling_factorial(n, k) < Fraction(r) * perm_set.size:
        raise PreconditionError(f"({I}, {J}) does not violate ({k}, {r})-pseudorandomness")
    tail = list(range(n - k, n))
    right = _lex_min_with_values(n, tail, J)  # sigma'(n-k+j) = J_j
    left = _lex_min_with_values(n, I, tail)  # sigma(I_j) = n-k+j
    restricted = [compose(left, compose(p, right))[: n - k] for p in hits]
    logging.info(f"Density increment n={n} -> {n - k}: |A|={perm_set.size} -> {len(restricted)}")
    return PermSet(n=n - k, elements=restricted)


def density_preserve(perm_set: PermSet, k: int) -> PermSet:
    """The r = 1 step; some (I, J) always reaches the average probability 1/(n)_k."""
    witness = pseudorandom_witness(perm_set, k, 1)
    return density_increment_step(perm_set, k, 1, witness)


def full_density_increment(perm_set: PermSet, c0: Rational) -> PermSet:
    """Apply density increment steps with the smallest violating even k until A is c0^k-pseudorandom."""
    if not perm_set.elements:
        raise PreconditionError("full_density_increment needs a nonempty set")
    current = perm_set
    while True:
        for k in range(2, current.n + 1, 2):
            r = rational_pow(c0, k)
            witness = pseudorandom_witness(current, k, r)
            if witness is not None:
                current = density_increment_step(current, k, r, witness)
                break
        else:
            return current


def sign_majority(perm_set: PermSet) -> PermSet:
    even = [p for p in perm_set.elements if sign(p) == 1]
    odd = [p for p in perm_set.elements if sign(p) == -1]
    return PermSet(n=perm_set.n, elements=even if len(even) >= len(odd) else odd)


def prepare_pseudorandom(perm_set: PermSet, c0: Rational) -> PermSet:
    """Sign-homogeneous set on an odd ground set that is c0^k-pseudorandom for every even k."""
    current = sign_majority(perm_set)
    if current.n % 2 == 0:
        current = density_preserve(current, 1)
    return full_density_increment(current, c0)


def young_trace(perm_set: PermSet, k: int) -> Rational:
    """tr M^{h^n_k}(phi_A) = sum over (I, J) of Pr[pi(J) = I]^2."""
    counts = hit_counts(perm_set, k)
    return Fraction(sum(c * c for c in counts.values()), perm_set.size ** 2)


def young_trace_by_characters(perm_set: PermSet, k: int) -> Rational:
    n = perm_set.n
    types = quotient_cycle_types(perm_set)
    return sum(
        (kostka_hook(shape, k) * phi_char(perm_set, shape, types) for shape in enumerate_partitions(n)),
        Fraction(0),
    )
