from math import factorial

import pytest

from app.core.exceptions import LimitExceededError, PreconditionError
from app.models.partition import BellyShape
from app.services.characters import (
    centralizer_size,
    character_table,
    cycle_class_size,
    hook_cycle_type,
    limit_coeff,
    mn_character,
    sign_of_cycle_type,
)
from app.services.partitions import enumerate_partitions, realize_belly, standard_count, transpose
from app.services.permutations import all_permutations, cycle_type


def _grid(max_size=5, max_k=6):
    for size in range(max_size + 1):
        for belly in enumerate_partitions(size):
            for k in range(max(1, len(belly)), max_k + 1):
                b = BellyShape(k=k, belly=belly)
                for n in range(b.size + b.k + b.first_part + 1, 17):
                    yield b, n


def test_examples():
    assert mn_character((5,), (2, 2, 1)) == 1
    assert mn_character((1, 1, 1, 1), (2, 1, 1)) == -1
    assert mn_character((2, 1), (3,)) == -1
    assert mn_character((3, 2), (1, 1, 1, 1, 1)) == 5
    assert mn_character((2, 1), (1, 2)) == 0
    with pytest.raises(PreconditionError):
        mn_character((2, 1), (2,))


def test_tables():
    assert character_table(1).values == [[1]]
    table = character_table(3)
    assert table.values[0] == [1, 1, 1]
    assert character_table(5).entry((4, 1), (5,)) == -1
    with pytest.raises(LimitExceededError):
        character_table(13)


@pytest.mark.parametrize("n", range(1, 9))
def test_column_orthogonality(n):
    table = character_table(n)
    for i, mu in enumerate(table.shapes):
        for j, nu in enumerate(table.shapes):
            total = sum(row[i] * row[j] for row in table.values)
            assert total == (centralizer_size(mu) if i == j else 0)


@pytest.mark.parametrize("n", range(1, 9))
def test_transpose_multiplies_by_sign(n):
    table = character_table(n)
    for shape in table.shapes:
        for mu in table.shapes:
            assert table.entry(transpose(shape), mu) == sign_of_cycle_type(mu) * table.entry(shape, mu)


def test_identity_value_is_dimension():
    for n in range(1, 11):
        for shape in enumerate_partitions(n):
            assert mn_character(shape, (1,) * n) == standard_count(shape)


def test_class_sizes():
    assert cycle_class_size(2, 2) == 1
    assert cycle_class_size(5, 3) == 20
    assert cycle_class_size(4, 4) == 6
    with pytest.raises(PreconditionError):
        cycle_class_size(4, 1)
    for n in range(2, 6):
        types = [cycle_type(p) for p in all_permutations(n)]
        for m in range(2, n + 1):
            assert types.count(hook_cycle_type(n, n - m)) == cycle_class_size(n, m)


def test_centralizer_sizes_partition_the_group():
    for n in range(1, 9):
        assert sum(factorial(n) // centralizer_size(mu) for mu in enumerate_partitions(n)) == factorial(n)


def test_large_belly_vanishes():
    for b, n in _grid():
        for ell in range(min(4, b.size - 1) + 1):
            assert mn_character(realize_belly(b, n), hook_cycle_type(n, ell)) == 0


def test_thin_balanced_vanishes():
    for b, n in _grid():
        for ell in range(b.size + 1, 5):
            if ell <= n / 2 - 1 and ell <= b.k <= n - b.size - ell - 1:
                assert mn_character(realize_belly(b, n), hook_cycle_type(n, ell)) == 0


def test_balanced_belly_value():
    for b, n in _grid():
        ell = b.size
        if ell <= 4 and n >= b.size + b.k + ell + 1:
            expected = (-1) ** b.k * standard_count(b.belly)
            assert mn_character(realize_belly(b, n), hook_cycle_type(n, ell)) == expected
            assert limit_coeff(b, ell) == expected


def test_limit_coeff_examples():
    assert limit_coeff(BellyShape(k=1), 0) == -1
    for k in range(1, 8):
        assert limit_coeff(BellyShape(k=k), 0) == (-1) ** k
    assert limit_coeff(BellyShape(k=2, belly=(2, 2)), 4) == 2
    for n in (5, 7, 9):
        assert mn_character((n - 1, 1), (n,)) == -1


def test_stabilization():
    for b, n in _grid(max_size=4, max_k=5):
        for ell in range(0, 5, 2):
            if n >= b.size + b.k + ell + 1:
                value = mn_character(realize_belly(b, n), hook_cycle_type(n, ell))
                assert value == limit_coeff(b, ell)
