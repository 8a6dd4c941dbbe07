import pytest

from app.services.permutations import (
    compose,
    cycle_type,
    extend,
    from_one_based,
    identity,
    inverse,
    is_single_cycle,
    quotient,
    sign,
    single_cycles,
    to_one_based,
)
from tests.oracles import all_single_cycles


def test_compose_applies_right_factor_first():
    sigma, tau = (1, 2, 0), (0, 2, 1)
    assert compose(sigma, tau) == (1, 0, 2)
    assert compose(sigma, inverse(sigma)) == identity(3)
    assert quotient(sigma, sigma) == identity(3)


def test_cycle_type_and_sign():
    assert cycle_type((1, 0, 3, 4, 2)) == (3, 2)
    assert cycle_type(identity(3)) == (1, 1, 1)
    assert sign((1, 0, 2)) == -1
    assert sign((1, 2, 0)) == 1


def test_single_cycles_allow_fixed_points():
    assert is_single_cycle((1, 2, 0, 3))
    assert not is_single_cycle((1, 0, 3, 2))
    assert not is_single_cycle(identity(4))


@pytest.mark.parametrize("n", range(1, 7))
def test_connection_set(n):
    assert sorted(single_cycles(n)) == sorted(all_single_cycles(n))


def test_one_based_conversion():
    assert from_one_based([2, 3, 1]) == (1, 2, 0)
    assert to_one_based((1, 2, 0)) == [2, 3, 1]
    assert extend((1, 0), 4) == (1, 0, 2, 3)
