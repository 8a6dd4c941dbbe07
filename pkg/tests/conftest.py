import random
from fractions import Fraction
from itertools import permutations

import pytest

from app.models.lp import LpParams
from app.models.permutation import PermSet
from app.services.permutations import sign


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def small_dual_params():
    return LpParams(l0=0, k0=1, c=Fraction(3, 2))


@pytest.fixture
def symmetric_group_5():
    return PermSet(n=5, elements=list(permutations(range(5))))


@pytest.fixture
def alternating_group_5():
    return PermSet(n=5, elements=[p for p in permutations(range(5)) if sign(p) == 1])


@pytest.fixture
def klein_four():
    return PermSet(n=4, elements=[(0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)])
