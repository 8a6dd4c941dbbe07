from fractions import Fraction
from math import comb

import pytest

from app.core.exceptions import PreconditionError
from app.services.exactq import rational_pow
from app.services.lp_tails import (
    binomial_ratio,
    middle_binomial_bound_holds,
    series_closed_form,
    series_partial_sum,
    tail_T,
    tail_Tn,
)

SLACK = Fraction(1, 10 ** 6)


def test_tail_Tn_examples():
    assert tail_Tn(5, 0, 3, Fraction(3, 2)) == 0
    assert tail_Tn(9, 0, 1, 1) == Fraction(1, 20)
    for n in (31, 51, 71):
        assert tail_Tn(n, 0, 1, Fraction(3, 2)) <= tail_T(0, 1, Fraction(3, 2)) + Fraction(1, 1000)


def test_tail_T_examples():
    assert tail_T(0, 1, 1) == Fraction(47, 300)
    assert tail_T(0, 19, Fraction(149, 100)) > 0
    assert tail_T(4, 5, Fraction(1, 100)) > 0
    with pytest.raises(PreconditionError):
        tail_T(0, 1, 2)


# Below this length the middle-binomial terms of short programs can still exceed the limit tail.
FIRST_DOMINATED_N = 33
GRID = [
    (c, k0, ell)
    for c in (Fraction(1), Fraction(3, 2), Fraction(197, 100))
    for k0 in (1, 3, 5)
    for ell in (0, 2, 4)
]


def _tail_grid(top):
    for c, k0, ell in GRID:
        bound = tail_T(ell, k0, c) + SLACK
        for n in range(max(2 * k0 + 3 * ell + 3, FIRST_DOMINATED_N), top + 1):
            if n % 2:
                yield n, ell, k0, c, bound


def test_short_program_tail_can_exceed_limit_tail():
    assert tail_Tn(11, 2, 1, 1) == Fraction(1, 56)
    assert tail_Tn(11, 2, 1, 1) > tail_T(2, 1, 1)


@pytest.mark.parametrize("c, k0, ell", GRID)
def test_limit_series_partial_sums_below_limit_tail(c, k0, ell):
    bound = tail_T(ell, k0, c)
    total = Fraction(0)
    for k in range(k0 + 2, k0 + 402, 2):
        total += rational_pow(c, 2 * (k + ell)) / comb(2 * (k + ell), k + ell)
    assert total <= bound


def test_finite_tail_below_limit_tail():
    for n, ell, k0, c, bound in _tail_grid(101):
        assert tail_Tn(n, ell, k0, c) <= bound, (n, ell, k0, c)


@pytest.mark.slow
def test_finite_tail_below_limit_tail_full_grid():
    for n, ell, k0, c, bound in _tail_grid(501):
        assert tail_Tn(n, ell, k0, c) <= bound, (n, ell, k0, c)


@pytest.mark.parametrize("a, b, n0, q", [
    (2, 1, 1, Fraction(1, 2)),
    (2, 4, 3, Fraction(3, 4)),
    (4, 0, 1, Fraction(9, 10)),
    (1, 2, 5, Fraction(1, 3)),
])
def test_series_closed_form(a, b, n0, q):
    terms = 60
    closed = series_closed_form(a, b, n0, q)
    partial = series_partial_sum(a, b, n0, q, terms)
    remainder = series_closed_form(a, b, n0 + terms, q)
    assert closed - partial == remainder
    assert 0 < remainder < closed
    approx = sum((a * n + b) * float(q) ** (a * n + b) for n in range(n0, n0 + 10 ** 4))
    assert float(closed) == pytest.approx(approx, rel=1e-9)


def test_series_rejects_q_outside_unit_interval():
    with pytest.raises(PreconditionError):
        series_closed_form(1, 1, 1, Fraction(1))


def test_binomial_ratio_bound():
    for s in range(65):
        for d in range(s // 2 + 1):
            assert binomial_ratio(s, d) <= 3 ** d
    assert binomial_ratio(4, 0) == 1
    with pytest.raises(PreconditionError):
        binomial_ratio(3, 2)


def test_middle_binomial_bound():
    assert all(middle_binomial_bound_holds(n) for n in range(1, 61))
    with pytest.raises(PreconditionError):
        middle_binomial_bound_holds(0)
