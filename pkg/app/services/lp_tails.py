"""Tail terms of the truncated Parseval rows and the estimates that bound them."""
from fractions import Fraction
from math import comb

from app.core.exceptions import PreconditionError
from app.services.exactq import Rational, rational_pow

# 333/106 < pi, used to bound 1/pi from above
PI_LOWER = Fraction(333, 106)


def tail_Tn(n: int, ell: int, k0: int, c: Rational) -> Rational:
    """Finite-n tail: contribution of the odd legs k > k0 dropped from the truncated program."""
    c = Fraction(c)
    middle = (n - 3 * ell - 1) // 2
    top = (n - ell - 1) // 2
    total = Fraction(0)
    for k in range(k0 + 2, middle + 1):
        if k % 2:
            total += rational_pow(c, 2 * k + 2 * ell) / comb(2 * k + 2 * ell, k + ell)
    for k in range(middle + 1, top + 1):
        if k % 2 == 0:
            continue
        if k + ell > n - ell - 1:
            break
        total += rational_pow(c, n - 1) / comb(n - ell - 1, k + ell)
    return total


def tail_T(ell: int, k0: int, c: Rational) -> Rational:
    """n-independent closed form dominating tail_Tn; needs 0 < c < 2."""
    c = Fraction(c)
    if not 0 < c < 2:
        raise PreconditionError(f"tail_T needs 0 < c < 2, got {c}")
    q = c / 2
    a = k0 + ell
    numerator = (2 * a + 4) * rational_pow(q, 2 * a + 4) - 2 * a * rational_pow(q, 2 * a + 8)
    return Fraction(3, 2) * numerator / (1 - rational_pow(q, 4)) ** 2


def series_closed_form(a: int, b: int, n0: int, q: Rational) -> Rational:
    """Sum over n >= n0 of (an+b) q^(an+b), for 0 < q < 1."""
    q = Fraction(q)
    if not 0 < q < 1:
        raise PreconditionError(f"series needs 0 < q < 1, got {q}")
    x = rational_pow(q, a)
    head = rational_pow(q, b) * rational_pow(x, n0)
    return head * (a * (n0 - (n0 - 1) * x) / (1 - x) ** 2 + b / (1 - x))


def series_partial_sum(a: int, b: int, n0: int, q: Rational, terms: int) -> Rational:
    q = Fraction(q)
    return sum(
        ((a * n + b) * rational_pow(q, a * n + b) for n in range(n0, n0 + terms)),
        Fraction(0),
    )


def binomial_ratio(s: int, d: int) -> Rational:
    if d < 0 or 2 * d > s:
        raise PreconditionError(f"binomial_ratio needs 0 <= 2d <= s, got s={s}, d={d}")
    return Fraction(comb(2 * s, s), comb(2 * s - d, s))


def middle_binomial_bound_holds(n: int) -> bool:
    """binom(2n,n) >= 4^n / sqrt(n pi) * exp(-2/(15n)), checked on squares with rational enclosures.

    The right side is bounded above with 1/pi <= 106/333 and exp(-x) <= 1 - x + x^2/2.
    """
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    x = Fraction(4, 15 * n)
    exp_upper = 1 - x + x * x / 2
    rhs_squared_upper = Fraction(16 ** n) / (n * PI_LOWER) * exp_upper
    return comb(2 * n, n) ** 2 >= rhs_squared_upper
