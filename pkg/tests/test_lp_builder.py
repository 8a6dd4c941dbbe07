from fractions import Fraction

import pytest
from pydantic import ValidationError

from app.core.exceptions import PreconditionError
from app.models.lp import LpFamily, LpParams, Relation, Sense
from app.models.partition import BellyShape
from app.models.solve import SolveStatus
from app.services.lp_builder import (
    apply_heuristics,
    apply_joint_large_leg,
    build_dual,
    build_lp1,
    build_lp2,
    build_lp3,
    joint_coefficients,
    joint_leg_floor,
    parse_fragment,
    primal_point_from_set,
    restriction_coefficients,
)
from app.services.lp_tails import tail_T, tail_Tn
from app.services.partitions import belly_shapes
from app.services.simplex import check_point, solve


def _row(lp, tag):
    return next(c for c in lp.constraints if c.tag == tag)


def _coefficient(lp, tag, name):
    return _row(lp, tag).terms.get(lp.index(name), 0)


def _row_value(w_coefficients, y_coefficients, w, y):
    return sum(coef * w[ell] for ell, coef in w_coefficients.items()) + sum(
        coef * y[m] for m, coef in y_coefficients.items()
    )


def test_params_validation():
    assert LpParams(l0=2, k0=29, c=Fraction(169, 100)).m0 == 62
    first_row = LpParams(l0=0, k0=19, c="149/100")
    assert first_row.c == Fraction(149, 100)
    assert first_row.m0 == 40
    for bad in (dict(l0=1, c=1), dict(l0=0, k0=2, c=1), dict(l0=0, m0=3, c=1), dict(l0=0, c=0), dict(l0=0, c=1, n=8)):
        with pytest.raises(ValidationError):
            LpParams(**bad)


def test_lp1_shape():
    lp = build_lp1(LpParams(l0=0, c=Fraction(3, 2), n=5))
    assert lp.family is LpFamily.ONE
    assert len(lp.variables) == 9
    assert _coefficient(lp, "parseval0", "x[5]") == 1
    assert _coefficient(lp, "parseval0", "x[1,1,1,1,1]") == 1
    assert _coefficient(lp, "young2", "x[4,1]") == 2
    assert _row(lp, "young4").rhs == Fraction(81, 16)
    assert _row(lp, "unit[5]").rhs == 1
    assert _row(lp, "transpose[4,1]").relation is Relation.EQ
    assert lp.objective.sense is Sense.MIN


def test_lp1_needs_n():
    with pytest.raises(PreconditionError):
        build_lp1(LpParams(l0=0, c=Fraction(3, 2)))


def test_lp2_shape():
    c = Fraction(3, 2)
    lp = build_lp2(LpParams(l0=0, k0=1, c=c, n=9))
    assert lp.variable_names == ["M", "psi0", "x[9]", "x[8,1]"]
    assert _coefficient(lp, "parseval0", "x[8,1]") == -2
    assert _row(lp, "parseval0").rhs == 2 * tail_Tn(9, 0, 1, c) - 2
    assert _row(lp, "unit[9]").rhs == 1
    with pytest.raises(PreconditionError):
        build_lp2(LpParams(l0=2, k0=1, c=c, n=9))


def test_lp3_shape():
    c = Fraction(3, 2)
    lp = build_lp3(LpParams(l0=0, k0=3, c=c))
    for m in (2, 4, 6):
        assert _coefficient(lp, f"young{m}", "x[k=1;b=]") == m
    for k in (1, 2, 3):
        assert _coefficient(lp, "parseval0", f"x[k={k};b=]") == 2 * (-1) ** k
    assert _row(lp, "young2").rhs == Fraction(5, 4)
    assert _row(lp, "parseval0").rhs == 2 * tail_T(0, 3, c) - 2
    with pytest.raises(PreconditionError):
        build_lp3(LpParams(l0=0, k0=3, c=2))


def test_dual_shape():
    lp = build_dual(LpParams(l0=0, k0=3, c=Fraction(3, 2)))
    assert lp.variable_names == ["w0", "y2", "y4", "y6"]
    assert lp.constraints[0].tag == "unit-sum"
    assert [c.tag for c in lp.constraints[1:]] == ["restriction[k=1;b=]", "restriction[k=2;b=]", "restriction[k=3;b=]"]
    assert lp.objective.constant == 2
    assert lp.objective.terms[lp.index("y2")] == 1 - Fraction(9, 4)

    big = build_dual(LpParams(l0=2, k0=29, c=Fraction(169, 100)), threads=4)
    assert len(big.constraints) == 1 + 115


def test_dual_rows_do_not_depend_on_thread_count():
    params = LpParams(l0=2, k0=7, c=Fraction(7, 4))
    assert build_dual(params, threads=1) == build_dual(params, threads=3)


def test_small_dual_optimum(small_dual_params):
    c = small_dual_params.c
    result = solve(build_dual(small_dual_params))
    assert result.status is SolveStatus.OPTIMAL
    assert result.objective == 3 - 2 * tail_T(0, 1, c) - c ** 2
    assert result.assignment == {"w0": 1, "y2": 1}


@pytest.mark.parametrize("l0, k0, c", [
    (0, 1, Fraction(3, 2)),
    (0, 3, Fraction(3, 2)),
    (2, 3, Fraction(7, 4)),
])
def test_strong_duality(l0, k0, c):
    params = LpParams(l0=l0, k0=k0, c=c)
    primal = solve(build_lp3(params))
    dual = solve(build_dual(params))
    assert primal.status is dual.status is SolveStatus.OPTIMAL
    assert primal.objective == dual.objective


def test_joint_large_leg_counts():
    params = LpParams(l0=2, k0=29, c=Fraction(169, 100))
    lp = apply_joint_large_leg(build_dual(params), params)
    kept = [c for c in lp.constraints if c.tag.startswith("restriction")]
    joint = [c for c in lp.constraints if c.tag.startswith("joint")]
    assert len(kept) == 3
    assert len(joint) == (29 - 2 + 1) * 3
    assert len(lp.constraints) == 1 + 87


def test_joint_rows_match_originals_without_belly():
    params = LpParams(l0=0, k0=9, c=Fraction(3, 2))
    for k in range(1, 10):
        assert joint_coefficients(k, 0, params) == restriction_coefficients(BellyShape(k=k), params)


def test_joint_row_implies_original_rows(rng):
    params = LpParams(l0=2, k0=5, c=Fraction(3, 2))
    checked = 0
    for _ in range(5000):
        if checked == 200:
            break
        k = rng.randint(joint_leg_floor(params), params.k0)
        s = rng.randint(0, params.l0)
        w = {ell: Fraction(rng.randint(0, 20), 10) for ell in params.even_ells}
        y = {m: Fraction(rng.randint(0, 20), 10 ** rng.randint(0, 4)) for m in params.even_ms}
        if _row_value(*joint_coefficients(k, s, params), w, y) < 0:
            continue
        checked += 1
        for b in belly_shapes(params.l0, params.k0):
            if b.k == k and b.size == s:
                assert _row_value(*restriction_coefficients(b, params), w, y) >= 0
    assert checked == 200


def test_fragment_descriptor():
    predicate = parse_fragment("ht<=1|beta=1,1")
    assert predicate(BellyShape(k=2, belly=(1, 1)))
    assert predicate(BellyShape(k=4, belly=(3,)))
    assert not predicate(BellyShape(k=3, belly=(2, 1)))
    assert parse_fragment("size<=0")(BellyShape(k=5))
    assert parse_fragment("all")(BellyShape(k=3, belly=(2, 1)))
    with pytest.raises(ValueError):
        parse_fragment("height<3")


def test_heuristics():
    params = LpParams(l0=2, k0=29, c=Fraction(169, 100))
    lp = build_dual(params)
    assert apply_heuristics(lp) == lp
    fragment = apply_heuristics(lp, fragment=parse_fragment("ht<=1"))
    assert len(fragment.constraints) == 1 + 87 < len(lp.constraints)
    with pytest.raises(PreconditionError):
        apply_heuristics(lp, drop_y=[3])


def test_dropping_every_y():
    params = LpParams(l0=0, k0=1, c=Fraction(3, 2))
    lp = apply_heuristics(build_dual(params), drop_y=params.even_ms)
    assert _row(lp, "drop-y2").relation is Relation.LE
    # w0 = 1 and y2 = 0 violates the k = 1 restriction
    assert solve(lp).status is SolveStatus.INFEASIBLE


def test_rounded_solution_is_feasible_for_exact_dual():
    params = LpParams(l0=2, k0=3, c=Fraction(7, 4))
    exact = build_dual(params)
    rounded = apply_heuristics(exact, round_bits=6)
    assert all(v.denominator <= 64 for v in rounded.objective.terms.values())
    result = solve(rounded)
    assert result.status is SolveStatus.OPTIMAL
    assert check_point(exact, result.assignment).feasible
    assert exact.objective.evaluate(exact.values_from(result.assignment)) >= result.objective


def test_primal_point_of_alternating_group_is_feasible(alternating_group_5):
    params = LpParams(l0=2, c=Fraction(3, 2), n=5)
    point = primal_point_from_set(alternating_group_5, params)
    assert point["x[5]"] == point["x[1,1,1,1,1]"] == 1
    assert check_point(build_lp1(params), point).feasible


def _chain_cases():
    for n in (9, 11, 13):
        for l0 in (0, 2):
            for c in (Fraction(3, 2), Fraction(7, 4)):
                for k0 in range(max(l0, 1), (n - l0 - 3) // 2 + 1):
                    if k0 % 2:
                        yield n, l0, k0, c


@pytest.mark.slow
def test_lp2_optimum_below_lp1_optimum():
    lp1_optimum = {}
    for n, l0, k0, c in _chain_cases():
        if (n, l0, c) not in lp1_optimum:
            lp1_optimum[n, l0, c] = solve(build_lp1(LpParams(l0=l0, c=c, n=n))).objective
        lp2 = solve(build_lp2(LpParams(l0=l0, k0=k0, c=c, n=n)))
        assert lp2.status is SolveStatus.OPTIMAL
        assert lp2.objective <= lp1_optimum[n, l0, c], (n, l0, k0, c)
