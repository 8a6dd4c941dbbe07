import logging
import re
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import comb
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from app.core.config import settings
from app.core.exceptions import PreconditionError
from app.models.lp import Constraint, LinearProgram, LpFamily, LpParams, Objective, Relation, Sense, Variable
from app.models.partition import BellyShape, Partition
from app.models.permutation import PermSet
from app.services.birkhoff import phi_char
from app.services.characters import hook_cycle_type, limit_coeff, mn_character
from app.services.exactq import RoundingDirection, rational_pow, round_dyadic
from app.services.lp_tails import tail_T, tail_Tn
from app.services.partitions import (
    belly_shapes,
    enumerate_partitions,
    format_partition,
    kostka_hook,
    mu_shape,
    parse_partition,
    realize_belly,
    standard_count,
    transpose,
)


def shape_variable(shape: Partition) -> str:
    return f"x[{format_partition(shape)}]"


def belly_variable(belly_shape: BellyShape) -> str:
    return f"x[{belly_shape.label()}]"


def _index(variables: List[Variable]) -> Dict[str, int]:
    return {v.name: i for i, v in enumerate(variables)}


def _head_variables(params: LpParams) -> List[Variable]:
    return [Variable(name="M", nonnegative=False)] + [
        Variable(name=f"psi{ell}", nonnegative=False) for ell in params.even_ells
    ]


def _bound_rows(params: LpParams, index: Dict[str, int]) -> List[Constraint]:
    return [
        Constraint(terms={index["M"]: 1, index[f"psi{ell}"]: -1}, relation=Relation.GE, tag=f"bound{ell}")
        for ell in params.even_ells
    ]


def _require_n(params: LpParams) -> int:
    if params.n is None:
        raise PreconditionError("This family needs an odd n")
    if params.l0 > params.n:
        raise PreconditionError(f"l0={params.l0} exceeds n={params.n}")
    return params.n


def _require_limit_c(params: LpParams) -> None:
    if not 1 < params.c < 2:
        raise PreconditionError(f"c must lie in (1, 2), got {params.c}")


def build_lp1(params: LpParams) -> LinearProgram:
    n = _require_n(params)
    shapes = enumerate_partitions(n)
    variables = _head_variables(params) + [Variable(name=shape_variable(shape)) for shape in shapes]
    index = _index(variables)
    x = {shape: index[shape_variable(shape)] for shape in shapes}

    constraints = _bound_rows(params, index)
    for ell in params.even_ells:
        cycle_type = hook_cycle_type(n, ell)
        terms = {x[shape]: mn_character(shape, cycle_type) for shape in shapes}
        terms[index[f"psi{ell}"]] = -1
        constraints.append(Constraint(terms=terms, relation=Relation.EQ, tag=f"parseval{ell}"))
    for m in range(2, n, 2):
        terms = {x[shape]: kostka_hook(shape, m) for shape in shapes}
        constraints.append(
            Constraint(terms=terms, relation=Relation.LE, rhs=rational_pow(params.c, m), tag=f"young{m}")
        )
    for shape in shapes:
        conjugate = transpose(shape)
        if shape > conjugate:
            constraints.append(
                Constraint(
                    terms={x[shape]: 1, x[conjugate]: -1},
                    relation=Relation.EQ,
                    tag=f"transpose[{format_partition(shape)}]",
                )
            )
    for shape in sorted({(n,), (1,) * n}, reverse=True):
        constraints.append(
            Constraint(terms={x[shape]: 1}, relation=Relation.EQ, rhs=1, tag=f"unit[{format_partition(shape)}]")
        )

    logging.info(f"LP I n={n} l0={params.l0}: {len(variables)} variables, {len(constraints)} rows")
    return LinearProgram(
        family=LpFamily.ONE,
        params=params,
        variables=variables,
        objective=Objective(sense=Sense.MIN, terms={index["M"]: 1}),
        constraints=constraints,
    )


def build_lp2(params: LpParams) -> LinearProgram:
    n = _require_n(params)
    if not params.l0 <= params.k0 <= (n - params.l0 - 3) / 2:
        raise PreconditionError(
            f"Need l0 <= k0 <= (n-l0-3)/2, got l0={params.l0} k0={params.k0} n={n}"
        )
    bellies = belly_shapes(params.l0, params.k0)
    realized = [realize_belly(b, n) for b in bellies]
    trivial = (n,)
    variables = (
        _head_variables(params)
        + [Variable(name=shape_variable(trivial))]
        + [Variable(name=shape_variable(shape)) for shape in realized]
    )
    index = _index(variables)

    constraints = _bound_rows(params, index)
    for ell in params.even_ells:
        cycle_type = hook_cycle_type(n, ell)
        terms = {index[shape_variable(shape)]: 2 * mn_character(shape, cycle_type) for shape in realized}
        terms[index[f"psi{ell}"]] = -1
        rhs = 2 * tail_Tn(n, ell, params.k0, params.c) - 2
        constraints.append(
            Constraint(terms=terms, relation=Relation.EQ, rhs=rhs, tag=f"parseval{ell}")
        )
    for m in range(2, n, 2):
        terms = {index[shape_variable(trivial)]: 1}
        terms.update({index[shape_variable(shape)]: kostka_hook(shape, m) for shape in realized})
        constraints.append(
            Constraint(terms=terms, relation=Relation.LE, rhs=rational_pow(params.c, m), tag=f"young{m}")
        )
    constraints.append(
        Constraint(terms={index[shape_variable(trivial)]: 1}, relation=Relation.EQ, rhs=1, tag=f"unit[{n}]")
    )

    logging.info(f"LP II n={n} l0={params.l0} k0={params.k0}: {len(variables)} variables, {len(constraints)} rows")
    return LinearProgram(
        family=LpFamily.TWO,
        params=params,
        variables=variables,
        objective=Objective(sense=Sense.MIN, terms={index["M"]: 1}),
        constraints=constraints,
    )


def young_coefficient(belly_shape: BellyShape, m: int) -> int:
    return comb(m, belly_shape.k + belly_shape.size) * standard_count(mu_shape(belly_shape))


def build_lp3(params: LpParams) -> LinearProgram:
    _require_limit_c(params)
    bellies = belly_shapes(params.l0, params.k0)
    variables = _head_variables(params) + [Variable(name=belly_variable(b)) for b in bellies]
    index = _index(variables)

    constraints = _bound_rows(params, index)
    for ell in params.even_ells:
        terms = {index[belly_variable(b)]: 2 * limit_coeff(b, ell) for b in bellies}
        terms[index[f"psi{ell}"]] = -1
        rhs = 2 * tail_T(ell, params.k0, params.c) - 2
        constraints.append(Constraint(terms=terms, relation=Relation.EQ, rhs=rhs, tag=f"parseval{ell}"))
    for m in params.even_ms:
        terms = {index[belly_variable(b)]: young_coefficient(b, m) for b in bellies}
        rhs = rational_pow(params.c, m) - 1
        constraints.append(Constraint(terms=terms, relation=Relation.LE, rhs=rhs, tag=f"young{m}"))

    logging.info(f"LP III {params.header()}: {len(variables)} variables, {len(constraints)} rows")
    return LinearProgram(
        family=LpFamily.THREE,
        params=params,
        variables=variables,
        objective=Objective(sense=Sense.MIN, terms={index["M"]: 1}),
        constraints=constraints,
    )


def dual_variables(params: LpParams) -> List[Variable]:
    return [Variable(name=f"w{ell}") for ell in params.even_ells] + [Variable(name=f"y{m}") for m in params.even_ms]


def restriction_coefficients(belly_shape: BellyShape, params: LpParams) -> Tuple[Dict[int, int], Dict[int, int]]:
    """(w-coefficients by ell, y-coefficients by m) of the restriction attached to (k, beta)."""
    w = {ell: 2 * limit_coeff(belly_shape, ell) for ell in params.even_ells}
    y = {m: young_coefficient(belly_shape, m) for m in params.even_ms}
    return w, y


def joint_coefficients(k: int, s: int, params: LpParams) -> Tuple[Dict[int, int], Dict[int, int]]:
    """Single row standing in for every (k, beta) with |beta| = s once k >= l0."""
    w = {s: 2 * (-1) ** k} if s % 2 == 0 else {}
    y = {m: comb(m, k + s) for m in params.even_ms}
    return w, y


def _dual_row(w: Dict[int, int], y: Dict[int, int], index: Dict[str, int], tag: str,
              belly: Optional[BellyShape] = None) -> Constraint:
    terms = {index[f"w{ell}"]: value for ell, value in w.items()}
    terms.update({index[f"y{m}"]: value for m, value in y.items()})
    return Constraint(terms=terms, relation=Relation.GE, tag=tag, belly=belly)


def build_dual(params: LpParams, threads: Optional[int] = None) -> LinearProgram:
    _require_limit_c(params)
    variables = dual_variables(params)
    index = _index(variables)
    objective_terms = {index[f"w{ell}"]: -2 * tail_T(ell, params.k0, params.c) for ell in params.even_ells}
    objective_terms.update({index[f"y{m}"]: 1 - rational_pow(params.c, m) for m in params.even_ms})

    def restriction(belly_shape: BellyShape) -> Constraint:
        w, y = restriction_coefficients(belly_shape, params)
        return _dual_row(w, y, index, f"restriction[{belly_shape.label()}]", belly_shape)

    bellies = belly_shapes(params.l0, params.k0)
    with ThreadPoolExecutor(max_workers=threads or settings.THREADS) as executor:
        restrictions = list(executor.map(restriction, bellies))

    unit = Constraint(
        terms={index[f"w{ell}"]: 1 for ell in params.even_ells}, relation=Relation.EQ, rhs=1, tag="unit-sum"
    )
    logging.info(f"Dual {params.header()}: {len(variables)} variables, {len(restrictions)} restrictions")
    return LinearProgram(
        family=LpFamily.DUAL,
        params=params,
        variables=variables,
        objective=Objective(sense=Sense.MAX, terms=objective_terms, constant=2),
        constraints=[unit] + restrictions,
    )


def joint_leg_floor(params: LpParams) -> int:
    return max(params.l0, 1)


def apply_joint_large_leg(lp: LinearProgram, params: LpParams) -> LinearProgram:
    floor = joint_leg_floor(params)
    index = _index(lp.variables)
    kept = [c for c in lp.constraints if c.belly is None or c.belly.k < floor]
    joint = []
    for s in range(params.l0 + 1):
        for k in range(floor, params.k0 + 1):
            w, y = joint_coefficients(k, s, params)
            joint.append(_dual_row(w, y, index, f"joint[k={k};s={s}]"))
    constraints = kept + joint
    logging.info(f"Joint large leg: {len(lp.constraints)} rows -> {len(constraints)} rows")
    return lp.model_copy(update={"constraints": constraints})


_CLAUSE_PATTERNS = {
    "ht": re.compile(r"^ht<=(\d+)$"),
    "size": re.compile(r"^size<=(\d+)$"),
    "beta": re.compile(r"^beta=([\d,]*)$"),
}


class FragmentPredicate:
    """Belly filter written as alternatives joined by "|": all, ht<=H, size<=S, beta=a,b."""

    def __init__(self, descriptor: str):
        self.descriptor = descriptor.strip()
        self.clauses: List[Callable[[BellyShape], bool]] = []
        for clause in self.descriptor.split("|"):
            clause = clause.strip().replace(" ", "")
            self.clauses.append(self._parse_clause(clause))

    @staticmethod
    def _parse_clause(clause: str) -> Callable[[BellyShape], bool]:
        if clause == "all":
            return lambda b: True
        match = _CLAUSE_PATTERNS["ht"].match(clause)
        if match:
            bound = int(match.group(1))
            return lambda b: b.height <= bound
        match = _CLAUSE_PATTERNS["size"].match(clause)
        if match:
            bound = int(match.group(1))
            return lambda b: b.size <= bound
        match = _CLAUSE_PATTERNS["beta"].match(clause)
        if match:
            target = parse_partition(match.group(1))
            return lambda b: b.belly == target
        raise ValueError(f"Invalid fragment clause {clause!r}")

    def __call__(self, belly_shape: BellyShape) -> bool:
        return any(clause(belly_shape) for clause in self.clauses)

    def __repr__(self) -> str:
        return f"FragmentPredicate({self.descriptor!r})"


def parse_fragment(descriptor: str) -> FragmentPredicate:
    return FragmentPredicate(descriptor)


def apply_heuristics(
    lp: LinearProgram,
    drop_y: Iterable[int] = (),
    round_bits: Optional[int] = None,
    fragment: Optional[Callable[[BellyShape], bool]] = None,
) -> LinearProgram:
    """Modifiers that can only lower the dual optimum, plus the fragment restriction (which can raise it)."""
    index = _index(lp.variables)
    constraints = list(lp.constraints)
    objective = lp.objective

    if fragment is not None:
        constraints = [c for c in constraints if c.belly is None or fragment(c.belly)]
    if round_bits is not None:
        # objective terms are all non-positive and the variables non-negative, so rounding down is safe
        objective = objective.model_copy(update={
            "terms": {j: round_dyadic(v, round_bits, RoundingDirection.DOWN) for j, v in objective.terms.items()}
        })
        constraints = [
            c.model_copy(update={
                "terms": {j: round_dyadic(v, round_bits, RoundingDirection.DOWN) for j, v in c.terms.items()}
            }) if c.relation is Relation.GE and c.rhs == 0 else c
            for c in constraints
        ]
    for m in drop_y:
        name = f"y{m}"
        if name not in index:
            raise PreconditionError(f"Cannot drop {name}: not a dual variable")
        constraints.append(Constraint(terms={index[name]: 1}, relation=Relation.LE, tag=f"drop-{name}"))

    logging.info(f"Heuristics applied: {len(lp.constraints)} rows -> {len(constraints)} rows")
    return lp.model_copy(update={"constraints": constraints, "objective": objective})


def primal_point_from_set(perm_set: PermSet, params: LpParams) -> Dict[str, Fraction]:
    """LP I point built from the characters of phi_A; feasible when A is sign-homogeneous and pseudorandom."""
    n = _require_n(params)
    if perm_set.n != n:
        raise PreconditionError(f"Set lives on [{perm_set.n}], program on [{n}]")
    shapes = enumerate_partitions(n)
    point = {shape_variable(shape): phi_char(perm_set, shape) for shape in shapes}
    psi = {}
    for ell in params.even_ells:
        cycle_type = hook_cycle_type(n, ell)
        psi[ell] = sum((mn_character(shape, cycle_type) * point[shape_variable(shape)] for shape in shapes), Fraction(0))
        point[f"psi{ell}"] = psi[ell]
    point["M"] = max(psi.values())
    return point
