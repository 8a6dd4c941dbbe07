"""Two-phase simplex over exact rationals on a dense tableau."""
import logging
from fractions import Fraction
from typing import Dict, List, Optional

from app.core.config import settings
from app.models.lp import LinearProgram, Relation, Sense
from app.models.solve import Feasibility, PivotRule, SolveResult, SolveStatus

ZERO = Fraction(0)


class SimplexTableau:
    """Standard form of a LinearProgram: free variables split, one slack or surplus per inequality,
    artificials only on rows whose slack cannot start the basis."""

    def __init__(self, lp: LinearProgram, pivot_rule: PivotRule):
        self.lp = lp
        self.rule = pivot_rule
        self.pivots: List[tuple] = []
        self._seen_bases: set = set()

        self.positive: List[int] = []
        self.negative: List[Optional[int]] = []
        width = 0
        for variable in lp.variables:
            self.positive.append(width)
            width += 1
            if variable.nonnegative:
                self.negative.append(None)
            else:
                self.negative.append(width)
                width += 1
        structural = width

        specs = []
        for constraint in lp.constraints:
            coefficients: Dict[int, Fraction] = {}
            for j, a in constraint.terms.items():
                coefficients[self.positive[j]] = a
                if self.negative[j] is not None:
                    coefficients[self.negative[j]] = -a
            relation, rhs = constraint.relation, constraint.rhs
            flip = (
                (relation is Relation.GE and rhs <= 0)
                or (relation is Relation.LE and rhs < 0)
                or (relation is Relation.EQ and rhs < 0)
            )
            if flip:
                coefficients = {j: -a for j, a in coefficients.items()}
                rhs = -rhs
                relation = {Relation.GE: Relation.LE, Relation.LE: Relation.GE}.get(relation, relation)
            specs.append((coefficients, relation, rhs))

        inequality_count = sum(1 for _, relation, _ in specs if relation is not Relation.EQ)
        artificial_count = sum(1 for _, relation, _ in specs if relation is not Relation.LE)
        self.width = structural + inequality_count + artificial_count
        self.artificial = set(range(structural + inequality_count, self.width))

        self.rows: List[List[Fraction]] = []
        self.basis: List[int] = []
        slack = structural
        artificial = structural + inequality_count
        for coefficients, relation, rhs in specs:
            row = [ZERO] * (self.width + 1)
            for j, a in coefficients.items():
                row[j] = Fraction(a)
            row[-1] = Fraction(rhs)
            if relation is Relation.LE:
                row[slack] = Fraction(1)
                self.basis.append(slack)
                slack += 1
            else:
                if relation is Relation.GE:
                    row[slack] = Fraction(-1)
                    slack += 1
                row[artificial] = Fraction(1)
                self.basis.append(artificial)
                artificial += 1
            self.rows.append(row)
        self.blocked: set = set()

    def _canonical(self, costs: Dict[int, Fraction]) -> List[Fraction]:
        objective = [ZERO] * (self.width + 1)
        for j, c in costs.items():
            objective[j] = Fraction(c)
        for i, b in enumerate(self.basis):
            factor = objective[b]
            if factor:
                row = self.rows[i]
                objective = [o - factor * r for o, r in zip(objective, row)]
        return objective

    def _entering(self, objective: List[Fraction]) -> Optional[int]:
        if self.rule is PivotRule.BLAND:
            for j in range(self.width):
                if objective[j] > 0 and j not in self.blocked:
                    return j
            return None
        best = None
        for j in range(self.width):
            if objective[j] > 0 and j not in self.blocked and (best is None or objective[j] > objective[best]):
                best = j
        return best

    def _leaving(self, column: int) -> Optional[int]:
        best = None
        best_key = None
        for i, row in enumerate(self.rows):
            a = row[column]
            if a > 0:
                key = (row[-1] / a, self.basis[i])
                if best_key is None or key < best_key:
                    best, best_key = i, key
        return best

    def pivot(self, r: int, column: int, objective: List[Fraction]) -> None:
        pivot_row = self.rows[r]
        p = pivot_row[column]
        if p != 1:
            pivot_row = [v / p for v in pivot_row]
            self.rows[r] = pivot_row
        support = [j for j, v in enumerate(pivot_row) if v]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            factor = row[column]
            if factor:
                for j in support:
                    row[j] -= factor * pivot_row[j]
        factor = objective[column]
        if factor:
            for j in support:
                objective[j] -= factor * pivot_row[j]
        self.basis[r] = column
        self.pivots.append((r, column))
        if len(self.pivots) % settings.PIVOT_LOG_EVERY == 0:
            logging.info(f"Simplex: {len(self.pivots)} pivots, objective {-objective[-1]}")

    def optimize(self, objective: List[Fraction]) -> bool:
        """Maximize; False when unbounded."""
        while True:
            column = self._entering(objective)
            if column is None:
                return True
            r = self._leaving(column)
            if r is None:
                return False
            degenerate = self.rows[r][-1] == 0
            self.pivot(r, column, objective)
            if self.rule is PivotRule.DANTZIG:
                if not degenerate:
                    self._seen_bases.clear()
                else:
                    state = tuple(self.basis)
                    if state in self._seen_bases:
                        logging.info("Simplex: basis repeated under Dantzig pricing, switching to Bland's rule")
                        self.rule = PivotRule.BLAND
                    self._seen_bases.add(state)

    def phase_one(self) -> bool:
        """Drive the artificials to zero; False when the program is infeasible."""
        if not self.artificial:
            return True
        objective = self._canonical({j: Fraction(-1) for j in self.artificial})
        self.optimize(objective)
        if -objective[-1] < 0:
            return False
        redundant = []
        for i, b in enumerate(self.basis):
            if b not in self.artificial:
                continue
            row = self.rows[i]
            column = next((j for j in range(self.width) if j not in self.artificial and row[j] != 0), None)
            if column is None:
                redundant.append(i)
            else:
                self.pivot(i, column, objective)
        for i in reversed(redundant):
            del self.rows[i]
            del self.basis[i]
        self.blocked = set(self.artificial)
        return True

    def costs(self) -> Dict[int, Fraction]:
        sign = 1 if self.lp.objective.sense is Sense.MAX else -1
        costs: Dict[int, Fraction] = {}
        for j, c in self.lp.objective.terms.items():
            costs[self.positive[j]] = sign * c
            if self.negative[j] is not None:
                costs[self.negative[j]] = -sign * c
        return costs

    def solution(self) -> List[Fraction]:
        values = [ZERO] * self.width
        for i, b in enumerate(self.basis):
            values[b] = self.rows[i][-1]
        return [
            values[self.positive[j]] - (values[self.negative[j]] if self.negative[j] is not None else ZERO)
            for j in range(len(self.lp.variables))
        ]


def solve(lp: LinearProgram, pivot_rule: PivotRule | str | None = None) -> SolveResult:
    rule = PivotRule(pivot_rule or settings.PIVOT_RULE)
    tableau = SimplexTableau(lp, rule)
    logging.info(f"Simplex: {len(tableau.rows)} rows, {tableau.width} columns, rule={rule.value}")

    if not tableau.phase_one():
        return SolveResult(status=SolveStatus.INFEASIBLE, pivot_count=len(tableau.pivots), pivots=tableau.pivots)
    objective = tableau._canonical(tableau.costs())
    if not tableau.optimize(objective):
        return SolveResult(status=SolveStatus.UNBOUNDED, pivot_count=len(tableau.pivots), pivots=tableau.pivots)

    values = tableau.solution()
    value = lp.objective.evaluate(values)
    logging.info(f"Simplex: optimal {value} after {len(tableau.pivots)} pivots")
    return SolveResult(
        status=SolveStatus.OPTIMAL,
        objective=value,
        assignment=dict(zip(lp.variable_names, values)),
        pivot_count=len(tableau.pivots),
        pivots=tableau.pivots,
    )


def check_point(lp: LinearProgram, assignment: Dict[str, Fraction]) -> Feasibility:
    values = lp.values_from(assignment)
    for constraint in lp.constraints:
        if not constraint.holds(values):
            return Feasibility(feasible=False, tag=constraint.tag)
    for variable, value in zip(lp.variables, values):
        if variable.nonnegative and value < 0:
            return Feasibility(feasible=False, tag=f"nonnegative[{variable.name}]")
    return Feasibility(feasible=True)
