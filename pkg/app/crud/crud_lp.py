import logging
import re
from pathlib import Path
from typing import Dict, List, Optional

from app.core.exceptions import ArtifactFormatError
from app.models.lp import Constraint, LinearProgram, LpFamily, LpParams, Objective, Relation, Sense, Variable
from app.models.partition import BellyShape
from app.services.exactq import rational_from_string, rational_to_string
from app.services.partitions import parse_partition

_BELLY_TAG = re.compile(r"^restriction\[k=(\d+);b=([\d,]*)\]$")


def _terms_text(lp: LinearProgram, terms: Dict[int, object]) -> str:
    names = lp.variable_names
    return " ".join(f"{names[j]}={rational_to_string(v)}" for j, v in terms.items())


def export_lp(lp: LinearProgram) -> str:
    header = f"LP {lp.family.value}"
    if lp.params is not None:
        header += f" params {lp.params.header()}"
    variables = " ".join(v.name if v.nonnegative else f"{v.name}:free" for v in lp.variables)
    objective = lp.objective
    lines = [
        header,
        f"variables: {variables}",
        f"objective {objective.sense.value} {rational_to_string(objective.constant)}: "
        f"{_terms_text(lp, objective.terms)}".rstrip(),
    ]
    for c in lp.constraints:
        lines.append(f"{c.tag} {c.relation.value} {rational_to_string(c.rhs)}: {_terms_text(lp, c.terms)}".rstrip())
    return "\n".join(lines) + "\n"


def write_lp(lp: LinearProgram, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(export_lp(lp))
    logging.info(f"Wrote LP {lp.family.value} with {len(lp.variables)} variables to {path}")
    return path


def _parse_header(line: str) -> tuple:
    tokens = line.split()
    if len(tokens) < 2 or tokens[0] != "LP":
        raise ArtifactFormatError(f"LP header expected, got {line!r}")
    family = LpFamily(tokens[1])
    params: Optional[LpParams] = None
    if len(tokens) > 2:
        if tokens[2] != "params":
            raise ArtifactFormatError(f"Unexpected header token {tokens[2]!r}")
        fields = dict(token.split("=", 1) for token in tokens[3:])
        params = LpParams(**fields)
    return family, params


def _parse_terms(body: str, index: Dict[str, int]) -> Dict[int, object]:
    terms = {}
    for token in body.split():
        name, _, value = token.rpartition("=")
        if name not in index:
            raise ArtifactFormatError(f"Undeclared variable {name!r}")
        terms[index[name]] = rational_from_string(value)
    return terms


def _belly_from_tag(tag: str) -> Optional[BellyShape]:
    match = _BELLY_TAG.match(tag)
    if match is None:
        return None
    return BellyShape(k=int(match.group(1)), belly=parse_partition(match.group(2)))


def parse_lp(text: str) -> LinearProgram:
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) < 3:
        raise ArtifactFormatError("LP text needs a header, a variables line and an objective line")
    try:
        family, params = _parse_header(lines[0])

        head, _, body = lines[1].partition(":")
        if head.strip() != "variables":
            raise ArtifactFormatError(f"Variables line expected, got {lines[1]!r}")
        variables: List[Variable] = []
        for token in body.split():
            name, _, kind = token.partition(":")
            variables.append(Variable(name=name, nonnegative=kind != "free"))
        index = {v.name: i for i, v in enumerate(variables)}

        head, _, body = lines[2].partition(":")
        tokens = head.split()
        if len(tokens) != 3 or tokens[0] != "objective":
            raise ArtifactFormatError(f"Objective line expected, got {lines[2]!r}")
        objective = Objective(
            sense=Sense(tokens[1]), constant=rational_from_string(tokens[2]), terms=_parse_terms(body, index)
        )

        constraints = []
        for line in lines[3:]:
            head, _, body = line.partition(":")
            tokens = head.split()
            if len(tokens) != 3:
                raise ArtifactFormatError(f"Constraint line expected, got {line!r}")
            tag, relation, rhs = tokens
            constraints.append(Constraint(
                terms=_parse_terms(body, index),
                relation=Relation(relation),
                rhs=rational_from_string(rhs),
                tag=tag,
                belly=_belly_from_tag(tag),
            ))
        return LinearProgram(
            family=family, params=params, variables=variables, objective=objective, constraints=constraints
        )
    except ArtifactFormatError:
        raise
    except ValueError as e:
        raise ArtifactFormatError(f"Malformed LP text: {e}") from e


def read_lp(path: str | Path) -> LinearProgram:
    return parse_lp(Path(path).read_text())
