"""Permutation-set and coloring files: n on the first line, then one permutation per line in 1-based images."""
import logging
from pathlib import Path
from typing import List

from app.core.exceptions import ArtifactFormatError
from app.models.permutation import Coloring, PermSet
from app.services.permutations import from_one_based, to_one_based


def _lines(text: str) -> List[str]:
    return [line.strip() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]


def _ground_size(lines: List[str]) -> int:
    if not lines:
        raise ArtifactFormatError("Empty permutation file")
    try:
        return int(lines[0])
    except ValueError as e:
        raise ArtifactFormatError(f"First line must be n, got {lines[0]!r}") from e


def export_perm_set(perm_set: PermSet) -> str:
    rows = [str(perm_set.n)] + [" ".join(map(str, to_one_based(p))) for p in perm_set.elements]
    return "\n".join(rows) + "\n"


def parse_perm_set(text: str) -> PermSet:
    lines = _lines(text)
    n = _ground_size(lines)
    try:
        return PermSet(n=n, elements=[from_one_based(line.split()) for line in lines[1:]])
    except ValueError as e:
        raise ArtifactFormatError(f"Malformed permutation set: {e}") from e


def export_coloring(coloring: Coloring) -> str:
    rows = [str(coloring.n)] + [
        " ".join(map(str, to_one_based(p))) + f" {color}" for p, color in sorted(coloring.assignment.items())
    ]
    return "\n".join(rows) + "\n"


def parse_coloring(text: str, sign_respecting: bool = False) -> Coloring:
    lines = _lines(text)
    n = _ground_size(lines)
    assignment = {}
    try:
        for line in lines[1:]:
            tokens = line.split()
            if len(tokens) != n + 1:
                raise ArtifactFormatError(f"Expected {n} images and a color, got {line!r}")
            perm_set = PermSet(n=n, elements=[from_one_based(tokens[:n])])
            assignment[perm_set.elements[0]] = tokens[n]
        return Coloring(n=n, assignment=assignment, sign_respecting=sign_respecting)
    except ArtifactFormatError:
        raise
    except ValueError as e:
        raise ArtifactFormatError(f"Malformed coloring: {e}") from e


def write_text(text: str, path: str | Path, what: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logging.info(f"Wrote {what} to {path}")
    return path


def write_perm_set(perm_set: PermSet, path: str | Path) -> Path:
    return write_text(export_perm_set(perm_set), path, f"{perm_set.size} permutations of [{perm_set.n}]")


def read_perm_set(path: str | Path) -> PermSet:
    return parse_perm_set(Path(path).read_text())


def write_coloring(coloring: Coloring, path: str | Path) -> Path:
    return write_text(export_coloring(coloring), path, f"a {coloring.palette_size}-coloring of S_{coloring.n}")


def read_coloring(path: str | Path) -> Coloring:
    return parse_coloring(Path(path).read_text())
