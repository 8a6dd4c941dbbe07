import logging
from pathlib import Path

from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import ArtifactFormatError
from app.models.lp import DualCertificate, LpParams


def default_certificate_path(params: LpParams) -> Path:
    c = f"{params.c.numerator}_{params.c.denominator}"
    return Path(settings.CERTIFICATE_DIR) / f"dual_l{params.l0}_k{params.k0}_m{params.m0}_c{c}.json"


def write_certificate(cert: DualCertificate, path: str | Path | None = None) -> Path:
    path = Path(path) if path is not None else default_certificate_path(cert.params)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(cert.model_dump_json(indent=2) + "\n")
    logging.info(f"Wrote certificate {cert.params.header()} to {path}")
    return path


def parse_certificate(text: str) -> DualCertificate:
    try:
        return DualCertificate.model_validate_json(text)
    except ValidationError as e:
        raise ArtifactFormatError(f"Malformed certificate: {e.error_count()} error(s)\n{e}") from e


def read_certificate(path: str | Path) -> DualCertificate:
    return parse_certificate(Path(path).read_text())
