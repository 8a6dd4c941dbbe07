"""Solve and verify the desk-scale parameter rows, one after another."""
import argparse
import logging
from fractions import Fraction

from app.core.config import settings
from app.crud.crud_certificate import write_certificate
from app.models.lp import LpParams, VerdictStatus
from app.models.solve import SolveStatus
from app.services.certificate import certificate_from_solution, verify_dual_certificate
from app.services.lp_builder import build_dual
from app.services.simplex import solve

logging.basicConfig(level=settings.LOG_LEVEL)

# (l0, c, k0); m0 = 2(l0 + k0). Rows that needed the fragment heuristic are left out.
PARAMETER_ROWS = [
    (0, Fraction(149, 100), 19),
    (2, Fraction(169, 100), 29),
    (4, Fraction(172, 100), 29),
    (6, Fraction(178, 100), 39),
    (8, Fraction(180, 100), 39),
    (10, Fraction(182, 100), 49),
    (12, Fraction(185, 100), 59),
    (14, Fraction(187, 100), 79),
]


def run_row(l0: int, c: Fraction, k0: int) -> VerdictStatus:
    params = LpParams(l0=l0, k0=k0, c=c)
    lp = build_dual(params)
    result = solve(lp)
    if result.status is not SolveStatus.OPTIMAL:
        logging.info(f"Row {params.header()}: solver returned {result.status.value}")
        return VerdictStatus.INFEASIBLE
    cert = certificate_from_solution(lp, result, params)
    write_certificate(cert)
    verdict = verify_dual_certificate(cert)
    logging.info(f"Row {params.header()}: objective {cert.objective} -> {verdict.status.value}")
    return verdict.status


def main(max_l0: int = 2) -> int:
    failures = 0
    for l0, c, k0 in PARAMETER_ROWS:
        if l0 > max_l0:
            break
        status = run_row(l0, c, k0)
        print(f"l0={l0} c={c} k0={k0}: {status.value}")
        failures += status is not VerdictStatus.POSITIVE
    return 1 if failures else 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-l0", type=int, default=2, help="largest l0 row to run")
    raise SystemExit(main(parser.parse_args().max_l0))
