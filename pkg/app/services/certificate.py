"""Dual certificates: extraction from a solve and an independent exact re-check."""
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from app.core.config import settings
from app.core.exceptions import ArtifactFormatError, PreconditionError
from app.models.lp import (
    CertificateMode,
    DualCertificate,
    LinearProgram,
    LpFamily,
    LpParams,
    Verdict,
    VerdictStatus,
)
from app.models.solve import SolveResult, SolveStatus
from app.services.exactq import Rational, rational_pow
from app.services.lp_builder import joint_coefficients, joint_leg_floor, restriction_coefficients
from app.services.lp_tails import tail_T
from app.services.partitions import belly_shapes

Row = Tuple[str, Dict[int, int], Dict[int, int]]


def dual_objective(params: LpParams, w: Dict[int, Rational], y: Dict[int, Rational]) -> Rational:
    """2 - 2 sum T(ell, k0, c) w_ell - sum (c^m - 1) y_m, from scratch."""
    value = Fraction(2)
    for ell in params.even_ells:
        value -= 2 * tail_T(ell, params.k0, params.c) * w[ell]
    for m in params.even_ms:
        value -= (rational_pow(params.c, m) - 1) * y[m]
    return value


def certificate_from_solution(
    lp: LinearProgram, result: SolveResult, params: LpParams, mode: Optional[CertificateMode] = None
) -> DualCertificate:
    if lp.family is not LpFamily.DUAL:
        raise PreconditionError(f"Certificates come from the dual program, not family {lp.family.value}")
    if result.status is not SolveStatus.OPTIMAL:
        raise PreconditionError(f"Cannot extract a certificate from a {result.status.value} solve")
    w = {ell: Fraction(result.assignment[f"w{ell}"]) for ell in params.even_ells}
    y = {m: Fraction(result.assignment[f"y{m}"]) for m in params.even_ms}
    return DualCertificate(
        params=params,
        mode=mode or CertificateMode(),
        w=w,
        y=y,
        objective=dual_objective(params, w, y),
    )


def verification_rows(params: LpParams, joint_large_leg: bool) -> List[Row]:
    """Original restrictions, with k >= max(l0, 1) collapsed to joint rows when asked."""
    floor = joint_leg_floor(params)
    rows = []
    for belly_shape in belly_shapes(params.l0, params.k0):
        if joint_large_leg and belly_shape.k >= floor:
            continue
        w, y = restriction_coefficients(belly_shape, params)
        rows.append((f"restriction[{belly_shape.label()}]", w, y))
    if joint_large_leg:
        for s in range(params.l0 + 1):
            for k in range(floor, params.k0 + 1):
                w, y = joint_coefficients(k, s, params)
                rows.append((f"joint[k={k};s={s}]", w, y))
    return rows


def _row_holds(row: Row, cert: DualCertificate) -> bool:
    _, w, y = row
    total = sum((coef * cert.w[ell] for ell, coef in w.items()), Fraction(0))
    total += sum((coef * cert.y[m] for m, coef in y.items()), Fraction(0))
    return total >= 0


def _check_keys(cert: DualCertificate) -> None:
    params = cert.params
    if set(cert.w) != set(params.even_ells):
        raise ArtifactFormatError(f"w must be indexed by {params.even_ells}, got {sorted(cert.w)}")
    if set(cert.y) != set(params.even_ms):
        raise ArtifactFormatError(f"y must be indexed by {params.even_ms}, got {sorted(cert.y)}")


def verify_dual_certificate(cert: DualCertificate, threads: Optional[int] = None) -> Verdict:
    """Recompute every coefficient exactly and check the certificate; nothing stored in it is trusted
    except the (w, y) values and the claimed objective."""
    _check_keys(cert)
    params = cert.params

    if any(v < 0 for v in cert.w.values()) or any(v < 0 for v in cert.y.values()):
        return _infeasible("nonnegativity")
    if sum(cert.w.values(), Fraction(0)) != 1:
        return _infeasible("unit-sum")

    rows = verification_rows(params, cert.mode.joint_large_leg)
    with ThreadPoolExecutor(max_workers=threads or settings.THREADS) as executor:
        results = list(executor.map(lambda row: _row_holds(row, cert), rows))
    for (tag, _, _), holds in zip(rows, results):
        if not holds:
            return _infeasible(tag)

    objective = dual_objective(params, cert.w, cert.y)
    if objective != cert.objective:
        logging.info(f"Certificate claims {cert.objective}, recomputed {objective}")
        return _infeasible("objective-mismatch")

    status = VerdictStatus.POSITIVE if objective > 0 else VerdictStatus.NONPOSITIVE
    logging.info(f"Certificate {params.header()}: {len(rows)} rows hold, objective {objective} ({status.value})")
    return Verdict(status=status, objective=objective)


def _infeasible(tag: str) -> Verdict:
    logging.info(f"Certificate rejected at {tag}")
    return Verdict(status=VerdictStatus.INFEASIBLE, tag=tag)
