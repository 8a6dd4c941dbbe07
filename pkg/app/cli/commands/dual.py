import argparse
import logging

from app.cli.router import CommandRouter, ExitCode, arg, int_list_arg, rational_arg
from app.core.config import settings
from app.crud.crud_certificate import read_certificate, write_certificate
from app.models.lp import CertificateMode, LpParams, Verdict, VerdictStatus
from app.models.solve import PivotRule, SolveStatus
from app.services.certificate import certificate_from_solution, verify_dual_certificate
from app.services.exactq import rational_to_string
from app.services.lp_builder import apply_heuristics, apply_joint_large_leg, build_dual, parse_fragment
from app.services.simplex import solve

router = CommandRouter()


def _verdict_exit_code(verdict: Verdict) -> ExitCode:
    line = f"verdict {verdict.status.value}"
    if verdict.tag:
        line += f" {verdict.tag}"
    print(line)
    if verdict.status is VerdictStatus.INFEASIBLE:
        return ExitCode.VERIFICATION_FAILED
    if verdict.status is VerdictStatus.POSITIVE:
        return ExitCode.SUCCESS
    return ExitCode.NONPOSITIVE


@router.command(
    "dual-solve",
    help="Build the dual program, apply the requested modifiers, solve it exactly and write a certificate",
    arguments=[
        arg("--l0", type=int, required=True),
        arg("--k0", type=int, default=1),
        arg("--m0", type=int, default=None, help="defaults to 2(l0+k0)"),
        arg("--c", type=rational_arg, required=True, help="p/q"),
        arg("--joint-large-leg", action="store_true"),
        arg("--fragment", nargs="?", const=settings.DEFAULT_FRAGMENT, default=None,
            help=f"belly filter, e.g. {settings.DEFAULT_FRAGMENT!r} (the default when given without a value)"),
        arg("--round-bits", type=int, nargs="?", const=settings.DEFAULT_ROUND_BITS, default=None),
        arg("--drop-y", type=int_list_arg, default=[], help="comma separated even m whose y_m is pinned to 0"),
        arg("--pivot", choices=[rule.value for rule in PivotRule], default=None),
        arg("--out", default=None, help=f"certificate path, defaults to a file under {settings.CERTIFICATE_DIR}/"),
    ],
)
def dual_solve(args: argparse.Namespace) -> int:
    params = LpParams(l0=args.l0, k0=args.k0, m0=args.m0, c=args.c)
    mode = CertificateMode(
        joint_large_leg=args.joint_large_leg,
        fragment=args.fragment,
        round_bits=args.round_bits,
        dropped_y=args.drop_y,
    )
    fragment = parse_fragment(args.fragment) if args.fragment else None

    lp = build_dual(params, threads=args.threads)
    if mode.joint_large_leg:
        lp = apply_joint_large_leg(lp, params)
    lp = apply_heuristics(lp, drop_y=args.drop_y, round_bits=args.round_bits, fragment=fragment)

    result = solve(lp, args.pivot)
    if result.status is not SolveStatus.OPTIMAL:
        print(f"status {result.status.value}")
        return ExitCode.NONPOSITIVE

    cert = certificate_from_solution(lp, result, params, mode)
    path = write_certificate(cert, args.out)
    print(f"objective {rational_to_string(cert.objective)}")
    print(f"certificate {path}")
    # the solved program may be a fragment or rounded, so re-check against the full dual
    return _verdict_exit_code(verify_dual_certificate(cert, threads=args.threads))


@router.command(
    "dual-verify",
    help="Re-check a certificate file against freshly computed dual restrictions",
    arguments=[arg("file")],
)
def dual_verify(args: argparse.Namespace) -> int:
    cert = read_certificate(args.file)
    logging.info(f"Verifying {args.file}: {cert.params.header()}")
    verdict = verify_dual_certificate(cert, threads=args.threads)
    if verdict.objective is not None:
        print(f"objective {rational_to_string(verdict.objective)}")
    return _verdict_exit_code(verdict)
