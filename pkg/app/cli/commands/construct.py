import argparse
import logging

from app.cli.router import CommandRouter, ExitCode, arg
from app.core.config import settings
from app.core.exceptions import LimitExceededError
from app.crud.crud_permset import write_coloring, write_perm_set
from app.services.constructions import (
    coloring_palette_size,
    construct_coloring,
    construct_independent,
    independent_set_size,
    theorem_independent_bound,
    theorem_palette_bound,
    verify_coloring,
    verify_independent,
)

router = CommandRouter()

KINDS = ("indep", "indep-pow2", "coloring", "coloring-pow2")


@router.command(
    "construct",
    help="Build an explicit independent set or coloring of the Birkhoff graph",
    arguments=[
        arg("--n", type=int, required=True),
        arg("--kind", choices=KINDS, required=True),
        arg("--verify", action="store_true", help=f"exhaustive check, n <= {settings.CONSTRUCT_VERIFY_LIMIT}"),
        arg("--out", default=None),
    ],
)
def construct(args: argparse.Namespace) -> int:
    n = args.n
    improved = args.kind.endswith("-pow2")
    if args.verify and n > settings.CONSTRUCT_VERIFY_LIMIT:
        raise LimitExceededError(f"--verify is limited to n <= {settings.CONSTRUCT_VERIFY_LIMIT}, got {n}")
    materialize = args.verify or args.out is not None

    if args.kind.startswith("indep"):
        print(f"size {independent_set_size(n, improved)}")
        print(f"target {theorem_independent_bound(n, improved)}")
        if not materialize:
            return ExitCode.SUCCESS
        perm_set = construct_independent(n, improved)
        if args.out is not None:
            write_perm_set(perm_set, args.out)
        verified = verify_independent(perm_set) if args.verify else None
    else:
        print(f"palette {coloring_palette_size(n, improved)}")
        print(f"target {theorem_palette_bound(n, improved)}")
        if not materialize:
            return ExitCode.SUCCESS
        coloring = construct_coloring(n, improved)
        if args.out is not None:
            write_coloring(coloring, args.out)
        verified = verify_coloring(coloring) if args.verify else None

    if verified is None:
        return ExitCode.SUCCESS
    print("verified" if verified else "verification failed")
    logging.info(f"{args.kind} n={n}: verified={verified}")
    return ExitCode.SUCCESS if verified else ExitCode.VERIFICATION_FAILED
