import argparse
from fractions import Fraction

from app.cli.router import CommandRouter, ExitCode, arg, rational_arg
from app.crud.crud_lp import export_lp, write_lp
from app.models.lp import LpFamily, LpParams
from app.services.lp_builder import build_dual, build_lp1, build_lp2, build_lp3

router = CommandRouter()

BUILDERS = {
    LpFamily.ONE: build_lp1,
    LpFamily.TWO: build_lp2,
    LpFamily.THREE: build_lp3,
}


@router.command(
    "lp-export",
    help="Write one of the programs in the line-oriented LP text format",
    arguments=[
        arg("--family", choices=[family.value for family in LpFamily], required=True),
        arg("--n", type=int, default=None, help="odd ground set size, families 1 and 2"),
        arg("--l0", type=int, required=True),
        arg("--k0", type=int, default=1),
        arg("--m0", type=int, default=None),
        arg("--c", type=rational_arg, default=Fraction(3, 2)),
        arg("--out", default=None, help="defaults to stdout"),
    ],
)
def lp_export(args: argparse.Namespace) -> int:
    params = LpParams(l0=args.l0, k0=args.k0, m0=args.m0, c=args.c, n=args.n)
    family = LpFamily(args.family)
    if family is LpFamily.DUAL:
        lp = build_dual(params, threads=args.threads)
    else:
        lp = BUILDERS[family](params)
    if args.out is None:
        print(export_lp(lp), end="")
    else:
        path = write_lp(lp, args.out)
        print(f"variables {len(lp.variables)}")
        print(f"constraints {len(lp.constraints)}")
        print(f"lp {path}")
    return ExitCode.SUCCESS
