import argparse

from app.cli.router import CommandRouter, ExitCode, arg, partition_arg
from app.services.characters import mn_character

router = CommandRouter()


@router.command(
    "char",
    help="Print the irreducible character value chi^lambda(mu)",
    arguments=[
        arg("--lambda", dest="shape", type=partition_arg, required=True),
        arg("--mu", type=partition_arg, required=True),
    ],
)
def char(args: argparse.Namespace) -> int:
    print(mn_character(args.shape, args.mu))
    return ExitCode.SUCCESS
