import argparse

from app.cli.router import CommandRouter, ExitCode, arg, rational_arg
from app.core.exceptions import PreconditionError
from app.crud.crud_permset import read_perm_set
from app.models.permutation import PermSet
from app.services.birkhoff import count_edges_ell, density, parseval_sides, prepare_pseudorandom
from app.services.brute_force import brute_alpha
from app.services.exactq import rational_to_string
from app.services.permutations import to_one_based

router = CommandRouter()


def _load(path: str, n: int) -> PermSet:
    perm_set = read_perm_set(path)
    if perm_set.n != n:
        raise PreconditionError(f"{path} holds permutations of [{perm_set.n}], expected n={n}")
    return perm_set


def _require_ell(args: argparse.Namespace) -> int:
    if args.ell is None:
        raise PreconditionError("--ell is required with --edges and --parseval")
    return args.ell


@router.command(
    "brute",
    help="Exhaustive oracles on small symmetric groups",
    arguments=[
        arg("--n", type=int, required=True),
        arg("--alpha", action="store_true", help="independence number of B_n"),
        arg("--edges", metavar="SETFILE", default=None, help="count ordered pairs joined by an (n-ell)-cycle"),
        arg("--parseval", metavar="SETFILE", default=None, help="edge count directly and through characters"),
        arg("--increment", metavar="SETFILE", default=None, help="run the pseudorandom preparation"),
        arg("--ell", type=int, default=None),
        arg("--c0", type=rational_arg, default=None),
    ],
)
def brute(args: argparse.Namespace) -> int:
    modes = [args.alpha, args.edges is not None, args.parseval is not None, args.increment is not None]
    if sum(modes) != 1:
        raise PreconditionError("Choose exactly one of --alpha, --edges, --parseval, --increment")

    if args.alpha:
        size, witness = brute_alpha(args.n)
        print(f"alpha {size}")
        for p in witness.elements:
            print(" ".join(map(str, to_one_based(p))))
        return ExitCode.SUCCESS

    if args.edges is not None:
        perm_set = _load(args.edges, args.n)
        print(f"edges {count_edges_ell(perm_set, _require_ell(args))}")
        return ExitCode.SUCCESS

    if args.parseval is not None:
        perm_set = _load(args.parseval, args.n)
        direct, spectral = parseval_sides(perm_set, _require_ell(args))
        print(f"direct {direct}")
        print(f"spectral {rational_to_string(spectral)}")
        print("equal" if direct == spectral else "different")
        return ExitCode.SUCCESS if direct == spectral else ExitCode.VERIFICATION_FAILED

    if args.c0 is None:
        raise PreconditionError("--c0 is required with --increment")
    result = prepare_pseudorandom(_load(args.increment, args.n), args.c0)
    print(f"n {result.n}")
    print(f"size {result.size}")
    print(f"density {rational_to_string(density(result))}")
    return ExitCode.SUCCESS
