import argparse
import logging
from typing import List, Optional

from app.cli.commands import brute, char, construct, dual, lp_export
from app.cli.router import ExitCode, dispatch, include_router
from app.core.config import settings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="birkhoff-lp",
        description="Exact LP certificates, constructions and oracles for the Birkhoff graph",
    )
    parser.add_argument("--threads", type=int, default=settings.THREADS, help="worker cap for row generation")
    subparsers = parser.add_subparsers(dest="command", required=True)

    include_router(subparsers, dual.router)
    include_router(subparsers, lp_export.router)
    include_router(subparsers, construct.router)
    include_router(subparsers, brute.router)
    include_router(subparsers, char.router)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=settings.LOG_LEVEL)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitCode.SUCCESS if e.code in (0, None) else ExitCode.INVALID_INPUT
    return dispatch(args)
