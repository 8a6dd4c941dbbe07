import argparse
import logging
from enum import IntEnum
from typing import Callable, List, NamedTuple, Sequence, Tuple

from app.services.exactq import rational_from_string
from app.services.partitions import parse_partition

Handler = Callable[[argparse.Namespace], int]
Argument = Tuple[Tuple[str, ...], dict]


class ExitCode(IntEnum):
    SUCCESS = 0
    NONPOSITIVE = 1
    INVALID_INPUT = 2
    VERIFICATION_FAILED = 3


class Command(NamedTuple):
    name: str
    help: str
    arguments: Sequence[Argument]
    handler: Handler


def arg(*flags: str, **kwargs) -> Argument:
    return flags, kwargs


class CommandRouter:
    """Collects subcommands so that main can include them the way an API includes routers."""

    def __init__(self):
        self.commands: List[Command] = []

    def command(self, name: str, help: str, arguments: Sequence[Argument] = ()):
        def decorator(handler: Handler) -> Handler:
            self.commands.append(Command(name, help, tuple(arguments), handler))
            return handler
        return decorator


def include_router(subparsers, router: CommandRouter) -> None:
    for command in router.commands:
        parser = subparsers.add_parser(command.name, help=command.help, description=command.help)
        for flags, kwargs in command.arguments:
            parser.add_argument(*flags, **kwargs)
        parser.set_defaults(handler=command.handler)


def dispatch(args: argparse.Namespace) -> int:
    try:
        return int(args.handler(args))
    except (ValueError, OSError) as e:
        logging.error(f"{args.command}: {e}", exc_info=True)
        return ExitCode.INVALID_INPUT
    except Exception as e:
        logging.error(f"{args.command} failed unexpectedly: {e}", exc_info=True)
        return ExitCode.INVALID_INPUT


def rational_arg(text: str):
    try:
        return rational_from_string(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def partition_arg(text: str):
    try:
        return parse_partition(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def int_list_arg(text: str) -> List[int]:
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Expected a comma separated list of integers, got {text!r}") from e
