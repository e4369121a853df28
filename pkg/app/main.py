import argparse
import sys

from pydantic import ValidationError

from app.app_logging import logger
from app.commands import analyze, decode, encode, field_info, simulate
from app.core.errors import ListDecodeError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="listdecode",
        description="List decoders for q-ary Reed-Muller and Product-Reed-Solomon codes.",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for command in (encode, decode, simulate, analyze, field_info):
        command.add_parser(subparsers)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Command-line entry point.

    Exit status is 0 on success, 2 on usage or validation errors and 3 when a
    decoder radius cannot be reached. Any other exception is a bug and
    propagates with its traceback.

    Args:
        argv (list[str] | None): arguments, sys.argv[1:] when None

    Returns:
        int: exit status
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2

    try:
        return args.handler(args)
    except ValidationError as exc:
        logger.exception("Validation error")
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ListDecodeError as exc:
        logger.exception("%s", type(exc).__name__)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        logger.exception("Input error")
        print(f"error: {exc}", file=sys.stderr)
        return 2
