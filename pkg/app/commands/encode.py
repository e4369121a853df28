import argparse

from app.app_logging import logger
from app.codes.prs_codec import PRSSpec, prs_encode
from app.codes.rm_codec import RMSpec, rm_encode
from app.codes.rs_codec import rs_encode
from app.commands.common import (
    add_code_arguments,
    add_run_arguments,
    build_code,
    read_input,
    require_code,
    run_config,
    write_output,
)
from app.formats import format_tensor, format_word, parse_multipoly, parse_unipoly


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser(
        "encode",
        help="encode a message polynomial",
        description="Encode a message polynomial file (univariate for rs, "
        "'coeff i_1 ... i_m' terms for rm and prs) into a word or tensor file.",
    )
    add_code_arguments(parser)
    add_run_arguments(parser)
    parser.set_defaults(handler=cmd_encode)


def cmd_encode(args: argparse.Namespace) -> int:
    """Encode a message

    Args:
        args (argparse.Namespace): parsed command line

    Returns:
        int: exit status
    """
    config = run_config(args, "encode")
    spec = build_code(require_code(config))
    text = read_input(config)

    if isinstance(spec, PRSSpec):
        phi = parse_multipoly(text, spec.ctx, spec.m)
        write_output(config, format_tensor(prs_encode(spec, phi), spec.q, spec.m))
    elif isinstance(spec, RMSpec):
        phi = parse_multipoly(text, spec.base, spec.m)
        write_output(config, format_word(rm_encode(spec, phi)))
    else:
        f = parse_unipoly(text, spec.ctx)
        write_output(config, format_word(rs_encode(spec, f)))
    logger.info("encoded a message for %s", config.code.kind)
    return 0
