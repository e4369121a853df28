import argparse
from dataclasses import dataclass

import galois

from app.app_logging import logger
from app.codes.prs_codec import (
    PRSSpec,
    RSLineDecoder,
    prs_decode_recursive,
    prs_list_decode_pw,
    product_decode_generic,
    rm_list_decode_recursive,
)
from app.codes.rm_codec import RMSpec, rm_list_decode_pw
from app.codes.rs_codec import gs_list_decode, gs_radius, hamming
from app.commands.common import (
    add_code_arguments,
    add_run_arguments,
    build_code,
    read_input,
    require_code,
    run_config,
    write_output,
)
from app.formats import format_decode_list, parse_tensor, parse_word
from app.schema import DEFAULT_DECODER


@dataclass(frozen=True, eq=False)
class DecodedWord:
    """Output of a bounded-distance product decoder."""

    codeword: galois.FieldArray
    distance: int


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser(
        "decode",
        help="list-decode a received word",
        description="Decode a received word (or tensor file for prs) and write the "
        "list of codewords with distances and messages. An empty list is a valid answer.",
    )
    add_code_arguments(parser)
    add_run_arguments(parser)
    parser.add_argument("--decoder", choices=["pw", "recursive", "generic", "gs"])
    parser.add_argument("--tuple-rule", dest="tuple_rule", choices=["literal", "shifted"])
    parser.add_argument("--tau", type=int, help="rs only: list radius, defaults to t - 1")
    parser.set_defaults(handler=cmd_decode)


def cmd_decode(args: argparse.Namespace) -> int:
    """Decode a received word

    Args:
        args (argparse.Namespace): parsed command line

    Raises:
        RadiusUnachievableError: the requested radius is beyond interpolation

    Returns:
        int: exit status
    """
    config = run_config(args, "decode")
    params = require_code(config)
    decoder = config.decoder or DEFAULT_DECODER[params.kind]
    spec = build_code(params)
    text = read_input(config)

    if isinstance(spec, PRSSpec):
        received = parse_tensor(text, spec.ctx)
        if decoder == "pw":
            entries = prs_list_decode_pw(spec, received)
        else:
            if decoder == "generic":
                lines = [RSLineDecoder(axis) for axis in spec.axis_specs]
                decoded = product_decode_generic(spec.shape, lines, received)
            else:
                decoded = prs_decode_recursive(spec, received)
            entries = [DecodedWord(decoded, hamming(decoded, received))]
    elif isinstance(spec, RMSpec):
        received = parse_word(text, spec.base, spec.n)
        if decoder == "recursive":
            entries = rm_list_decode_recursive(spec, received, config.tuple_rule)
        else:
            entries = rm_list_decode_pw(spec, received)
    else:
        received = parse_word(text, spec.ctx, spec.n)
        tau = args.tau if args.tau is not None else max(gs_radius(spec) - 1, 0)
        entries = gs_list_decode(spec, received, tau)

    if not entries:
        logger.warning("decoder %s returned an empty list", decoder)
    write_output(config, format_decode_list(entries))
    return 0
