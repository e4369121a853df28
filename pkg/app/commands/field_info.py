import argparse

from app.algebra.field import field_for_order, is_vandermonde, make_extension, primitive_element, to_ints
from app.algebra.polynomial import uni_coeffs
from app.commands.common import run_config, write_output
from app.formats import format_field_record


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser(
        "field-info",
        help="print field and extension tables",
        description="Print GF(q), and with --m the tower GF(q) < GF(q^m): basis, "
        "Frobenius matrix A, its inverse, the coordinate polynomials and the embedding.",
    )
    parser.add_argument("--q", type=int, required=True)
    parser.add_argument("--m", type=int)
    parser.add_argument("--basis", choices=["polynomial", "normal"], default="polynomial")
    parser.add_argument("--output", "-o", metavar="FILE", help="defaults to standard output")
    parser.set_defaults(handler=cmd_field_info)


def _matrix(rows) -> list[str]:
    return ["  " + " ".join(map(str, row)) for row in to_ints(rows).tolist()]


def cmd_field_info(args: argparse.Namespace) -> int:
    """Print field tables

    Args:
        args (argparse.Namespace): parsed command line

    Returns:
        int: exit status
    """
    config = run_config(args, "field-info")
    base = field_for_order(args.q)
    lines = [
        f"field {format_field_record(base)}",
        f"primitive {int(primitive_element(base))}",
    ]
    if args.m:
        em = make_extension(base, args.m, args.basis)
        lines += [
            f"extension {format_field_record(em.ext)}",
            f"basis {' '.join(map(str, to_ints(em.basis).tolist()))}",
            f"embed {' '.join(map(str, em.embed_table.tolist()))}",
            f"vandermonde {'yes' if is_vandermonde(em.A) else 'no'}",
            "A",
            *_matrix(em.A),
            "A_inv",
            *_matrix(em.A_inv),
        ]
        lines += [f"mu_{j + 1} {' '.join(map(str, uni_coeffs(mu)))}" for j, mu in enumerate(em.mu)]
    write_output(config, "\n".join(lines) + "\n")
    return 0
