import argparse
from math import factorial

from app.commands.common import int_list, run_config, write_output
from app.core.errors import SpecValidationError
from app.formats import format_csv
from app.study.analysis import (
    SURFACE_HEADER,
    compare_radii,
    emit_surface,
    radius_dominance_scan,
    region_volume,
    surface_grid,
)


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser(
        "analyze",
        help="radius formulas and the rate-region study",
        description="Closed-form radius comparisons and rate-region data for plotting.",
    )
    studies = parser.add_subparsers(dest="study", required=True)

    compare = studies.add_parser("compare", help="all radii at one rate point")
    compare.add_argument("--q", type=int, required=True)
    compare.add_argument("--m", type=int, required=True)
    compare.add_argument("--k", type=int_list, required=True)

    volume = studies.add_parser("volume", help="relative volume where the recursive radius wins")
    volume.add_argument("--m", type=int, default=2)
    volume.add_argument("--resolution", type=float, help="grid step (1e-3 for m=2, 1e-2 above)")
    volume.add_argument("--samples", type=int, help="Monte Carlo budget instead of a grid")

    surface = studies.add_parser("surface", help="both radii on a rate lattice, as CSV")
    surface.add_argument("--steps", type=int, default=101)

    dominance = studies.add_parser("dominance", help="lifting vs algebraic-geometry radius scan")
    dominance.add_argument("--q-max", dest="q_max", type=int, default=32)
    dominance.add_argument("--m-max", dest="m_max", type=int, default=4)

    for sub in (compare, volume, surface, dominance):
        sub.add_argument("--output", "-o", metavar="FILE", help="defaults to standard output")
        sub.add_argument("--seed", type=int, default=0)
        sub.set_defaults(handler=cmd_analyze)


def cmd_analyze(args: argparse.Namespace) -> int:
    """Run one analysis study

    Args:
        args (argparse.Namespace): parsed command line

    Returns:
        int: exit status
    """
    config = run_config(args, "analyze")

    if args.study == "compare":
        report = compare_radii(args.q, args.m, args.k)
        write_output(config, report.model_dump_json(indent=2) + "\n")
    elif args.study == "volume":
        if args.samples is not None and args.resolution is not None:
            raise SpecValidationError("pass either --resolution or --samples, not both")
        value = region_volume(args.m, args.resolution, args.samples, config.seed)
        if args.samples is not None:
            method, knob = "monte-carlo", args.samples
        else:
            method, knob = "grid", args.resolution or (1e-3 if args.m <= 2 else 1e-2)
        rows = [(args.m, method, knob, f"{value:.6f}", f"{1 - 1 / factorial(args.m):.6f}")]
        header = ("m", "method", "parameter", "volume", "lower_bound")
        write_output(config, format_csv(header, rows, summary=f"V_{args.m} = {value:.6f}"))
    elif args.study == "surface":
        rows = [tuple(f"{v:.6f}" for v in row) for row in emit_surface(surface_grid(args.steps))]
        write_output(config, format_csv(SURFACE_HEADER, rows))
    else:
        report = radius_dominance_scan(args.q_max, args.m_max)
        write_output(config, report.model_dump_json(indent=2) + "\n")
    return 0
