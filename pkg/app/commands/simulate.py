import argparse

from app.app_logging import logger
from app.codes.prs_codec import PRSSpec
from app.commands.common import (
    add_code_arguments,
    add_run_arguments,
    build_code,
    int_list,
    require_code,
    run_config,
    weight_range,
    write_output,
)
from app.core.errors import SpecValidationError
from app.formats import format_csv
from app.schema import DEFAULT_DECODER
from app.study.simulator import (
    adversarial_subcube_search,
    complexity_smoke,
    guarantee_check,
    pattern_factory,
    radius_sweep,
    run_trials,
    summarize,
)

REPORT_COLUMNS = ("trial", "seed", "code", "decoder", "pattern", "weight", "success", "residual")
GUARANTEE_COLUMNS = ("weight", "cap", "capped_success_rate", "unconstrained_success_rate")


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser(
        "simulate",
        help="run seeded decoding trials",
        description="Seeded channel simulations. 'trials' writes one CSV row per trial, "
        "'sweep' one (weight, success rate) row per weight, 'guarantee' compares capped and "
        "unconstrained patterns of the same weight, 'converse' searches sub-cube "
        "patterns the recursive PRS decoder fails on, 'smoke' times the recursive decoder.",
    )
    add_code_arguments(parser)
    add_run_arguments(parser)
    parser.add_argument("--mode", choices=["trials", "sweep", "guarantee", "converse", "smoke"], default="trials")
    parser.add_argument("--decoder", choices=["pw", "recursive", "generic", "gs"])
    parser.add_argument("--tuple-rule", dest="tuple_rule", choices=["literal", "shifted"])
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--weights", type=weight_range, help="inclusive range a..b")
    parser.add_argument("--pattern", choices=["random", "subcube", "capped"])
    parser.add_argument("--cap", type=int, help="per-line error cap for capped patterns")
    parser.add_argument("--sides", type=int_list, help="sub-cube side lengths, e.g. 9,9")
    parser.add_argument("--attempts", type=int, default=50, help="converse search attempts")
    parser.set_defaults(handler=cmd_simulate)


def cmd_simulate(args: argparse.Namespace) -> int:
    """Run a simulation

    Args:
        args (argparse.Namespace): parsed command line

    Raises:
        SpecValidationError: missing or inconsistent knobs

    Returns:
        int: exit status
    """
    config = run_config(args, "simulate")

    if args.mode == "smoke":
        timings = complexity_smoke(seed=config.seed)
        rows = [(t.m, t.n, t.weight, f"{t.seconds:.6f}") for t in timings]
        write_output(config, format_csv(("m", "n", "weight", "seconds"), rows))
        return 0

    spec = build_code(require_code(config))
    decoder = config.decoder or DEFAULT_DECODER[config.code.kind]

    if args.mode == "converse":
        if not isinstance(spec, PRSSpec):
            raise SpecValidationError("the converse search runs on prs codes")
        witness = adversarial_subcube_search(spec, config.seed, args.attempts, config.sides)
        write_output(config, "{}\n" if witness is None else witness.model_dump_json(indent=2) + "\n")
        return 0

    if config.weights is None:
        raise SpecValidationError("--weights a..b is required for trials and sweeps")
    weights = range(config.weights[0], config.weights[1] + 1)

    if args.mode == "sweep":
        rows = radius_sweep(
            spec, decoder, weights, config.trials, config.seed, config.pattern, config.cap, config.tuple_rule
        )
        write_output(config, format_csv(("weight", "success_rate"), rows))
        return 0

    if args.mode == "guarantee":
        if config.cap is None:
            raise SpecValidationError("--cap is required for the guarantee check")
        checks = [
            guarantee_check(spec, decoder, w, config.cap, config.trials, config.seed, config.tuple_rule)
            for w in weights
        ]
        rows = [
            (r.weight, r.cap, f"{r.capped.success_rate:.6f}", f"{r.unconstrained.success_rate:.6f}")
            for r in checks
        ]
        write_output(config, format_csv(GUARANTEE_COLUMNS, rows))
        return 0

    reports = []
    for weight in weights:
        patterns = pattern_factory(config.pattern, spec, weight, cap=config.cap, sides=config.sides)
        batch, _ = run_trials(spec, decoder, patterns, config.trials, [config.seed, weight], config.tuple_rule)
        reports.extend(batch)
    summary = summarize(reports)
    rows = [[getattr(r, c) for c in REPORT_COLUMNS] for r in reports]
    note = f"success_rate={summary.success_rate:.6f} mean_residual={summary.mean_residual:.6f}"
    write_output(config, format_csv(REPORT_COLUMNS, rows, summary=note if reports else None))
    logger.info("simulate wrote %d reports", len(reports))
    return 0
