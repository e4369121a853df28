"""Helpers shared by the subcommands: code specs, run configs and file I/O."""

import argparse
import sys
from pathlib import Path

from pydantic import TypeAdapter

from app.algebra.field import field_for_order
from app.codes.prs_codec import prs_spec
from app.codes.rm_codec import rm_spec
from app.codes.rs_codec import rs_spec
from app.core.config import settings
from app.core.errors import SpecValidationError
from app.schema import CodeParams, RMParams, RSParams, RunConfig
from app.study.simulator import CodeSpec

code_params_adapter: TypeAdapter = TypeAdapter(CodeParams)


def int_list(text: str) -> list[int]:
    """Parse ``4,4`` or ``4x4`` into [4, 4]."""
    try:
        return [int(v) for v in text.replace("x", ",").split(",") if v]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def weight_range(text: str) -> tuple[int, int]:
    """Parse ``a..b`` (inclusive) or a single weight ``a``."""
    low, _, high = text.partition("..")
    try:
        return int(low), int(high or low)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from exc


def add_code_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("code", "a JSON spec file or inline parameters")
    group.add_argument("--code", metavar="FILE", help="JSON code spec (kind rs, rm or prs)")
    group.add_argument("--kind", choices=["rs", "rm", "prs"])
    group.add_argument("--q", type=int, help="field order")
    group.add_argument("--ell", type=int, help="RM total degree")
    group.add_argument("--m", type=int, help="number of variables / axes")
    group.add_argument("--n", type=int, help="code length")
    group.add_argument("--w", type=int, help="RS maximum message degree")
    group.add_argument("--k", type=int_list, help="PRS dimensions, e.g. 4,4")
    group.add_argument("--basis", choices=["polynomial", "normal"], help="GF(q^m) basis")


def add_run_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", "-i", metavar="FILE")
    parser.add_argument("--output", "-o", metavar="FILE", help="defaults to standard output")
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)


def load_code_params(args: argparse.Namespace):
    """Validated code parameters from --code or the inline flags, None if neither."""
    if getattr(args, "code", None):
        return code_params_adapter.validate_json(Path(args.code).read_text(encoding="utf-8"))
    if getattr(args, "kind", None) is None:
        return None
    fields = ("q", "ell", "m", "n", "w", "k", "basis")
    inline = {f: getattr(args, f) for f in fields if getattr(args, f, None) is not None}
    return code_params_adapter.validate_python({"kind": args.kind, **inline})


def run_config(args: argparse.Namespace, subcommand: str) -> RunConfig:
    """RunConfig from parsed arguments; pydantic rejects incompatible combinations."""
    values = {
        "subcommand": subcommand,
        "code": load_code_params(args),
        "input": getattr(args, "input", None),
        "output": getattr(args, "output", None),
        "seed": getattr(args, "seed", settings.DEFAULT_SEED),
    }
    for name in ("decoder", "tuple_rule", "trials", "weights", "pattern", "cap", "sides"):
        if getattr(args, name, None) is not None:
            values[name] = getattr(args, name)
    return RunConfig(**values)


def build_code(params) -> CodeSpec:
    """Concrete code spec from validated parameters."""
    ctx = field_for_order(params.q)
    if isinstance(params, RSParams):
        return rs_spec(ctx, params.n, params.w, params.points)
    if isinstance(params, RMParams):
        return rm_spec(ctx, params.ell, params.m, params.n, params.points, params.basis)
    return prs_spec(ctx, params.m, params.k)


def require_code(config: RunConfig):
    if config.code is None:
        raise SpecValidationError("a code is required: pass --code FILE or --kind with its parameters")
    return config.code


def read_input(config: RunConfig) -> str:
    if config.input is None:
        return sys.stdin.read()
    return Path(config.input).read_text(encoding="utf-8")


def write_output(config: RunConfig, text: str) -> None:
    if config.output is None:
        sys.stdout.write(text)
        return
    path = Path(config.output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
