"""Channel-noise harness for the list decoders.

A trial draws a random codeword, adds an error pattern with uniformly random
nonzero values, decodes, and compares. List decoders succeed when the
transmitted codeword is in their list. Each trial gets its own generator
spawned from the run seed, so reports depend only on the seed and trial index.
"""

import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from itertools import product
from math import floor, prod

import galois
import numpy as np

from app.algebra.field import field_for_order, to_ints
from app.algebra.polynomial import MultiPoly
from app.app_logging import logger
from app.codes.prs_codec import (
    PRSSpec,
    RSLineDecoder,
    TupleRule,
    prs_decode_recursive,
    prs_encode,
    prs_list_decode_pw,
    prs_radius,
    prs_spec,
    product_decode_generic,
    rm_list_decode_recursive,
)
from app.codes.rm_codec import RMSpec, rm_list_decode_pw
from app.codes.rs_codec import RSSpec, gs_list_decode, gs_radius, hamming, rs_encode
from app.core.errors import PatternError, SpecValidationError
from app.schema import (
    DECODERS_BY_KIND,
    ConverseWitness,
    ErrorPattern,
    GuaranteeReport,
    PatternKind,
    TrialReport,
    TrialSummary,
)

CodeSpec = RSSpec | RMSpec | PRSSpec
Decoder = Callable[[galois.FieldArray], list[galois.FieldArray]]
PatternFactory = Callable[[np.random.Generator], ErrorPattern]


def code_kind(spec: CodeSpec) -> str:
    if isinstance(spec, RSSpec):
        return "rs"
    if isinstance(spec, RMSpec):
        return "rm"
    return "prs"


def code_label(spec: CodeSpec) -> str:
    if isinstance(spec, RSSpec):
        return f"rs q={spec.ctx.order} n={spec.n} w={spec.w}"
    if isinstance(spec, RMSpec):
        return f"rm q={spec.q} l={spec.ell} m={spec.m} n={spec.n}"
    return f"prs q={spec.q} m={spec.m} k={'x'.join(map(str, spec.k))}"


def code_shape(spec: CodeSpec) -> tuple[int, ...]:
    return spec.shape if isinstance(spec, PRSSpec) else (spec.n,)


def code_field(spec: CodeSpec):
    return spec.base if isinstance(spec, RMSpec) else spec.ctx


def random_codeword(spec: CodeSpec, rng: np.random.Generator) -> galois.FieldArray:
    """Uniformly random codeword, flattened row-major."""
    ctx = code_field(spec)
    if isinstance(spec, RSSpec):
        coeffs = rng.integers(0, ctx.order, spec.w + 1)
        return rs_encode(spec, galois.Poly(ctx(coeffs), order="asc"))
    if isinstance(spec, RMSpec):
        coeffs = ctx(rng.integers(0, ctx.order, len(spec.basis_monomials)))
        return spec.evaluation_matrix @ coeffs
    exponents = list(product(*(range(k) for k in spec.k)))
    coeffs = rng.integers(0, ctx.order, len(exponents))
    phi = MultiPoly(ctx, spec.m, dict(zip(exponents, coeffs.tolist())))
    return prs_encode(spec, phi).reshape(-1)


def decoder_for(spec: CodeSpec, name: str, tuple_rule: TupleRule = "literal") -> Decoder:
    """Decoder returning candidate codewords (flattened) nearest first.

    Raises:
        SpecValidationError: the decoder cannot handle this code
    """
    kind = code_kind(spec)
    if name not in DECODERS_BY_KIND[kind]:
        raise SpecValidationError(
            f"decoder {name!r} cannot decode {kind} codes; choose one of {', '.join(DECODERS_BY_KIND[kind])}"
        )
    if isinstance(spec, RSSpec):
        tau = max(gs_radius(spec) - 1, 0)
        return lambda r: [e.codeword for e in gs_list_decode(spec, r, tau)]
    if isinstance(spec, RMSpec):
        if name == "pw":
            return lambda r: [e.codeword for e in rm_list_decode_pw(spec, r)]
        return lambda r: [c.codeword for c in rm_list_decode_recursive(spec, r, tuple_rule)]
    if name == "pw":
        return lambda r: [e.codeword for e in prs_list_decode_pw(spec, r)]
    if name == "generic":
        decoders = [RSLineDecoder(axis) for axis in spec.axis_specs]
        return lambda r: [product_decode_generic(spec.shape, decoders, r.reshape(spec.shape)).reshape(-1)]
    return lambda r: [prs_decode_recursive(spec, r).reshape(-1)]


def _line_ids(shape: tuple[int, ...]) -> np.ndarray:
    """Id of the axis-0 line through every flat position."""
    if len(shape) == 1:
        return np.zeros(shape[0], dtype=np.int64)
    return np.tile(np.arange(prod(shape[1:])), shape[0])


def random_pattern(
    rng: np.random.Generator,
    shape: Sequence[int],
    weight: int,
    q: int,
    cap: int | None = None,
) -> ErrorPattern:
    """Uniformly random positions with uniformly random nonzero values.

    With a cap, positions are taken from a random permutation and skipped once
    their axis-0 line already holds cap errors.

    Raises:
        PatternError: weight above the volume, or above cap times the line count
    """
    shape = tuple(shape)
    volume = prod(shape)
    if not 0 <= weight <= volume:
        raise PatternError(f"weight {weight} does not fit in {volume} positions")
    values = rng.integers(1, q, weight).tolist()
    if cap is None:
        positions = rng.choice(volume, size=weight, replace=False)
        return ErrorPattern(kind="random", positions=sorted(int(p) for p in positions), values=values)

    lines = _line_ids(shape)
    line_count = int(lines.max()) + 1
    if weight > cap * line_count:
        raise PatternError(f"weight {weight} exceeds {line_count} lines x cap {cap}")
    counts = np.zeros(line_count, dtype=np.int64)
    chosen: list[int] = []
    for pos in rng.permutation(volume):
        if len(chosen) == weight:
            break
        if counts[lines[pos]] < cap:
            counts[lines[pos]] += 1
            chosen.append(int(pos))
    if len(chosen) < weight:
        raise PatternError(f"could only place {len(chosen)} of {weight} errors under cap {cap}")
    return ErrorPattern(kind="capped", positions=sorted(chosen), values=values)


def subcube_pattern(
    shape: Sequence[int],
    sides: Sequence[int],
    corner: Sequence[int],
    rng: np.random.Generator,
    q: int,
) -> ErrorPattern:
    """Corrupt every cell of the axis-aligned sub-cube at corner with the given sides.

    Raises:
        PatternError: the sub-cube does not fit
    """
    shape = tuple(shape)
    if len(sides) != len(shape) or len(corner) != len(shape):
        raise PatternError(f"sub-cube needs {len(shape)} sides and corner coordinates")
    for size, side, start in zip(shape, sides, corner):
        if side < 1 or start < 0 or start + side > size:
            raise PatternError(f"sub-cube sides {list(sides)} at {list(corner)} leave the {shape} cube")
    cells = product(*(range(start, start + side) for start, side in zip(corner, sides)))
    positions = sorted(int(np.ravel_multi_index(cell, shape)) for cell in cells)
    values = rng.integers(1, q, len(positions)).tolist()
    return ErrorPattern(kind="subcube", positions=positions, values=values)


def apply_pattern(word: galois.FieldArray, pattern: ErrorPattern) -> galois.FieldArray:
    """word + e for the error vector e described by pattern (flat positions).

    Raises:
        PatternError: a position or value outside the word's range
    """
    field = type(word)
    flat = word.reshape(-1).copy()
    if not pattern.positions:
        return flat.reshape(word.shape)
    if max(pattern.positions) >= flat.size:
        raise PatternError(f"pattern position {max(pattern.positions)} outside a word of {flat.size}")
    if pattern.values and max(pattern.values) >= field.order:
        raise PatternError(f"error value {max(pattern.values)} outside GF({field.order})")
    flat[pattern.positions] = flat[pattern.positions] + field(pattern.values)
    return flat.reshape(word.shape)


def pattern_factory(
    kind: PatternKind,
    spec: CodeSpec,
    weight: int,
    cap: int | None = None,
    sides: Sequence[int] | None = None,
) -> PatternFactory:
    """Pattern generator for run_trials; sub-cubes get a random corner per trial."""
    shape = code_shape(spec)
    q = code_field(spec).order
    if kind == "random":
        return lambda rng: random_pattern(rng, shape, weight, q)
    if kind == "capped":
        if cap is None:
            raise PatternError("capped patterns need a cap")
        return lambda rng: random_pattern(rng, shape, weight, q, cap)
    if not sides:
        raise PatternError("sub-cube patterns need side lengths")

    def subcube(rng: np.random.Generator) -> ErrorPattern:
        corner = [int(rng.integers(0, size - side + 1)) for size, side in zip(shape, sides)]
        return subcube_pattern(shape, sides, corner, rng, q)

    return subcube


def _nearest(candidates: list[galois.FieldArray], sent: galois.FieldArray, received) -> galois.FieldArray:
    for c in candidates:
        if np.array_equal(to_ints(c), to_ints(sent)):
            return c
    return candidates[0] if candidates else received


def run_trials(
    spec: CodeSpec,
    decoder: str,
    patterns: PatternFactory,
    trials: int,
    seed: int | Sequence[int],
    tuple_rule: TupleRule = "literal",
) -> tuple[list[TrialReport], TrialSummary]:
    """Encode, corrupt and decode ``trials`` times.

    Args:
        spec (CodeSpec): the code
        decoder (str): decoder selector
        patterns (PatternFactory): draws one error pattern from a generator
        trials (int): number of trials
        seed (int | Sequence[int]): run seed; trial i uses the i-th spawned child
        tuple_rule (TupleRule): tuple rule for the recursive RM decoder

    Returns:
        tuple[list[TrialReport], TrialSummary]: reports in trial order and their summary
    """
    if trials < 0:
        raise SpecValidationError(f"trial count must be non-negative, got {trials}")
    decode = decoder_for(spec, decoder, tuple_rule)
    label = code_label(spec)
    base_seed = seed if isinstance(seed, int) else int(seed[0])
    reports = []
    for trial, child in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        rng = np.random.default_rng(child)
        sent = random_codeword(spec, rng)
        pattern = patterns(rng)
        received = apply_pattern(sent, pattern)
        started = time.perf_counter()
        decoded = _nearest(decode(received), sent, received)
        elapsed = time.perf_counter() - started
        residual = hamming(decoded, sent)
        reports.append(
            TrialReport(
                trial=trial,
                seed=base_seed,
                code=label,
                decoder=decoder,
                pattern=pattern.kind,
                weight=pattern.weight,
                success=residual == 0,
                residual=residual,
                wall_time=elapsed,
            )
        )
    summary = summarize(reports)
    logger.info(
        "%s / %s: %d trials, success rate %.4f, %.3fs decoding",
        label,
        decoder,
        summary.trials,
        summary.success_rate,
        sum(r.wall_time for r in reports),
    )
    return reports, summary


def summarize(reports: Sequence[TrialReport]) -> TrialSummary:
    successes = sum(r.success for r in reports)
    return TrialSummary(
        trials=len(reports),
        successes=successes,
        success_rate=successes / len(reports) if reports else 1.0,
        mean_residual=float(np.mean([r.residual for r in reports])) if reports else 0.0,
    )


def radius_sweep(
    spec: CodeSpec,
    decoder: str,
    weights: Sequence[int],
    trials: int,
    seed: int,
    kind: PatternKind = "random",
    cap: int | None = None,
    tuple_rule: TupleRule = "literal",
) -> list[tuple[int, float]]:
    """(weight, success rate) for every weight, each weight seeded by (seed, weight)."""
    rows = []
    for weight in weights:
        patterns = pattern_factory(kind, spec, weight, cap=cap)
        _, summary = run_trials(spec, decoder, patterns, trials, [seed, weight], tuple_rule)
        rows.append((weight, summary.success_rate))
    return rows


def guarantee_check(
    spec: CodeSpec,
    decoder: str,
    weight: int,
    cap: int,
    trials: int,
    seed: int,
    tuple_rule: TupleRule = "literal",
) -> GuaranteeReport:
    """Run the same weight with and without a per-line cap.

    Both runs share the seed (seed, weight), so trial i transmits the same
    codeword in each. Only the capped run is expected to be error-free.
    """
    summaries = {}
    for kind in ("capped", "random"):
        patterns = pattern_factory(kind, spec, weight, cap=cap)
        _, summaries[kind] = run_trials(spec, decoder, patterns, trials, [seed, weight], tuple_rule)
    if summaries["capped"].success_rate < 1.0:
        logger.warning(
            "%s: %d capped trials at weight %d failed",
            code_label(spec),
            summaries["capped"].trials - summaries["capped"].successes,
            weight,
        )
    return GuaranteeReport(
        code=code_label(spec),
        decoder=decoder,
        weight=weight,
        cap=cap,
        capped=summaries["capped"],
        unconstrained=summaries["random"],
    )


def converse_sides(spec: PRSSpec) -> list[int]:
    """Smallest equal sides whose sub-cube volume exceeds the radius weight."""
    bound = prs_radius(spec).relative * spec.n
    side = 1
    while side**spec.m <= bound:
        side += 1
    return [min(side, spec.q)] * spec.m


def adversarial_subcube_search(
    spec: PRSSpec,
    seed: int,
    attempts: int = 50,
    sides: Sequence[int] | None = None,
) -> ConverseWitness | None:
    """Search random sub-cube patterns above the radius for a recursive decoding failure.

    Returns:
        ConverseWitness | None: the first failing instance, or None
    """
    sides = list(sides) if sides else converse_sides(spec)
    patterns = pattern_factory("subcube", spec, 0, sides=sides)
    for attempt, child in enumerate(np.random.SeedSequence(seed).spawn(attempts)):
        rng = np.random.default_rng(child)
        sent = random_codeword(spec, rng)
        pattern = patterns(rng)
        decoded = prs_decode_recursive(spec, apply_pattern(sent, pattern)).reshape(-1)
        if not np.array_equal(to_ints(decoded), to_ints(sent)):
            corner = np.unravel_index(pattern.positions[0], spec.shape)
            logger.info("sub-cube %s fails after %d attempts", sides, attempt + 1)
            return ConverseWitness(
                q=spec.q,
                m=spec.m,
                k=list(spec.k),
                seed=seed,
                corner=[int(c) for c in corner],
                sides=sides,
                pattern=pattern,
                transmitted=to_ints(sent).tolist(),
                decoded=to_ints(decoded).tolist(),
            )
    logger.warning("no failing sub-cube %s in %d attempts", sides, attempts)
    return None


@dataclass(frozen=True)
class SmokeTiming:
    m: int
    n: int
    weight: int
    seconds: float


def complexity_smoke(
    q: int = 8, ms: Sequence[int] = (2, 3), trials: int = 3, seed: int = 0, k: int = 2
) -> list[SmokeTiming]:
    """Mean wall time of the recursive PRS decoder per cube size (informational)."""
    ctx = field_for_order(q)
    timings = []
    for m in ms:
        spec = prs_spec(ctx, m, [k] * m)
        weight = floor(prs_radius(spec).weight / 2)
        reports, _ = run_trials(spec, "recursive", pattern_factory("random", spec, weight), trials, [seed, m])
        seconds = float(np.mean([r.wall_time for r in reports])) if reports else 0.0
        logger.info("recursive decode q=%d m=%d n=%d: %.4fs per word", q, m, spec.n, seconds)
        timings.append(SmokeTiming(m=m, n=spec.n, weight=weight, seconds=seconds))
    return timings
