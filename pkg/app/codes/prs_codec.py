"""Product-Reed-Solomon codes on the m-cube and their recursive decoders.

A PRS codeword is a (q,)*m array, index i_1 slowest, whose axis-i lines are
codewords of RS_q(q, k_i). The recursive decoder first decodes the q
hyperplanes obtained by fixing the last index, then every line along the last
axis, replacing each line by the nearest codeword of its Guruswami-Sudan list.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import floor, prod, sqrt
from typing import Literal, Protocol

import galois
import numpy as np

from app.algebra.field import FieldCtx, to_ints
from app.algebra.polynomial import MultiPoly, grid_points
from app.app_logging import logger
from app.codes.rm_codec import RMDecodeEntry, RMSpec, rm_list_decode_pw, rm_membership, rm_spec
from app.codes.rs_codec import RSSpec, Word, hamming, rs_nearest, rs_radius, rs_spec
from app.core.errors import DegreeError, SpecValidationError

TensorWord = galois.FieldArray
TupleRule = Literal["literal", "shifted"]


@dataclass(frozen=True, eq=False)
class PRSSpec:
    """The product code RS_q(q, k_1) x ... x RS_q(q, k_m).

    Attributes:
        ctx (FieldCtx): GF(q)
        m (int): number of axes
        k (tuple[int, ...]): per-axis dimensions, 1 <= k_i <= q
    """

    ctx: FieldCtx
    m: int
    k: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1 or len(self.k) != self.m:
            raise SpecValidationError(f"need one dimension per axis, got k={self.k} for m={self.m}")
        if any(not 1 <= k <= self.q for k in self.k):
            raise SpecValidationError(f"every k_i must lie in [1, {self.q}], got {self.k}")

    @property
    def q(self) -> int:
        return self.ctx.order

    @property
    def n(self) -> int:
        return self.q**self.m

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.q,) * self.m

    @property
    def rates(self) -> tuple[float, ...]:
        return tuple(k / self.q for k in self.k)

    @cached_property
    def axis_specs(self) -> tuple[RSSpec, ...]:
        """RS_q(q, k_i) on all field elements in encoding order, one per axis."""
        return tuple(rs_spec(self.ctx, self.q, k - 1) for k in self.k)

    @cached_property
    def axis_radii(self) -> tuple[int, ...]:
        """t_i = ceil(q * (1 - sqrt(k_i / q)))."""
        return tuple(rs_radius(self.q, k) for k in self.k)


def prs_spec(ctx: FieldCtx, m: int, k: Sequence[int]) -> PRSSpec:
    return PRSSpec(ctx=ctx, m=m, k=tuple(int(v) for v in k))


def as_tensor(spec: PRSSpec, word: galois.FieldArray) -> TensorWord:
    """View a flat row-major word (or an existing cube) as a (q,)*m array."""
    spec.ctx.check(word)
    if word.size != spec.n:
        raise SpecValidationError(f"expected {spec.n} symbols, got {word.size}")
    return word.reshape(spec.shape)


def prs_encode(spec: PRSSpec, phi: MultiPoly) -> TensorWord:
    """Evaluate phi on the whole cube.

    Raises:
        DegreeError: degree in x_i above k_i - 1, or wrong arity/field
    """
    if phi.ctx != spec.ctx or phi.m != spec.m:
        raise DegreeError("message polynomial does not match the code's field and arity")
    for i, k in enumerate(spec.k):
        if phi.degree_in(i) > k - 1:
            raise DegreeError(f"degree {phi.degree_in(i)} in x_{i + 1} exceeds k_{i + 1} - 1 = {k - 1}")
    return phi.evaluate(grid_points(spec.q, spec.m)).reshape(spec.shape)


def tensor_slice(word: TensorWord, fixed: dict[int, int]) -> tuple[TensorWord, tuple]:
    """Sub-array with the given axes fixed, plus the index that writes it back.

    Args:
        word (TensorWord): the cube
        fixed (dict[int, int]): axis -> index assignments (0-based axes)

    Raises:
        SpecValidationError: unknown axis or index out of range

    Returns:
        tuple[TensorWord, tuple]: a view of the slice and its index, so that
            ``word[index] = new`` substitutes it in place
    """
    index: list = [slice(None)] * word.ndim
    for axis, value in fixed.items():
        if not 0 <= axis < word.ndim:
            raise SpecValidationError(f"axis {axis} outside a {word.ndim}-dimensional word")
        if not 0 <= value < word.shape[axis]:
            raise SpecValidationError(f"index {value} out of range on axis {axis}")
        index[axis] = value
    key = tuple(index)
    return word[key], key


class AxisDecoder(Protocol):
    """Bounded-distance decoder for one axis of a product code."""

    length: int
    radius: int

    def decode(self, line: galois.FieldArray) -> galois.FieldArray | None: ...


class RSLineDecoder:
    """Nearest codeword of the Guruswami-Sudan list within t - 1.

    t = ceil(n * (1 - sqrt(k / n))) for the dimension k = w + 1 unless a radius
    is given.
    """

    def __init__(self, spec: RSSpec, radius: int | None = None):
        self.spec = spec
        self.length = spec.n
        self.radius = max(rs_radius(spec.n, spec.w + 1) - 1, 0) if radius is None else radius

    def decode(self, line: galois.FieldArray) -> galois.FieldArray | None:
        entry = rs_nearest(self.spec, line, self.radius)
        return None if entry is None else entry.codeword


class RepetitionDecoder:
    """Majority vote on a length-n repetition code."""

    def __init__(self, ctx: FieldCtx, n: int):
        self.ctx = ctx
        self.length = n
        self.radius = (n - 1) // 2

    def decode(self, line: galois.FieldArray) -> galois.FieldArray | None:
        counts = np.bincount(to_ints(line), minlength=self.ctx.order)
        winner = int(np.argmax(counts))
        if self.length - counts[winner] > self.radius:
            return None
        return self.ctx(np.full(self.length, winner))


def _decode_block(block: TensorWord, decoders: Sequence[AxisDecoder]) -> None:
    """Decode block in place; decoders[i] handles axis i of the block."""
    depth = block.ndim
    if depth > 1:
        for a in range(block.shape[-1]):
            _decode_block(block[..., a], decoders[: depth - 1])
    decoder = decoders[depth - 1]
    fixed, repaired = 0, 0
    for idx in np.ndindex(block.shape[:-1]):
        decoded = decoder.decode(block[idx])
        if decoded is None:
            continue
        changed = hamming(decoded, block[idx])
        if changed:
            block[idx] = decoded
            fixed += 1
            repaired += changed
    if fixed:
        logger.debug("axis %d pass replaced %d lines (%d symbols)", depth, fixed, repaired)


def product_decode_generic(
    shape: Sequence[int], decoders: Sequence[AxisDecoder], r: TensorWord
) -> TensorWord:
    """The recursive product decoder over arbitrary per-axis decoders.

    Lines whose decoder reports failure are left as received.

    Raises:
        SpecValidationError: shape, decoders and r disagree
    """
    shape = tuple(shape)
    if len(decoders) != len(shape) or r.shape != shape:
        raise SpecValidationError(f"word of shape {r.shape} does not match {shape}")
    for axis, (size, decoder) in enumerate(zip(shape, decoders)):
        if decoder.length != size:
            raise SpecValidationError(
                f"axis {axis} has length {size}, its decoder expects {decoder.length}"
            )
    out = r.copy()
    _decode_block(out, decoders)
    return out


def prs_decode_recursive(spec: PRSSpec, r: TensorWord) -> TensorWord:
    """Recursive PRS decoding with GS line decoders at radius t_i - 1.

    Args:
        spec (PRSSpec): the code
        r (TensorWord): received cube (or flat row-major word)

    Returns:
        TensorWord: the decoded cube; undecodable lines stay as received
    """
    cube = as_tensor(spec, r)
    logger.debug("recursive PRS decode q=%d k=%s radii=%s", spec.q, spec.k, spec.axis_radii)
    decoders = [RSLineDecoder(axis) for axis in spec.axis_specs]
    return product_decode_generic(spec.shape, decoders, cube)


@dataclass(frozen=True)
class PRSRadius:
    """Relative radius prod(1 - sqrt(rho_i)) and its weight guarantee floor(tau * n)."""

    relative: float
    weight: int


def prs_radius(spec: PRSSpec) -> PRSRadius:
    relative = prod(1 - sqrt(k / spec.q) for k in spec.k)
    relative = min(max(relative, 0.0), 1.0)
    return PRSRadius(relative=relative, weight=floor(relative * spec.n))


def prs_membership(spec: PRSSpec, word: galois.FieldArray) -> bool:
    """Whether every axis-aligned line is a codeword of its axis code."""
    cube = as_tensor(spec, word)
    for axis, axis_spec in enumerate(spec.axis_specs):
        if axis_spec.parity_check.shape[0] == 0:
            continue
        lines = np.moveaxis(cube, axis, -1).reshape(-1, spec.q)
        if np.any(to_ints(lines @ axis_spec.parity_check.T)):
            return False
    return True


def prs_list_decode_pw(spec: PRSSpec, r: galois.FieldArray) -> list[RMDecodeEntry]:
    """Lifting list decoder applied to a PRS code through RM_q(sum(k_i - 1), m, q^m).

    Raises:
        DegreeError: sum(k_i - 1) > q
    """
    ell = sum(k - 1 for k in spec.k)
    if ell > spec.q:
        raise DegreeError(f"the lifting decoder needs sum(k_i - 1) = {ell} <= q = {spec.q}")
    rm = rm_spec(spec.ctx, ell, spec.m)
    entries = rm_list_decode_pw(rm, as_tensor(spec, r).reshape(-1))
    return [e for e in entries if prs_membership(spec, e.codeword)]


def admissible_tuples(q: int, ell: int, m: int, rule: TupleRule = "literal") -> list[tuple[int, ...]]:
    """Dimension tuples (k_1..k_m), 1 <= k_i < q, tried by the recursive RM decoder.

    The literal rule admits sum(k_i) <= l; the shifted rule admits
    sum(k_i - 1) <= l, matching the containment PRS < RM_q(sum(k_i - 1), m).
    """
    if rule not in ("literal", "shifted"):
        raise SpecValidationError(f"unknown tuple rule {rule!r}")
    offset = m if rule == "shifted" else 0
    return [k for k in product(range(1, q), repeat=m) if sum(k) - offset <= ell]


@dataclass(frozen=True, eq=False)
class RecursiveCandidate:
    """One output of the recursive RM decoder.

    Attributes:
        codeword (Word): the recursive PRS decoder's output, flattened
        distance (int): Hamming distance to the received word
        in_code (bool): whether the word is an RM codeword
        tuples (tuple): every dimension tuple that produced this word
    """

    codeword: Word
    distance: int
    in_code: bool
    tuples: tuple[tuple[int, ...], ...]


def rm_list_decode_recursive(
    spec: RMSpec, r: Word, rule: TupleRule = "literal"
) -> list[RecursiveCandidate]:
    """Run the recursive PRS decoder for every admissible dimension tuple.

    Candidates are annotated, not filtered.

    Raises:
        SpecValidationError: the RM code is not on the full lexicographic grid

    Returns:
        list[RecursiveCandidate]: sorted by distance, then by codeword encoding
    """
    if not spec.is_full_grid:
        raise SpecValidationError("the recursive decoder needs a full-grid Reed-Muller code (n = q^m)")
    spec.base.check(r)
    if r.shape != (spec.n,):
        raise SpecValidationError(f"expected a word of length {spec.n}, got shape {r.shape}")
    tuples = admissible_tuples(spec.q, spec.ell, spec.m, rule)
    if not tuples:
        logger.warning("no admissible tuple for q=%d l=%d m=%d", spec.q, spec.ell, spec.m)
        return []

    seen: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    words: dict[tuple[int, ...], Word] = {}
    for k in tuples:
        decoded = prs_decode_recursive(prs_spec(spec.base, spec.m, k), r).reshape(-1)
        key = tuple(to_ints(decoded).tolist())
        seen.setdefault(key, []).append(k)
        words.setdefault(key, decoded)

    candidates = [
        RecursiveCandidate(
            codeword=words[key],
            distance=hamming(words[key], r),
            in_code=rm_membership(spec, words[key]) is not None,
            tuples=tuple(seen[key]),
        )
        for key in seen
    ]
    candidates.sort(key=lambda c: (c.distance, tuple(to_ints(c.codeword).tolist())))
    logger.info("recursive RM decoder tried %d tuples, %d distinct candidates", len(tuples), len(candidates))
    return candidates
