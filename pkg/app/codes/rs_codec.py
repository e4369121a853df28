"""Reed-Solomon encoding and Guruswami-Sudan list decoding.

An RS code here is given by its maximum message degree ``w`` (dimension w + 1)
and its evaluation points. The list decoder interpolates a bivariate Q(X, Y)
through the received points with multiplicity ``s`` and extracts the Y-roots
of degree <= w with the Roth-Ruckenstein recursion.
"""

from dataclasses import dataclass
from functools import cached_property
from math import comb, isqrt

import galois
import numpy as np

from app.algebra.field import FieldCtx, null_space_basis, to_ints
from app.algebra.polynomial import BivariatePoly, grid_points, uni_degree
from app.app_logging import logger
from app.core.config import settings
from app.core.errors import (
    DegreeError,
    EnumerationBudgetError,
    ListDecodeError,
    RadiusUnachievableError,
    SpecValidationError,
)

Word = galois.FieldArray


@dataclass(frozen=True, eq=False)
class RSSpec:
    """A Reed-Solomon code.

    Attributes:
        ctx (FieldCtx): symbol field
        n (int): length
        w (int): maximum message degree
        points (galois.FieldArray): n pairwise distinct evaluation points
    """

    ctx: FieldCtx
    n: int
    w: int
    points: galois.FieldArray

    def __post_init__(self):
        self.ctx.check(self.points)
        if self.points.shape != (self.n,):
            raise SpecValidationError(f"expected {self.n} evaluation points, got {self.points.shape}")
        if len(np.unique(to_ints(self.points))) != self.n:
            raise SpecValidationError("evaluation points must be pairwise distinct")
        if not 0 <= self.w < self.n <= self.ctx.order:
            raise SpecValidationError(
                f"need 0 <= w < n <= q, got w={self.w}, n={self.n}, q={self.ctx.order}"
            )

    @cached_property
    def generator(self) -> galois.FieldArray:
        """(w+1) x n matrix with rows beta^j."""
        return self.ctx.GF(np.stack([to_ints(self.points**j) for j in range(self.w + 1)]))

    @cached_property
    def parity_check(self) -> galois.FieldArray:
        """(n-w-1) x n matrix H with c @ H.T == 0 exactly for codewords c."""
        return null_space_basis(self.generator)


def rs_spec(ctx: FieldCtx, n: int, w: int, points=None) -> RSSpec:
    """RSSpec on the given points, or on the first n field elements in encoding order."""
    if points is None:
        points = ctx(np.arange(n))
    elif not isinstance(points, galois.FieldArray):
        points = ctx(np.asarray(points, dtype=np.int64))
    return RSSpec(ctx=ctx, n=n, w=w, points=points)


@dataclass(frozen=True, eq=False)
class DecodeEntry:
    """One list-decoding result.

    Attributes:
        codeword (Word): the codeword
        message (galois.Poly): its message polynomial
        distance (int): Hamming distance to the received word
    """

    codeword: Word
    message: galois.Poly
    distance: int

    def sort_key(self) -> tuple:
        return (self.distance, tuple(to_ints(self.codeword).tolist()))


DecodeList = list[DecodeEntry]


def check_word(spec: RSSpec, r: Word) -> None:
    spec.ctx.check(r)
    if r.shape != (spec.n,):
        raise SpecValidationError(f"expected a word of length {spec.n}, got shape {r.shape}")


def rs_encode(spec: RSSpec, f: galois.Poly) -> Word:
    """Evaluate f at the code's points.

    Raises:
        DegreeError: deg f > w
    """
    if f.field is not spec.ctx.GF:
        raise SpecValidationError("message polynomial is over the wrong field")
    if uni_degree(f) > spec.w:
        raise DegreeError(f"message degree {uni_degree(f)} exceeds w = {spec.w}")
    return f(spec.points)


def rs_message(spec: RSSpec, c: Word) -> galois.Poly:
    """Message polynomial of a codeword, interpolated on the first w+1 points."""
    xs = spec.points[: spec.w + 1]
    ys = c[: spec.w + 1]
    if spec.w == 0:
        return galois.Poly(ys, order="asc")
    return galois.lagrange_poly(xs, ys)


def rs_is_codeword(spec: RSSpec, r: Word) -> bool:
    """Syndrome test against the cached parity-check matrix."""
    check_word(spec, r)
    if spec.parity_check.shape[0] == 0:
        return True
    return not np.any(to_ints(spec.parity_check @ r))


def hamming(a: Word, b: Word) -> int:
    """Number of coordinates where a and b differ.

    Raises:
        SpecValidationError: shapes differ
    """
    if a.shape != b.shape:
        raise SpecValidationError(f"cannot compare words of shapes {a.shape} and {b.shape}")
    return int(np.count_nonzero(to_ints(a) != to_ints(b)))


def rs_radius(n: int, w: int) -> int:
    """ceil(n * (1 - sqrt(w / n))), computed exactly as n - isqrt(w * n)."""
    return n - isqrt(w * n)


def gs_radius(spec: RSSpec) -> int:
    """Decoding threshold t: all codewords at distance < t are guaranteed."""
    return rs_radius(spec.n, spec.w)


def weighted_monomial_count(D: int, w: int) -> int:
    """Number of X^a Y^b with a + w*b <= D."""
    if D < 0:
        return 0
    return sum(D - w * b + 1 for b in range(D // w + 1))


def gs_parameters(n: int, w: int, tau: int) -> tuple[int, int]:
    """Smallest multiplicity s and the weighted degree D that decode up to tau errors.

    With agreement A = n - tau, D = s*A - 1 and s is the least value for which the
    interpolation system has more unknowns than equations.

    Raises:
        RadiusUnachievableError: A^2 <= w*n, or s would exceed the configured ceiling

    Returns:
        tuple[int, int]: (s, D)
    """
    agreement = n - tau
    if w < 1:
        raise SpecValidationError("interpolation needs w >= 1")
    if agreement <= 0 or agreement * agreement <= w * n:
        raise RadiusUnachievableError(
            f"tau = {tau} is beyond the list-decoding bound n - 1 - isqrt(w*n) = "
            f"{n - 1 - isqrt(w * n)} for n = {n}, w = {w}"
        )
    for s in range(1, settings.GS_MAX_MULTIPLICITY + 1):
        D = s * agreement - 1
        if weighted_monomial_count(D, w) > n * s * (s + 1) // 2:
            return s, D
    raise RadiusUnachievableError(
        f"tau = {tau} needs multiplicity above {settings.GS_MAX_MULTIPLICITY} for n = {n}, w = {w}"
    )


def gs_interpolate(spec: RSSpec, r: Word, mult: int, D: int) -> BivariatePoly:
    """Nonzero Q of (1, w)-weighted degree <= D vanishing with multiplicity mult on (beta_i, r_i).

    The multiplicity constraints are the coefficients of Q(X + beta_i, Y + r_i)
    of total degree < mult.

    Raises:
        RadiusUnachievableError: not more unknowns than constraints

    Returns:
        BivariatePoly: the interpolation polynomial
    """
    check_word(spec, r)
    if spec.w < 1:
        raise SpecValidationError("interpolation needs w >= 1")
    field = spec.ctx.GF
    p = field.characteristic
    terms = [(a, b) for b in range(D // spec.w + 1) for a in range(D - spec.w * b + 1)]
    equations = spec.n * mult * (mult + 1) // 2
    if len(terms) <= equations:
        raise RadiusUnachievableError(
            f"{len(terms)} unknowns cannot satisfy {equations} multiplicity constraints"
        )

    a_exp = np.array([a for a, _ in terms])
    b_exp = np.array([b for _, b in terms])
    x_pows = field.Ones((D + 1, spec.n))
    y_pows = field.Ones((D // spec.w + 1, spec.n))
    for k in range(1, x_pows.shape[0]):
        x_pows[k] = x_pows[k - 1] * spec.points
    for k in range(1, y_pows.shape[0]):
        y_pows[k] = y_pows[k - 1] * r

    blocks = []
    for u in range(mult):
        for v in range(mult - u):
            binom = field([comb(a, u) * comb(b, v) % p for a, b in terms])
            xs = x_pows[np.maximum(a_exp - u, 0)].T
            ys = y_pows[np.maximum(b_exp - v, 0)].T
            blocks.append(binom * xs * ys)
    system = field(np.concatenate([to_ints(block) for block in blocks], axis=0))

    kernel = null_space_basis(system)
    if kernel.shape[0] == 0 or np.any(to_ints(system @ kernel[0])):
        raise ListDecodeError("interpolation produced no nonzero solution")
    solution = kernel[0]
    Q = BivariatePoly.from_terms(field, {t: int(c) for t, c in zip(terms, solution) if c != 0})
    logger.debug("interpolated Q with s=%d D=%d over %d unknowns", mult, D, len(terms))
    return Q


def rr_roots(Q: BivariatePoly, w: int) -> list[galois.Poly]:
    """All f with deg f <= w and Q(X, f(X)) == 0, by Roth-Ruckenstein.

    Returns:
        list[galois.Poly]: distinct roots, ordered by coefficient encodings
    """
    if Q.is_zero():
        raise SpecValidationError("the zero polynomial has every polynomial as a root")
    field = Q.field
    found: dict[tuple[int, ...], galois.Poly] = {}

    def search(current: BivariatePoly, prefix: list[int]) -> None:
        current = current.strip_x()
        if len(prefix) == w + 1:
            f = galois.Poly(field(prefix), order="asc")
            if Q.substitute(f) == 0:
                found[tuple(prefix)] = f
            return
        for code in to_ints(current.at_x_zero().roots()).tolist():
            gamma = field(code)
            search(current.shift_y(gamma).scale_y_by_x(), prefix + [code])

    search(Q, [])
    return [found[key] for key in sorted(found)]


def _constant_list_decode(spec: RSSpec, r: Word, tau: int) -> DecodeList:
    """w = 0: codewords are constant words, decoded by counting symbols."""
    counts = np.bincount(to_ints(r), minlength=spec.ctx.order)
    entries = []
    for value, agreement in enumerate(counts):
        distance = spec.n - int(agreement)
        if distance <= tau:
            codeword = spec.ctx(np.full(spec.n, value))
            entries.append(DecodeEntry(codeword, galois.Poly(spec.ctx.GF([value])), distance))
    return sorted(entries, key=DecodeEntry.sort_key)


def gs_list_decode(spec: RSSpec, r: Word, tau: int) -> DecodeList:
    """All codewords within Hamming distance tau of r.

    Args:
        spec (RSSpec): the code
        r (Word): received word
        tau (int): decoding radius, complete up to n - 1 - isqrt(w * n)

    Raises:
        RadiusUnachievableError: tau beyond the interpolation bound

    Returns:
        DecodeList: entries sorted by distance, then by codeword encoding
    """
    check_word(spec, r)
    if tau < 0:
        raise SpecValidationError(f"decoding radius must be non-negative, got {tau}")
    if tau == 0:
        if rs_is_codeword(spec, r):
            return [DecodeEntry(r.copy(), rs_message(spec, r), 0)]
        return []
    if spec.w == 0:
        return _constant_list_decode(spec, r, tau)

    s, D = gs_parameters(spec.n, spec.w, tau)
    Q = gs_interpolate(spec, r, s, D)
    entries = []
    for f in rr_roots(Q, spec.w):
        codeword = f(spec.points)
        distance = hamming(codeword, r)
        if distance <= tau:
            entries.append(DecodeEntry(codeword, f, distance))
    entries.sort(key=DecodeEntry.sort_key)
    logger.debug("GS n=%d w=%d tau=%d s=%d: %d entries", spec.n, spec.w, tau, s, len(entries))
    return entries


def rs_nearest(spec: RSSpec, r: Word, tau: int) -> DecodeEntry | None:
    """Nearest codeword within tau, ties broken by encoding; None if there is none."""
    check_word(spec, r)
    if rs_is_codeword(spec, r):
        return DecodeEntry(r.copy(), rs_message(spec, r), 0)
    entries = gs_list_decode(spec, r, tau)
    return entries[0] if entries else None


def rs_codebook(spec: RSSpec) -> galois.FieldArray:
    """Every codeword, one per row, for exhaustive checks.

    Raises:
        EnumerationBudgetError: q^(w+1) above the configured budget
    """
    size = spec.ctx.order ** (spec.w + 1)
    if size > settings.ENUMERATION_BUDGET:
        raise EnumerationBudgetError(
            f"{size} codewords exceed the enumeration budget {settings.ENUMERATION_BUDGET}"
        )
    messages = spec.ctx(grid_points(spec.ctx.order, spec.w + 1))
    return messages @ spec.generator
