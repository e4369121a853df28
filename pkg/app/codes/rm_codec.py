"""q-ary Reed-Muller codes and the lifting list decoder.

The decoder embeds a received RM word into GF(q^m), list-decodes it as a
Reed-Solomon word on the lifted points with w = l*q^(m-1), and keeps the list
entries that fall back into GF(q)^n and into the RM code.
"""

from dataclasses import dataclass
from functools import cached_property
from math import isqrt

import galois
import numpy as np

from app.algebra.field import (
    BasisKind,
    ExtensionMap,
    FieldCtx,
    lift_points,
    make_extension,
    to_ints,
)
from app.algebra.polynomial import MultiPoly, grid_points, monomials
from app.app_logging import logger
from app.codes.rs_codec import Word, gs_list_decode, rs_spec
from app.core.config import settings
from app.core.errors import (
    DegreeError,
    EnumerationBudgetError,
    NotACodewordError,
    SpecValidationError,
)


def full_grid_points(q: int, m: int) -> np.ndarray:
    """GF(q)^m in lexicographic encoding order, first coordinate slowest."""
    return grid_points(q, m)


@dataclass(frozen=True, eq=False)
class RMSpec:
    """The Reed-Muller code RM_q(l, m, n).

    Attributes:
        base (FieldCtx): GF(q)
        ell (int): maximum total degree, at most q
        m (int): number of variables
        n (int): length
        points (np.ndarray): (n, m) encodings of pairwise distinct points
        em (ExtensionMap): GF(q) < GF(q^m) used for lifting
    """

    base: FieldCtx
    ell: int
    m: int
    n: int
    points: np.ndarray
    em: ExtensionMap

    def __post_init__(self):
        q = self.base.order
        if not 0 <= self.ell <= q:
            raise DegreeError(f"the lifting decoder needs l <= q, got l = {self.ell}, q = {q}")
        if not 1 <= self.n <= q**self.m:
            raise SpecValidationError(f"need 1 <= n <= q^m = {q**self.m}, got n = {self.n}")
        if self.points.shape != (self.n, self.m):
            raise SpecValidationError(f"expected ({self.n}, {self.m}) points, got {self.points.shape}")
        if np.any(self.points < 0) or np.any(self.points >= q):
            raise SpecValidationError("point coordinates must be encodings in [0, q)")
        if len(np.unique(self.points, axis=0)) != self.n:
            raise SpecValidationError("evaluation points must be pairwise distinct")

    @property
    def q(self) -> int:
        return self.base.order

    @property
    def lifted_w(self) -> int:
        """Maximum degree of a lifted message, l * q^(m-1)."""
        return self.ell * self.q ** (self.m - 1)

    @cached_property
    def lifted_points(self) -> galois.FieldArray:
        return lift_points(self.em, self.points)

    @cached_property
    def is_full_grid(self) -> bool:
        return self.n == self.q**self.m and np.array_equal(
            self.points, full_grid_points(self.q, self.m)
        )

    @cached_property
    def basis_monomials(self) -> list[tuple[int, ...]]:
        """Reduced monomials: total degree <= l, every exponent <= q-1."""
        return monomials(self.m, self.ell, self.q - 1)

    @cached_property
    def evaluation_matrix(self) -> galois.FieldArray:
        """n x M matrix of the reduced monomials at the code's points."""
        pts = self.base(self.points)
        columns = self.base.GF.Ones((len(self.basis_monomials), self.n))
        for k, exps in enumerate(self.basis_monomials):
            for j, power in enumerate(exps):
                if power:
                    columns[k] = columns[k] * pts[:, j] ** power
        return columns.T

    @cached_property
    def membership_system(self) -> tuple[galois.FieldArray, np.ndarray, int]:
        """(T, pivot columns, rank) with T @ E in reduced row echelon form."""
        E = self.evaluation_matrix
        M = E.shape[1]
        augmented = self.base.GF(np.concatenate([to_ints(E), np.eye(self.n, dtype=np.int64)], axis=1))
        reduced = augmented.row_reduce(ncols=M)
        R, T = reduced[:, :M], reduced[:, M:]
        pivots = []
        for row in to_ints(R):
            nonzero = np.flatnonzero(row)
            if nonzero.size == 0:
                break
            pivots.append(int(nonzero[0]))
        return T, np.array(pivots, dtype=np.int64), len(pivots)


def rm_spec(
    base: FieldCtx,
    ell: int,
    m: int,
    n: int | None = None,
    points=None,
    basis_kind: BasisKind = "polynomial",
) -> RMSpec:
    """RMSpec on explicit points or on a prefix of the lexicographic full grid."""
    q = base.order
    if points is None:
        n = q**m if n is None else n
        if not 1 <= n <= q**m:
            raise SpecValidationError(f"need 1 <= n <= q^m = {q**m}, got n = {n}")
        points = full_grid_points(q, m)[:n]
    else:
        points = np.asarray(points, dtype=np.int64).reshape(-1, m)
        n = points.shape[0] if n is None else n
    em = make_extension(base, m, basis_kind)
    return RMSpec(base=base, ell=ell, m=m, n=n, points=points, em=em)


@dataclass(frozen=True, eq=False)
class RMDecodeEntry:
    """An RM list-decoding result.

    Attributes:
        codeword (Word): the codeword over GF(q)
        message (MultiPoly): reduced polynomial evaluating to the codeword
        distance (int): Hamming distance to the received word
    """

    codeword: Word
    message: MultiPoly
    distance: int

    def sort_key(self) -> tuple:
        return (self.distance, tuple(to_ints(self.codeword).tolist()))


def _check_word(spec: RMSpec, v: Word) -> None:
    spec.base.check(v)
    if v.shape != (spec.n,):
        raise SpecValidationError(f"expected a word of length {spec.n}, got shape {v.shape}")


def rm_encode(spec: RMSpec, phi: MultiPoly) -> Word:
    """Evaluate phi at the code's points.

    Raises:
        DegreeError: wrong field, arity, or total degree above l
    """
    if phi.ctx != spec.base:
        raise DegreeError("message polynomial is over the wrong field")
    if phi.m != spec.m:
        raise DegreeError(f"message has {phi.m} variables, the code needs {spec.m}")
    if phi.total_degree > spec.ell:
        raise DegreeError(f"total degree {phi.total_degree} exceeds l = {spec.ell}")
    return phi.evaluate(spec.points)


def rm_membership(spec: RMSpec, v: Word) -> MultiPoly | None:
    """Reduced polynomial of total degree <= l evaluating to v, or None."""
    _check_word(spec, v)
    T, pivots, rank = spec.membership_system
    y = T @ v
    if np.any(to_ints(y[rank:])):
        return None
    terms = {spec.basis_monomials[col]: int(y[k]) for k, col in enumerate(pivots)}
    return MultiPoly(spec.base, spec.m, terms)


def subfield_check(em: ExtensionMap, c: galois.FieldArray) -> Word | None:
    """The GF(q) word behind c when every symbol is Frobenius-fixed, else None."""
    if not np.all(em.in_subfield(c)):
        return None
    return em.unembed(c)


def rm_radius(q: int, ell: int, m: int, n: int) -> int:
    """t = ceil(n * (1 - sqrt(l * q^(m-1) / n))), exactly."""
    return n - isqrt(ell * q ** (m - 1) * n)


def rm_list_decode_pw(spec: RMSpec, r: Word) -> list[RMDecodeEntry]:
    """Every RM codeword at distance < t from r, with its message.

    Args:
        spec (RMSpec): the code
        r (Word): received word over GF(q)

    Raises:
        RadiusUnachievableError: from the Reed-Solomon layer

    Returns:
        list[RMDecodeEntry]: sorted by distance, then by codeword encoding
    """
    _check_word(spec, r)
    t = rm_radius(spec.q, spec.ell, spec.m, spec.n)
    logger.info(
        "lifting decoder q=%d l=%d m=%d n=%d: t=%d", spec.q, spec.ell, spec.m, spec.n, t
    )
    if t <= 0:
        logger.warning("radius t=%d leaves nothing to decode for n=%d", t, spec.n)
        return []

    lifted = rs_spec(spec.em.ext, spec.n, spec.lifted_w, spec.lifted_points)
    candidates = gs_list_decode(lifted, spec.em.embed(r), t - 1)

    found = []
    for entry in candidates:
        word = subfield_check(spec.em, entry.codeword)
        if word is None:
            continue
        phi = rm_membership(spec, word)
        if phi is None:
            continue
        found.append(RMDecodeEntry(word, phi, entry.distance))
    logger.debug("%d of %d lifted candidates survive", len(found), len(candidates))
    return sorted(found, key=RMDecodeEntry.sort_key)


def _tensor_interpolate(base: FieldCtx, m: int, c: Word) -> MultiPoly:
    """Per-variable-degree <= q-1 polynomial through the values c on the full grid."""
    q = base.order
    vandermonde = base.GF(np.stack([to_ints(base.elements**j) for j in range(q)], axis=1))
    inverse = np.linalg.inv(vandermonde)
    coeffs = c.reshape((q,) * m)
    for axis in range(m):
        moved = np.moveaxis(coeffs, axis, 0)
        shape = moved.shape
        solved = (inverse @ moved.reshape(q, -1)).reshape(shape)
        coeffs = np.moveaxis(solved, 0, axis)
    codes = to_ints(coeffs)
    terms = {tuple(int(i) for i in idx): int(codes[tuple(idx)]) for idx in np.argwhere(codes != 0)}
    return MultiPoly(base, m, terms)


def rm_message_recover(spec: RMSpec, c: Word) -> MultiPoly:
    """Reduced polynomial reproducing the codeword c.

    Full-grid codes use tensor Lagrange interpolation; punctured codes go
    through the membership system.

    Raises:
        NotACodewordError: c is not in the code
    """
    _check_word(spec, c)
    if spec.is_full_grid:
        phi = _tensor_interpolate(spec.base, spec.m, c)
        if phi.total_degree > spec.ell:
            raise NotACodewordError(
                f"word interpolates to total degree {phi.total_degree} > l = {spec.ell}"
            )
        return phi
    phi = rm_membership(spec, c)
    if phi is None:
        raise NotACodewordError("word is not a codeword of the Reed-Muller code")
    return phi


def rm_codebook(spec: RMSpec) -> galois.FieldArray:
    """Every distinct codeword, one per row.

    Raises:
        EnumerationBudgetError: q^M above the configured budget
    """
    count = len(spec.basis_monomials)
    size = spec.q**count
    if size > settings.ENUMERATION_BUDGET:
        raise EnumerationBudgetError(
            f"{size} messages exceed the enumeration budget {settings.ENUMERATION_BUDGET}"
        )
    messages = spec.base(grid_points(spec.q, count))
    words = to_ints(messages @ spec.evaluation_matrix.T)
    return spec.base(np.unique(words, axis=0))
