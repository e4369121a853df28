"""Univariate, multivariate and bivariate polynomials over a FieldCtx.

Univariate polynomials are ``galois.Poly`` objects. Multivariate polynomials are
sparse maps from exponent vectors to nonzero coefficients. Bivariate polynomials
are the dense Q(X, Y) objects produced by Guruswami-Sudan interpolation.
"""

from collections.abc import Iterable, Mapping, Sequence
from functools import reduce
from math import comb
from types import MappingProxyType

import galois
import numpy as np

from app.algebra.field import ExtensionMap, FieldCtx, to_ints
from app.core.config import settings
from app.core.errors import (
    DegreeError,
    EnumerationBudgetError,
    FieldMismatchError,
    SpecValidationError,
)

UniPoly = galois.Poly
Exponents = tuple[int, ...]


def uni_degree(f: galois.Poly) -> int:
    """Degree of f, with -1 for the zero polynomial."""
    return -1 if f == 0 else int(f.degree)


def uni_coeffs(f: galois.Poly) -> list[int]:
    """Coefficient encodings low-to-high, empty for the zero polynomial."""
    if f == 0:
        return []
    return to_ints(f.coeffs[::-1]).tolist()


def uni_from_coeffs(ctx: FieldCtx, coeffs: Sequence[int]) -> galois.Poly:
    """Build a univariate polynomial from coefficient encodings low-to-high."""
    if len(coeffs) == 0:
        return galois.Poly.Zero(field=ctx.GF)
    return galois.Poly(ctx(list(coeffs)), order="asc")


def uni_eval(f: galois.Poly, x: galois.FieldArray) -> galois.FieldArray:
    """Evaluate f at x (Horner, vectorised over arrays of x).

    Raises:
        FieldMismatchError: f and x live in different fields
    """
    if type(x) is not f.field:
        raise FieldMismatchError("polynomial and point belong to different fields")
    return f(x)


def lagrange_interpolate(points: Sequence[tuple[galois.FieldArray, galois.FieldArray]]) -> galois.Poly:
    """The unique polynomial of degree < len(points) through the given points.

    Args:
        points (Sequence[tuple]): (x, y) pairs with pairwise distinct x

    Raises:
        SpecValidationError: empty input or duplicate x-coordinate
        FieldMismatchError: coordinates from different fields

    Returns:
        galois.Poly: the interpolating polynomial
    """
    if len(points) == 0:
        raise SpecValidationError("cannot interpolate through zero points")
    field = type(points[0][0])
    if any(type(x) is not field or type(y) is not field for x, y in points):
        raise FieldMismatchError("interpolation points belong to different fields")
    xs = field([int(x) for x, _ in points])
    ys = field([int(y) for _, y in points])
    if len(np.unique(to_ints(xs))) != len(xs):
        raise SpecValidationError("interpolation x-coordinates must be pairwise distinct")
    if len(points) == 1:
        return galois.Poly(ys, order="asc")
    return galois.lagrange_poly(xs, ys)


def grid_points(order: int, m: int) -> np.ndarray:
    """All of GF(q)^m as encodings, lexicographic with the first coordinate slowest.

    Returns:
        np.ndarray: (q^m, m) integer array
    """
    return np.indices((order,) * m, dtype=np.int64).reshape(m, -1).T


def monomials(m: int, max_total: int, max_var: int | None = None) -> list[Exponents]:
    """Exponent vectors with total degree <= max_total, optionally capped per variable.

    Ordered by total degree, then lexicographically.
    """
    cap = max_total if max_var is None else min(max_var, max_total)
    found = [
        tuple(int(v) for v in exps)
        for exps in np.indices((cap + 1,) * m).reshape(m, -1).T
        if sum(exps) <= max_total
    ]
    return sorted(found, key=lambda exps: (sum(exps), exps))


class MultiPoly:
    """Sparse multivariate polynomial over a FieldCtx.

    Attributes:
        ctx (FieldCtx): coefficient field
        m (int): number of variables
        terms (Mapping[Exponents, int]): exponent vector -> nonzero coefficient encoding
    """

    def __init__(self, ctx: FieldCtx, m: int, terms: Mapping[Exponents, object] | None = None):
        if m < 1:
            raise SpecValidationError(f"a multivariate polynomial needs m >= 1, got {m}")
        self.ctx = ctx
        self.m = m
        cleaned: dict[Exponents, int] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(v) for v in exps)
            if len(exps) != m or any(v < 0 for v in exps):
                raise SpecValidationError(f"bad exponent vector {exps} for {m} variables")
            if isinstance(coeff, galois.FieldArray):
                ctx.check(coeff)
            value = int(ctx(int(coeff)))
            if value:
                cleaned[exps] = value
        self._terms = cleaned

    @classmethod
    def zero(cls, ctx: FieldCtx, m: int) -> "MultiPoly":
        return cls(ctx, m)

    @classmethod
    def constant(cls, ctx: FieldCtx, m: int, value) -> "MultiPoly":
        return cls(ctx, m, {(0,) * m: value})

    @classmethod
    def variable(cls, ctx: FieldCtx, m: int, j: int) -> "MultiPoly":
        """The polynomial x_j (0-based j)."""
        exps = [0] * m
        exps[j] = 1
        return cls(ctx, m, {tuple(exps): 1})

    @property
    def terms(self) -> Mapping[Exponents, int]:
        return MappingProxyType(self._terms)

    def coeff(self, exps: Exponents) -> galois.FieldArray:
        return self.ctx(self._terms.get(tuple(exps), 0))

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def total_degree(self) -> int:
        """Maximum total degree over the stored terms, -1 for zero."""
        return max((sum(exps) for exps in self._terms), default=-1)

    def degree_in(self, j: int) -> int:
        """Degree in variable x_j (0-based), -1 for zero."""
        return max((exps[j] for exps in self._terms), default=-1)

    def __repr__(self) -> str:
        if not self._terms:
            return f"MultiPoly(0 over GF({self.ctx.order}), m={self.m})"
        body = " + ".join(f"{c}*x^{list(e)}" for e, c in sorted(self._terms.items()))
        return f"MultiPoly({body} over GF({self.ctx.order}))"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.m == other.m and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ctx, self.m, frozenset(self._terms.items())))

    def _check_compatible(self, other: "MultiPoly") -> None:
        if self.ctx != other.ctx or self.m != other.m:
            raise FieldMismatchError("polynomials belong to different rings")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        terms = {e: self.ctx(c) for e, c in self._terms.items()}
        for exps, c in other._terms.items():
            terms[exps] = terms.get(exps, self.ctx.zero) + self.ctx(c)
        return MultiPoly(self.ctx, self.m, terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ctx, self.m, {e: -self.ctx(c) for e, c in self._terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        terms: dict[Exponents, galois.FieldArray] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                terms[exps] = terms.get(exps, self.ctx.zero) + self.ctx(c1) * self.ctx(c2)
        return MultiPoly(self.ctx, self.m, terms)

    def scale(self, value: galois.FieldArray) -> "MultiPoly":
        self.ctx.check(value)
        return MultiPoly(self.ctx, self.m, {e: value * self.ctx(c) for e, c in self._terms.items()})

    def evaluate(self, points) -> galois.FieldArray:
        """Evaluate at an (n, m) array of points (encodings or field elements)."""
        if isinstance(points, galois.FieldArray):
            self.ctx.check(points)
            pts = points
        else:
            pts = self.ctx(np.asarray(points, dtype=np.int64))
        if pts.ndim != 2 or pts.shape[1] != self.m:
            raise SpecValidationError(f"expected an (n, {self.m}) point array, got {pts.shape}")
        result = self.ctx.GF.Zeros(pts.shape[0])
        for exps, c in self._terms.items():
            term = self.ctx.GF.Ones(pts.shape[0]) * self.ctx(c)
            for j, power in enumerate(exps):
                if power:
                    term = term * pts[:, j] ** power
            result = result + term
        return result


def multi_eval(phi: MultiPoly, x) -> galois.FieldArray:
    """Evaluate phi at one point of GF(q)^m.

    Raises:
        SpecValidationError: the point does not have m coordinates
    """
    point = x if isinstance(x, galois.FieldArray) else np.asarray(x, dtype=np.int64)
    if point.shape != (phi.m,):
        raise SpecValidationError(f"expected {phi.m} coordinates, got shape {point.shape}")
    return phi.evaluate(point.reshape(1, phi.m))[0]


def reduce_functional(phi: MultiPoly, q: int) -> MultiPoly:
    """Replace every x_j^q by x_j until all exponents are at most q-1.

    The result agrees with phi as a function on GF(q)^m.
    """

    def reduced(power: int) -> int:
        return 0 if power == 0 else (power - 1) % (q - 1) + 1

    terms: dict[Exponents, galois.FieldArray] = {}
    for exps, c in phi.terms.items():
        key = tuple(reduced(v) for v in exps)
        terms[key] = terms.get(key, phi.ctx.zero) + phi.ctx(c)
    return MultiPoly(phi.ctx, phi.m, terms)


def lift_poly(em: ExtensionMap, phi: MultiPoly) -> galois.Poly:
    """Lift phi over GF(q) to f over GF(q^m) with f(psi(x)) = phi(x).

    f(X) = sum phi_i * prod_j mu_j(X)^(i_j), of degree at most deg(phi) * q^(m-1).

    Raises:
        FieldMismatchError: phi is not over the base field of em
        DegreeError: wrong arity or total degree above q

    Returns:
        galois.Poly: the lifted polynomial
    """
    if phi.ctx != em.base:
        raise FieldMismatchError("polynomial is not over the base field of the extension")
    if phi.m != em.m:
        raise DegreeError(f"polynomial has {phi.m} variables, the extension needs {em.m}")
    if phi.total_degree > em.q:
        raise DegreeError(
            f"total degree {phi.total_degree} exceeds q = {em.q}; the embedding needs l <= q"
        )

    field = em.ext.GF
    powers: dict[tuple[int, int], galois.Poly] = {}

    def mu_power(j: int, k: int) -> galois.Poly:
        if (j, k) not in powers:
            powers[(j, k)] = em.mu[j] ** k
        return powers[(j, k)]

    f = galois.Poly.Zero(field=field)
    for exps, c in phi.terms.items():
        term = galois.Poly(em.embed([c]), order="asc")
        for j, k in enumerate(exps):
            if k:
                term = term * mu_power(j, k)
        f = f + term
    return f


def count_zeros(phi: MultiPoly, q: int) -> int:
    """Number of points of GF(q)^m where phi vanishes.

    Raises:
        EnumerationBudgetError: q^m above the configured enumeration budget
    """
    volume = q**phi.m
    if volume > settings.ENUMERATION_BUDGET:
        raise EnumerationBudgetError(
            f"{volume} points exceed the enumeration budget {settings.ENUMERATION_BUDGET}"
        )
    values = phi.evaluate(grid_points(q, phi.m))
    return int(np.count_nonzero(to_ints(values) == 0))


def random_multipoly(
    ctx: FieldCtx,
    m: int,
    max_total_degree: int,
    rng: np.random.Generator,
    support_size: int | None = None,
    max_var_degree: int | None = None,
) -> MultiPoly:
    """Seeded random polynomial with uniform nonzero coefficients on a random support.

    Args:
        ctx (FieldCtx): coefficient field
        m (int): number of variables
        max_total_degree (int): bound on the total degree
        rng (np.random.Generator): random source
        support_size (int | None): number of terms; uniform in 1..#monomials
            when None. Defaults to None.
        max_var_degree (int | None): per-variable exponent cap. Defaults to None.

    Returns:
        MultiPoly: a nonzero polynomial
    """
    candidates = monomials(m, max_total_degree, max_var_degree)
    size = support_size or int(rng.integers(1, len(candidates) + 1))
    size = min(size, len(candidates))
    chosen = rng.choice(len(candidates), size=size, replace=False)
    coeffs = rng.integers(1, ctx.order, size=size)
    return MultiPoly(ctx, m, {candidates[i]: int(c) for i, c in zip(chosen, coeffs)})


def _taylor_shift(rows: galois.FieldArray, gamma: galois.FieldArray) -> galois.FieldArray:
    """Given rows[b] = coefficient of Z^b, return the rows of the shift Z -> Z + gamma."""
    field = type(rows)
    p = field.characteristic
    shifted = field.Zeros(rows.shape)
    gamma_powers = [gamma**k for k in range(rows.shape[0])]
    for b in range(rows.shape[0]):
        if not np.any(rows[b]):
            continue
        for target in range(b + 1):
            factor = field(comb(b, target) % p) * gamma_powers[b - target]
            shifted[target] = shifted[target] + factor * rows[b]
    return shifted


class BivariatePoly:
    """Dense Q(X, Y) = sum_b q_b(X) Y^b.

    Attributes:
        coeffs (galois.FieldArray): coeffs[b, a] is the coefficient of X^a Y^b
    """

    def __init__(self, coeffs: galois.FieldArray):
        field = type(coeffs)
        if coeffs.ndim != 2:
            raise SpecValidationError("bivariate coefficients must be a 2-D array")
        nonzero = np.argwhere(to_ints(coeffs) != 0)
        if nonzero.size == 0:
            self.coeffs = field.Zeros((1, 1))
        else:
            rows, cols = nonzero.max(axis=0) + 1
            self.coeffs = coeffs[:rows, :cols].copy()

    @classmethod
    def from_terms(cls, field: type[galois.FieldArray], terms: Mapping[tuple[int, int], int]) -> "BivariatePoly":
        """Build from {(a, b): coefficient of X^a Y^b}."""
        if not terms:
            return cls(field.Zeros((1, 1)))
        xdeg = max(a for a, _ in terms)
        ydeg = max(b for _, b in terms)
        coeffs = field.Zeros((ydeg + 1, xdeg + 1))
        for (a, b), c in terms.items():
            coeffs[b, a] = c
        return cls(coeffs)

    @classmethod
    def from_rows(cls, rows: Sequence[galois.Poly]) -> "BivariatePoly":
        """Build sum_b rows[b](X) Y^b."""
        field = rows[0].field
        width = max(uni_degree(r) for r in rows) + 1
        coeffs = field.Zeros((len(rows), max(width, 1)))
        for b, row in enumerate(rows):
            if row != 0:
                c = row.coeffs[::-1]
                coeffs[b, : c.size] = c
        return cls(coeffs)

    @property
    def field(self) -> type[galois.FieldArray]:
        return type(self.coeffs)

    def is_zero(self) -> bool:
        return not np.any(to_ints(self.coeffs))

    @property
    def y_degree(self) -> int:
        return -1 if self.is_zero() else self.coeffs.shape[0] - 1

    def weighted_degree(self, w: int) -> int:
        """(1, w)-weighted degree, -1 for zero."""
        nonzero = np.argwhere(to_ints(self.coeffs) != 0)
        if nonzero.size == 0:
            return -1
        return int(max(a + w * b for b, a in nonzero))

    def row(self, b: int) -> galois.Poly:
        """q_b(X)."""
        return galois.Poly(self.coeffs[b], order="asc")

    def at_x_zero(self) -> galois.Poly:
        """Q(0, Y) as a polynomial in Y."""
        return galois.Poly(self.coeffs[:, 0], order="asc")

    def strip_x(self) -> "BivariatePoly":
        """Divide by the largest power of X dividing Q."""
        if self.is_zero():
            return self
        cols = np.flatnonzero(np.any(to_ints(self.coeffs) != 0, axis=0))
        return BivariatePoly(self.coeffs[:, cols[0] :])

    def shift(self, x0: galois.FieldArray, y0: galois.FieldArray) -> "BivariatePoly":
        """Q(X + x0, Y + y0)."""
        shifted_y = _taylor_shift(self.coeffs, y0)
        shifted_xy = _taylor_shift(shifted_y.T.copy(), x0).T.copy()
        return BivariatePoly(shifted_xy)

    def shift_y(self, gamma: galois.FieldArray) -> "BivariatePoly":
        """Q(X, Y + gamma)."""
        return BivariatePoly(_taylor_shift(self.coeffs, gamma))

    def scale_y_by_x(self) -> "BivariatePoly":
        """Q(X, X*Y): the coefficient of X^a Y^b moves to X^(a+b) Y^b."""
        ydeg, width = self.coeffs.shape
        out = self.field.Zeros((ydeg, width + ydeg - 1))
        for b in range(ydeg):
            out[b, b : b + width] = self.coeffs[b]
        return BivariatePoly(out)

    def min_total_degree(self) -> int:
        """Smallest a + b over nonzero terms, -1 for zero."""
        nonzero = np.argwhere(to_ints(self.coeffs) != 0)
        if nonzero.size == 0:
            return -1
        return int(min(a + b for b, a in nonzero))

    def substitute(self, f: galois.Poly) -> galois.Poly:
        """Q(X, f(X)) by Horner's rule in Y."""
        rows = [self.row(b) for b in range(self.coeffs.shape[0])]
        return reduce(lambda acc, r: acc * f + r, reversed(rows[:-1]), rows[-1])

    def evaluate(self, x: galois.FieldArray, y: galois.FieldArray) -> galois.FieldArray:
        return self.substitute(galois.Poly(type(y)([int(y)]), order="asc"))(x)


def multipoly_terms(phi: MultiPoly) -> Iterable[tuple[Exponents, int]]:
    """Terms in a deterministic order (total degree, then lexicographic)."""
    return sorted(phi.terms.items(), key=lambda item: (sum(item[0]), item[0]))
