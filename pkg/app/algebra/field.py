"""Finite fields GF(p^e) and the GF(q)^m <-> GF(q^m) coordinate isomorphism.

Field elements are ``galois.FieldArray`` values. The integer behind an element is
its canonical encoding: the base-p digits of the integer are the coefficients of
the element's polynomial representation, lowest degree first.
"""

from collections.abc import Sequence
from typing import Literal

import galois
import numpy as np

from app.app_logging import logger
from app.core.config import settings
from app.core.errors import (
    ExtensionConsistencyError,
    FieldError,
    FieldMismatchError,
    SingularBasisError,
)

Elem = galois.FieldArray
BasisKind = Literal["polynomial", "normal"] | Sequence[int]

ARITH_OPS = ("add", "sub", "mul", "div", "pow", "inv", "neg")


def to_ints(values: galois.FieldArray) -> np.ndarray:
    """Return the canonical integer encodings of field elements.

    Args:
        values (galois.FieldArray): field elements of any shape

    Returns:
        np.ndarray: int64 array of the same shape
    """
    return np.asarray(values.view(np.ndarray), dtype=np.int64)


class FieldCtx:
    """A concrete finite field GF(p^e) with a fixed modulus polynomial.

    Attributes:
        p (int): characteristic
        e (int): extension degree over GF(p)
        modulus (tuple[int, ...]): monic irreducible modulus, coefficients low-to-high
        order (int): number of elements, p^e
        GF (type[galois.FieldArray]): the galois field class backing the arithmetic
    """

    def __init__(self, p: int, e: int, modulus: Sequence[int]):
        self.p = p
        self.e = e
        self.modulus = tuple(int(c) for c in modulus)
        self.order = p**e
        # galois has no lookup tables for GF(2)
        compile_mode = (
            "jit-lookup"
            if 2 < self.order <= settings.LOOKUP_MAX_ORDER
            else "jit-calculate"
        )
        if e == 1:
            self.GF = galois.GF(p, compile=compile_mode)
        else:
            irreducible = galois.Poly(self.modulus[::-1], field=galois.GF(p))
            self.GF = galois.GF(
                self.order, irreducible_poly=irreducible, compile=compile_mode
            )

    def __call__(self, values) -> galois.FieldArray:
        """Lift integer encodings (scalars or arrays) into the field."""
        try:
            return self.GF(values)
        except (ValueError, TypeError) as exc:
            raise FieldError(f"{values!r} is not a valid element of {self}") from exc

    def __repr__(self) -> str:
        return f"FieldCtx(GF({self.p}^{self.e}), modulus={list(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldCtx) and (
            (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    @property
    def zero(self) -> galois.FieldArray:
        return self.GF(0)

    @property
    def one(self) -> galois.FieldArray:
        return self.GF(1)

    @property
    def elements(self) -> galois.FieldArray:
        """All field elements in ascending encoding order."""
        return self.GF.elements

    def owns(self, value: galois.FieldArray) -> bool:
        return type(value) is self.GF

    def check(self, *values: galois.FieldArray) -> None:
        """Reject values that do not belong to this field.

        Raises:
            FieldMismatchError: if any value belongs to another field
        """
        for value in values:
            if not self.owns(value):
                raise FieldMismatchError(
                    f"element {value!r} does not belong to GF({self.p}^{self.e})"
                )


def make_field(p: int, e: int, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Build GF(p^e).

    Without an explicit modulus the smallest monic irreducible polynomial of
    degree e is used (smallest integer representation, i.e. lexicographic on the
    coefficients from the leading term down).

    Args:
        p (int): prime characteristic
        e (int): extension degree, at least 1
        modulus (Sequence[int] | None): e+1 coefficients low-to-high.
            Defaults to None.

    Raises:
        FieldError: non-prime p, bad degree, or a reducible / malformed modulus

    Returns:
        FieldCtx: the field
    """
    if not isinstance(p, int) or p < 2 or not galois.is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if not isinstance(e, int) or e < 1:
        raise FieldError(f"extension degree {e} must be a positive integer")

    if modulus is None:
        if e == 1:
            modulus = (0, 1)
        else:
            poly = galois.irreducible_poly(p, e, method="min")
            modulus = tuple(int(c) for c in poly.coeffs[::-1])
    else:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != e + 1:
            raise FieldError(f"modulus {list(modulus)} must have degree exactly {e}")
        if any(c < 0 or c >= p for c in modulus):
            raise FieldError(f"modulus coefficients {list(modulus)} must lie in [0, {p})")
        if modulus[-1] != 1:
            raise FieldError(f"modulus {list(modulus)} is not monic")
        if e > 1 and not galois.Poly(modulus[::-1], field=galois.GF(p)).is_irreducible():
            raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")

    return FieldCtx(p, e, modulus)


def field_for_order(q: int) -> FieldCtx:
    """GF(q) with its default modulus.

    Raises:
        FieldError: q is not a prime power
    """
    if not isinstance(q, int) or q < 2 or not galois.is_prime_power(q):
        raise FieldError(f"field order {q} is not a prime power")
    primes, exponents = galois.factors(q)
    return make_field(int(primes[0]), int(exponents[0]))


def arith(op: str, a: galois.FieldArray, b: galois.FieldArray | int | None = None):
    """Apply one field operation.

    Args:
        op (str): one of add, sub, mul, div, pow, inv, neg
        a (galois.FieldArray): left operand
        b (galois.FieldArray | int | None): right operand, an integer exponent for
            pow, unused for inv and neg

    Raises:
        FieldMismatchError: operands from different fields
        ZeroDivisionError: division by zero or inverse of zero

    Returns:
        galois.FieldArray: the result
    """
    if op not in ARITH_OPS:
        raise FieldError(f"unknown field operation {op!r}")
    if not isinstance(a, galois.FieldArray):
        raise FieldMismatchError(f"{a!r} is not a field element")

    if op == "neg":
        return -a
    if op == "inv":
        if np.any(a == 0):
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return np.reciprocal(a)
    if op == "pow":
        exponent = int(b)
        if exponent < 0:
            if np.any(a == 0):
                raise ZeroDivisionError("negative power of zero")
            return np.reciprocal(a) ** -exponent
        return a**exponent

    if type(b) is not type(a):
        raise FieldMismatchError(f"cannot {op} elements of different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if np.any(b == 0):
        raise ZeroDivisionError("division by zero")
    return a / b


def frobenius(x: galois.FieldArray, i: int, q: int) -> galois.FieldArray:
    """Return x^(q^i), the i-th power of the q-Frobenius map.

    Args:
        x (galois.FieldArray): element(s) of GF(q^m)
        i (int): non-negative iterate
        q (int): order of the base field

    Returns:
        galois.FieldArray: x^(q^i)
    """
    if i < 0:
        raise FieldError(f"Frobenius iterate {i} must be non-negative")
    return x ** (q**i)


def primitive_element(ctx: FieldCtx) -> galois.FieldArray:
    """Smallest-encoding primitive element of the field."""
    for value in range(1, ctx.order):
        candidate = ctx(value)
        if int(candidate.multiplicative_order()) == ctx.order - 1:
            return candidate
    raise FieldError(f"{ctx} has no primitive element")  # unreachable for a field


def frobenius_matrix(basis: galois.FieldArray, q: int) -> galois.FieldArray:
    """Matrix whose row i holds the basis raised to q^i."""
    m = basis.size
    field = type(basis)
    rows = [to_ints(basis ** (q**i)) for i in range(m)]
    return field(np.stack(rows))


def is_vandermonde(matrix: galois.FieldArray) -> bool:
    """Whether the matrix is a Vandermonde matrix in either orientation.

    A matrix qualifies when its first column is all ones and column j is the
    j-th power of column 1, or the same holds for its transpose.
    """

    def columns_are_powers(mat: galois.FieldArray) -> bool:
        if mat.shape[1] < 2:
            return bool(np.all(mat[:, 0] == 1))
        nodes = mat[:, 1]
        return all(np.array_equal(mat[:, j], nodes**j) for j in range(mat.shape[1]))

    return columns_are_powers(matrix) or columns_are_powers(matrix.T)


def null_space_basis(matrix: galois.FieldArray) -> galois.FieldArray:
    """Rows spanning {v : matrix @ v == 0}, one per free column of the RREF.

    Returns:
        galois.FieldArray: (ncols - rank, ncols) array, possibly with zero rows
    """
    field = type(matrix)
    ncols = matrix.shape[1]
    reduced = matrix.row_reduce() if matrix.shape[0] else matrix
    pivots: list[int] = []
    for row in to_ints(reduced):
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            break
        pivots.append(int(nonzero[0]))
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = field.Zeros((len(free), ncols))
    for i, col in enumerate(free):
        basis[i, col] = 1
        for r, pivot in enumerate(pivots):
            basis[i, pivot] = -reduced[r, col]
    return basis


class ExtensionMap:
    """The tower GF(q) < GF(q^m) with a chosen GF(q)-basis of GF(q^m).

    Attributes:
        base (FieldCtx): GF(q)
        ext (FieldCtx): GF(q^m), built as GF(p^(e*m))
        m (int): extension degree
        q (int): order of the base field
        basis (galois.FieldArray): a_1..a_m in GF(q^m)
        A (galois.FieldArray): m x m Frobenius matrix, A[i, j] = a_j^(q^i)
        A_inv (galois.FieldArray): inverse of A
        mu (tuple[galois.Poly, ...]): coordinate polynomials, mu_j(psi(x)) = x_j
        embed_table (np.ndarray): encoding of embed(c) for every base encoding c
        unembed_table (np.ndarray): inverse of embed_table, -1 outside the subfield
    """

    def __init__(
        self,
        base: FieldCtx,
        ext: FieldCtx,
        m: int,
        basis: galois.FieldArray,
        embed_table: np.ndarray,
    ):
        self.base = base
        self.ext = ext
        self.m = m
        self.q = base.order
        self.basis = basis
        self.embed_table = embed_table
        self.unembed_table = np.full(ext.order, -1, dtype=np.int64)
        self.unembed_table[embed_table] = np.arange(base.order)

        self.A = frobenius_matrix(basis, self.q)
        if np.linalg.det(self.A) == 0:
            raise SingularBasisError(
                f"basis {to_ints(basis).tolist()} is linearly dependent over "
                f"GF({self.q}): its Frobenius matrix is singular"
            )
        self.A_inv = np.linalg.inv(self.A)

        top = self.q ** (m - 1)
        mu = []
        for j in range(m):
            coeffs = ext.GF.Zeros(top + 1)
            for i in range(m):
                coeffs[self.q**i] = self.A_inv[j, i]
            mu.append(galois.Poly(coeffs, order="asc"))
        self.mu = tuple(mu)

    def __repr__(self) -> str:
        return (
            f"ExtensionMap(GF({self.q}) -> GF({self.ext.order}), "
            f"basis={to_ints(self.basis).tolist()})"
        )

    def embed(self, values) -> galois.FieldArray:
        """Map base-field elements (or their encodings) into GF(q^m)."""
        codes = _as_codes(values, self.base)
        return self.ext(self.embed_table[codes])

    def unembed(self, values: galois.FieldArray) -> galois.FieldArray:
        """Map subfield elements of GF(q^m) back to GF(q).

        Raises:
            FieldError: if some value lies outside the embedded GF(q)
        """
        self.ext.check(values)
        codes = self.unembed_table[to_ints(values)]
        if np.any(codes < 0):
            raise FieldError("element outside the embedded base field")
        return self.base(codes)

    def in_subfield(self, values: galois.FieldArray) -> np.ndarray:
        """Frobenius fixed-point test, X^q == X, elementwise."""
        self.ext.check(values)
        return np.asarray(frobenius(values, 1, self.q) == values)


def _as_codes(values, ctx: FieldCtx) -> np.ndarray:
    if isinstance(values, galois.FieldArray):
        ctx.check(values)
        return to_ints(values)
    codes = np.asarray(values, dtype=np.int64)
    if np.any(codes < 0) or np.any(codes >= ctx.order):
        raise FieldError(f"encodings {codes.tolist()} are outside GF({ctx.order})")
    return codes


def _embedding_table(base: FieldCtx, ext: FieldCtx) -> np.ndarray:
    """Encodings in ext of every base element under the tower embedding.

    The base generator x is sent to the smallest root of the base modulus in
    ext; an element with base-p digits c_i maps to sum c_i * root^i.
    """
    if base.e == 1:
        return np.arange(base.p, dtype=np.int64)

    modulus = galois.Poly(base.modulus[::-1], field=ext.GF)
    elements = ext.elements
    roots = elements[modulus(elements) == 0]
    if roots.size == 0:
        raise ExtensionConsistencyError(f"base modulus has no root in {ext}")
    root = roots[0]

    powers = ext.GF([int(root**i) for i in range(base.e)])
    digits = np.array(
        [[(c // base.p**i) % base.p for i in range(base.e)] for c in range(base.order)],
        dtype=np.int64,
    )
    return to_ints(ext(digits) @ powers)


def make_extension(base: FieldCtx, m: int, basis_kind: BasisKind = "polynomial") -> ExtensionMap:
    """Construct GF(q^m) over GF(q) together with its coordinate machinery.

    Args:
        base (FieldCtx): GF(q)
        m (int): extension degree
        basis_kind (BasisKind): "polynomial" for {1, xi, ..., xi^(m-1)} with xi the
            smallest primitive element, "normal" for {z, z^q, ..., z^(q^(m-1))} with
            z the smallest primitive element giving an invertible Frobenius matrix,
            or an explicit list of m encodings in GF(q^m). Defaults to "polynomial".

    Raises:
        SingularBasisError: the basis is dependent over GF(q)
        FieldError: malformed explicit basis

    Returns:
        ExtensionMap: the extension map
    """
    if m < 1:
        raise FieldError(f"extension degree {m} must be a positive integer")
    ext = make_field(base.p, base.e * m)
    table = _embedding_table(base, ext)
    q = base.order

    if isinstance(basis_kind, str) and basis_kind == "polynomial":
        xi = primitive_element(ext)
        basis = ext.GF([int(xi**j) for j in range(m)])
    elif isinstance(basis_kind, str) and basis_kind == "normal":
        basis = None
        for value in range(1, ext.order):
            zeta = ext(value)
            if int(zeta.multiplicative_order()) != ext.order - 1:
                continue
            candidate = ext.GF([int(zeta ** (q**i)) for i in range(m)])
            if np.linalg.det(frobenius_matrix(candidate, q)) != 0:
                basis = candidate
                break
        if basis is None:
            raise SingularBasisError(f"no primitive normal basis found for {ext}")
    elif isinstance(basis_kind, str):
        raise FieldError(f"unknown basis kind {basis_kind!r}")
    else:
        if len(basis_kind) != m:
            raise FieldError(f"explicit basis needs {m} elements, got {len(basis_kind)}")
        basis = ext(list(basis_kind))

    em = ExtensionMap(base, ext, m, basis, table)
    logger.debug("built %r", em)
    return em


def lift_point(em: ExtensionMap, x) -> galois.FieldArray:
    """psi: GF(q)^m -> GF(q^m), x -> sum_j a_j x_j.

    Args:
        em (ExtensionMap): extension map
        x: m base-field elements (or encodings)

    Raises:
        FieldError: wrong vector length

    Returns:
        galois.FieldArray: the lifted element
    """
    codes = _as_codes(x, em.base)
    if codes.shape != (em.m,):
        raise FieldError(f"expected a vector of {em.m} coordinates, got shape {codes.shape}")
    return em.ext(em.embed_table[codes]) @ em.basis


def lift_points(em: ExtensionMap, points) -> galois.FieldArray:
    """Vectorised psi over an (n, m) array of points."""
    codes = _as_codes(points, em.base)
    if codes.ndim != 2 or codes.shape[1] != em.m:
        raise FieldError(f"expected an (n, {em.m}) point array, got shape {codes.shape}")
    return em.ext(em.embed_table[codes]) @ em.basis


def unlift_point(em: ExtensionMap, X: galois.FieldArray) -> galois.FieldArray:
    """psi^-1: X -> A^-1 [X, X^q, ..., X^(q^(m-1))]^T.

    Raises:
        ExtensionConsistencyError: a coordinate falls outside the base field,
            which means the extension map is corrupted

    Returns:
        galois.FieldArray: the m base-field coordinates
    """
    em.ext.check(X)
    powers = em.ext.GF([int(frobenius(X, i, em.q)) for i in range(em.m)])
    coords = em.A_inv @ powers
    codes = em.unembed_table[to_ints(coords)]
    if np.any(codes < 0):
        raise ExtensionConsistencyError(
            f"unlift of {int(X)} left the base field: {to_ints(coords).tolist()}"
        )
    return em.base(codes)
