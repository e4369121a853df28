"""Text file formats read and written by the command line.

* field record: ``p e c_0 ... c_e`` (modulus low-to-high)
* multivariate polynomial: one term per line, ``coeff i_1 ... i_m``
* univariate polynomial: coefficients low-to-high on one line
* word: one decimal symbol per line
* tensor word: header ``q m`` then q^m symbols, row-major

``#`` starts a comment everywhere.
"""

import csv
import io
from collections.abc import Iterable, Sequence

import galois
import numpy as np

from app.algebra.field import FieldCtx, make_field, to_ints
from app.algebra.polynomial import MultiPoly, multipoly_terms, uni_coeffs, uni_from_coeffs
from app.core.errors import SpecValidationError


def _tokens(text: str) -> list[list[str]]:
    """Non-empty lines split into tokens, comments removed."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line.split())
    return lines


def _ints(tokens: Iterable[str]) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise SpecValidationError(f"expected decimal integers: {exc}") from exc


def format_field_record(ctx: FieldCtx) -> str:
    return " ".join(str(v) for v in (ctx.p, ctx.e, *ctx.modulus))


def parse_field_record(text: str) -> FieldCtx:
    values = _ints(t for line in _tokens(text) for t in line)
    if len(values) < 2:
        raise SpecValidationError("a field record needs at least p and e")
    p, e, *modulus = values
    return make_field(p, e, modulus or None)


def format_multipoly(phi: MultiPoly) -> str:
    return "".join(f"{c} {' '.join(map(str, exps))}\n" for exps, c in multipoly_terms(phi))


def parse_multipoly(text: str, ctx: FieldCtx, m: int) -> MultiPoly:
    """Read ``coeff i_1 ... i_m`` lines; repeated monomials add up."""
    terms: dict[tuple[int, ...], galois.FieldArray] = {}
    for line in _tokens(text):
        values = _ints(line)
        if len(values) != m + 1:
            raise SpecValidationError(f"term line {' '.join(line)!r} needs 1 + {m} integers")
        coeff, *exps = values
        key = tuple(exps)
        terms[key] = terms.get(key, ctx.zero) + ctx(coeff)
    return MultiPoly(ctx, m, terms)


def format_unipoly(f: galois.Poly) -> str:
    return " ".join(map(str, uni_coeffs(f))) + "\n"


def parse_unipoly(text: str, ctx: FieldCtx) -> galois.Poly:
    return uni_from_coeffs(ctx, _ints(t for line in _tokens(text) for t in line))


def format_word(word: galois.FieldArray, comment: str | None = None) -> str:
    header = f"# {comment}\n" if comment else ""
    return header + "".join(f"{v}\n" for v in to_ints(word).reshape(-1))


def parse_word(text: str, ctx: FieldCtx, n: int | None = None) -> galois.FieldArray:
    values = _ints(t for line in _tokens(text) for t in line)
    if n is not None and len(values) != n:
        raise SpecValidationError(f"expected {n} symbols, read {len(values)}")
    return ctx(np.array(values, dtype=np.int64))


def format_tensor(word: galois.FieldArray, q: int, m: int) -> str:
    symbols = to_ints(word).reshape(-1)
    return f"{q} {m}\n" + " ".join(map(str, symbols)) + "\n"


def parse_tensor(text: str, ctx: FieldCtx) -> galois.FieldArray:
    """Read a tensor file into a (q,)*m array.

    Raises:
        SpecValidationError: header disagrees with the field or the symbol count
    """
    lines = _tokens(text)
    if not lines:
        raise SpecValidationError("empty tensor file")
    header = _ints(lines[0])
    if len(header) != 2:
        raise SpecValidationError("tensor header must be 'q m'")
    q, m = header
    if q != ctx.order:
        raise SpecValidationError(f"tensor is over GF({q}), expected GF({ctx.order})")
    values = _ints(t for line in lines[1:] for t in line)
    if len(values) != q**m:
        raise SpecValidationError(f"expected {q**m} symbols, read {len(values)}")
    return ctx(np.array(values, dtype=np.int64).reshape((q,) * m))


def format_decode_list(entries: Sequence) -> str:
    """Decoder output: one block per entry with distance, message and codeword.

    Entries are RS, RM or recursive-candidate results; fields an entry lacks are
    omitted from its block.
    """
    out = [f"# {len(entries)} entries\n"]
    for index, entry in enumerate(entries, 1):
        out.append(f"entry {index}\n")
        out.append(f"distance {entry.distance}\n")
        message = getattr(entry, "message", None)
        if isinstance(message, MultiPoly):
            for exps, c in multipoly_terms(message):
                out.append(f"term {c} {' '.join(map(str, exps))}\n")
        elif isinstance(message, galois.Poly):
            out.append(f"message {format_unipoly(message)}")
        if hasattr(entry, "in_code"):
            out.append(f"in_code {'yes' if entry.in_code else 'no'}\n")
            out.append("tuples " + " ".join("x".join(map(str, k)) for k in entry.tuples) + "\n")
        out.append("codeword " + " ".join(map(str, to_ints(entry.codeword).reshape(-1))) + "\n")
        out.append("\n")
    return "".join(out)


def format_csv(header: Sequence[str], rows: Iterable[Sequence], summary: str | None = None) -> str:
    """CSV with a header row and an optional trailing ``# summary`` line."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    if summary:
        buffer.write(f"# {summary}\n")
    return buffer.getvalue()
