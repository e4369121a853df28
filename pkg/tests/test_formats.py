import pytest

from app.algebra.field import field_for_order, to_ints
from app.algebra.polynomial import MultiPoly, uni_coeffs
from app.core.errors import FieldError, SpecValidationError
from app.formats import (
    format_csv,
    format_field_record,
    format_multipoly,
    format_tensor,
    format_word,
    parse_field_record,
    parse_multipoly,
    parse_tensor,
    parse_unipoly,
    parse_word,
)


def test_field_record():
    ctx = field_for_order(8)
    assert format_field_record(ctx) == "2 3 1 1 0 1"
    assert parse_field_record("2 3 1 1 0 1  # GF(8)\n") == ctx


def test_field_record_reducible_modulus():
    with pytest.raises(FieldError):
        parse_field_record("2 2 1 0 1")


def test_multipoly_with_comments():
    ctx = field_for_order(4)
    text = "# message\n3 1 0\n1 0 2   # x2^2\n2 1 0\n"
    phi = parse_multipoly(text, ctx, 2)
    assert dict(phi.terms) == {(1, 0): 1, (0, 2): 1}
    assert parse_multipoly(format_multipoly(phi), ctx, 2) == phi


def test_multipoly_wrong_arity():
    with pytest.raises(SpecValidationError):
        parse_multipoly("1 1 1 1\n", field_for_order(4), 2)


def test_unipoly():
    assert uni_coeffs(parse_unipoly("3 1\n4\n", field_for_order(7))) == [3, 1, 4]


def test_word():
    ctx = field_for_order(5)
    word = parse_word("1\n2\n# skip\n3\n", ctx, 3)
    assert to_ints(word).tolist() == [1, 2, 3]
    assert format_word(word, "sent") == "# sent\n1\n2\n3\n"
    with pytest.raises(SpecValidationError):
        parse_word("1\n2\n", ctx, 3)
    with pytest.raises(SpecValidationError):
        parse_word("1\nx\n", ctx)


def test_word_symbol_outside_field():
    with pytest.raises(FieldError):
        parse_word("7\n", field_for_order(5))


class TestTensor:
    @staticmethod
    def test_shape() -> None:
        ctx = field_for_order(2)
        cube = parse_tensor("2 3\n0 1 0 1\n1 1 0 0\n", ctx)
        assert cube.shape == (2, 2, 2)
        assert format_tensor(cube, 2, 3) == "2 3\n0 1 0 1 1 1 0 0\n"

    @staticmethod
    def test_wrong_field() -> None:
        with pytest.raises(SpecValidationError):
            parse_tensor("3 1\n0 1 2\n", field_for_order(4))

    @staticmethod
    def test_wrong_count() -> None:
        with pytest.raises(SpecValidationError):
            parse_tensor("2 2\n0 1 1\n", field_for_order(2))


def test_csv_summary_line():
    text = format_csv(("weight", "success_rate"), [(1, 1.0), (2, 0.5)], summary="trials=2")
    assert text == "weight,success_rate\n1,1.0\n2,0.5\n# trials=2\n"


def test_multipoly_format_order():
    ctx = field_for_order(4)
    phi = MultiPoly(ctx, 2, {(1, 1): 2, (0, 0): 3, (1, 0): 1})
    assert format_multipoly(phi) == "3 0 0\n1 1 0\n2 1 1\n"
