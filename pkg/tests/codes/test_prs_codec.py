import numpy as np
import pytest

from app.algebra.field import field_for_order, to_ints
from app.algebra.polynomial import MultiPoly, random_multipoly
from app.codes.prs_codec import (
    RepetitionDecoder,
    RSLineDecoder,
    admissible_tuples,
    as_tensor,
    prs_decode_recursive,
    prs_encode,
    prs_list_decode_pw,
    prs_membership,
    prs_radius,
    prs_spec,
    product_decode_generic,
    rm_list_decode_recursive,
    tensor_slice,
)
from app.codes.rm_codec import rm_encode, rm_membership, rm_spec
from app.core.errors import DegreeError, SpecValidationError


@pytest.fixture(scope="module")
def gf4():
    return field_for_order(4)


@pytest.fixture(scope="module")
def gf16():
    return field_for_order(16)


def random_prs_codeword(spec, rng):
    terms = {}
    for _ in range(4):
        exps = tuple(int(rng.integers(0, k)) for k in spec.k)
        terms[exps] = int(rng.integers(1, spec.q))
    return prs_encode(spec, MultiPoly(spec.ctx, spec.m, terms))


def corrupt(ctx, cube, positions):
    values = to_ints(cube).copy().reshape(-1)
    values[positions] = (values[positions] + 1) % ctx.order
    return ctx(values).reshape(cube.shape)


class TestSpec:
    @staticmethod
    def test_properties(gf16) -> None:
        spec = prs_spec(gf16, 2, [4, 4])
        assert spec.n == 256
        assert spec.shape == (16, 16)
        assert spec.rates == (0.25, 0.25)
        assert spec.axis_radii == (8, 8)

    @staticmethod
    def test_dimension_out_of_range(gf4) -> None:
        with pytest.raises(SpecValidationError):
            prs_spec(gf4, 2, [0, 2])
        with pytest.raises(SpecValidationError):
            prs_spec(gf4, 2, [2])

    @staticmethod
    def test_radius(gf16) -> None:
        radius = prs_radius(prs_spec(gf16, 2, [4, 4]))
        assert radius.relative == pytest.approx(0.25)
        assert radius.weight == 64


class TestEncode:
    @staticmethod
    def test_lines_are_codewords(gf16) -> None:
        spec = prs_spec(gf16, 2, [4, 6])
        cube = random_prs_codeword(spec, np.random.default_rng(1))
        assert cube.shape == (16, 16)
        assert prs_membership(spec, cube)

    @staticmethod
    def test_axis_degree_checked(gf4) -> None:
        spec = prs_spec(gf4, 2, [2, 3])
        with pytest.raises(DegreeError):
            prs_encode(spec, MultiPoly(gf4, 2, {(2, 0): 1}))
        prs_encode(spec, MultiPoly(gf4, 2, {(1, 2): 1}))

    @staticmethod
    def test_corruption_breaks_membership(gf16) -> None:
        spec = prs_spec(gf16, 2, [4, 4])
        cube = random_prs_codeword(spec, np.random.default_rng(2))
        assert not prs_membership(spec, corrupt(gf16, cube, [17]))


def test_tensor_slice_writes_back(gf4):
    cube = gf4.GF.Zeros((4, 4, 4))
    view, key = tensor_slice(cube, {0: 2, 2: 1})
    assert view.shape == (4,)
    cube[key] = gf4([1, 2, 3, 1])
    assert to_ints(cube[2, :, 1]).tolist() == [1, 2, 3, 1]
    with pytest.raises(SpecValidationError):
        tensor_slice(cube, {3: 0})


def test_as_tensor_rejects_wrong_size(gf4):
    with pytest.raises(SpecValidationError):
        as_tensor(prs_spec(gf4, 2, [2, 2]), gf4.GF.Zeros(15))


class TestRecursiveDecoder:
    @staticmethod
    def test_corrects_scattered_errors(gf16) -> None:
        spec = prs_spec(gf16, 2, [4, 4])
        rng = np.random.default_rng(3)
        cube = random_prs_codeword(spec, rng)
        positions = rng.choice(256, size=40, replace=False)
        decoded = prs_decode_recursive(spec, corrupt(gf16, cube, positions))
        assert np.array_equal(decoded, cube)

    @staticmethod
    def test_codeword_is_fixed_point(gf16) -> None:
        spec = prs_spec(gf16, 2, [4, 4])
        cube = random_prs_codeword(spec, np.random.default_rng(4))
        assert np.array_equal(prs_decode_recursive(spec, cube), cube)

    @staticmethod
    def test_accepts_flat_word(gf16) -> None:
        spec = prs_spec(gf16, 2, [4, 4])
        cube = random_prs_codeword(spec, np.random.default_rng(5))
        assert np.array_equal(prs_decode_recursive(spec, cube.reshape(-1)), cube)

    @staticmethod
    def test_does_not_modify_input(gf16) -> None:
        spec = prs_spec(gf16, 2, [4, 4])
        cube = random_prs_codeword(spec, np.random.default_rng(6))
        received = corrupt(gf16, cube, [0, 1, 2])
        before = to_ints(received).copy()
        prs_decode_recursive(spec, received)
        assert np.array_equal(to_ints(received), before)

    @staticmethod
    def test_subcube_converse(gf16) -> None:
        spec = prs_spec(gf16, 2, [4, 4])
        zero = gf16.GF.Zeros((16, 16))
        received = zero.copy()
        received[:9, :9] = 1
        decoded = prs_decode_recursive(spec, received)
        assert not np.array_equal(decoded, zero)


class TestGenericDecoder:
    @staticmethod
    def test_repetition_product(gf4) -> None:
        decoders = [RepetitionDecoder(gf4, 5), RepetitionDecoder(gf4, 5)]
        received = gf4.GF.Ones((5, 5))
        received[0, 0] = 0
        received[3, 1] = 2
        received[2, 4] = 3
        decoded = product_decode_generic((5, 5), decoders, received)
        assert np.array_equal(decoded, gf4.GF.Ones((5, 5)))

    @staticmethod
    def test_failed_lines_left_unchanged(gf4) -> None:
        decoder = RepetitionDecoder(gf4, 4)
        assert decoder.decode(gf4([0, 1, 2, 3])) is None
        received = gf4([[0, 1], [2, 3]])
        decoded = product_decode_generic((2, 2), [RepetitionDecoder(gf4, 2)] * 2, received)
        assert np.array_equal(decoded, received)

    @staticmethod
    def test_matches_recursive_prs(gf16) -> None:
        spec = prs_spec(gf16, 2, [4, 4])
        rng = np.random.default_rng(8)
        cube = random_prs_codeword(spec, rng)
        received = corrupt(gf16, cube, rng.choice(256, size=30, replace=False))
        decoders = [RSLineDecoder(axis) for axis in spec.axis_specs]
        generic = product_decode_generic(spec.shape, decoders, received)
        assert np.array_equal(generic, prs_decode_recursive(spec, received))

    @staticmethod
    def test_shape_mismatch(gf4) -> None:
        with pytest.raises(SpecValidationError):
            product_decode_generic((4, 4), [RepetitionDecoder(gf4, 4)] * 2, gf4.GF.Zeros((4, 5)))


class TestListDecodePw:
    @staticmethod
    def test_small_product_code(gf4) -> None:
        spec = prs_spec(gf4, 2, [2, 2])
        rng = np.random.default_rng(9)
        cube = random_prs_codeword(spec, rng)
        received = corrupt(gf4, cube, [3, 9])
        entries = prs_list_decode_pw(spec, received)
        found = [to_ints(e.codeword).tolist() for e in entries]
        assert to_ints(cube).reshape(-1).tolist() in found
        assert all(prs_membership(spec, e.codeword) for e in entries)

    @staticmethod
    def test_degree_sum_above_q(gf4) -> None:
        with pytest.raises(DegreeError):
            prs_list_decode_pw(prs_spec(gf4, 2, [4, 4]), gf4.GF.Zeros(16))


class TestAdmissibleTuples:
    @staticmethod
    def test_literal_rule() -> None:
        assert admissible_tuples(4, 2, 2) == [(1, 1)]

    @staticmethod
    def test_shifted_rule() -> None:
        tuples = admissible_tuples(4, 2, 2, "shifted")
        assert len(tuples) == 6
        assert all(sum(k) - 2 <= 2 for k in tuples)

    @staticmethod
    def test_unknown_rule() -> None:
        with pytest.raises(SpecValidationError):
            admissible_tuples(4, 2, 2, "loose")


class TestRecursiveRM:
    @staticmethod
    def test_candidates_annotated(gf4) -> None:
        spec = rm_spec(gf4, 2, 2)
        rng = np.random.default_rng(10)
        phi = random_multipoly(gf4, 2, 2, rng, max_var_degree=3)
        c = rm_encode(spec, phi)
        candidates = rm_list_decode_recursive(spec, c, "shifted")
        assert candidates
        tried = sorted(k for cand in candidates for k in cand.tuples)
        assert tried == admissible_tuples(4, 2, 2, "shifted")
        for cand in candidates:
            assert cand.in_code == (rm_membership(spec, cand.codeword) is not None)
        keys = [(cand.distance, to_ints(cand.codeword).tolist()) for cand in candidates]
        assert keys == sorted(keys)

    @staticmethod
    def test_needs_full_grid(gf4) -> None:
        spec = rm_spec(gf4, 1, 2, n=10)
        with pytest.raises(SpecValidationError):
            rm_list_decode_recursive(spec, gf4.GF.Zeros(10))
