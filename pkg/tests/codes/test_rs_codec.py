from math import isqrt

import numpy as np
import pytest

from app.algebra.field import field_for_order, to_ints
from app.algebra.polynomial import BivariatePoly, grid_points, uni_coeffs, uni_from_coeffs
from app.codes.rs_codec import (
    gs_interpolate,
    gs_list_decode,
    gs_parameters,
    gs_radius,
    hamming,
    rr_roots,
    rs_codebook,
    rs_encode,
    rs_is_codeword,
    rs_message,
    rs_nearest,
    rs_radius,
    rs_spec,
    weighted_monomial_count,
)
from app.core.errors import DegreeError, RadiusUnachievableError, SpecValidationError

# (q, n, w) small enough to enumerate the whole code
ORACLE_CODES = [
    (5, 5, 1),
    (7, 7, 1),
    (9, 9, 2),
    (9, 9, 3),
    (13, 13, 3),
    (16, 16, 1),
    (8, 8, 2),
    (9, 9, 1),
    (7, 6, 3),
]


def brute_force_list(spec, r, tau):
    book = to_ints(rs_codebook(spec))
    distances = np.count_nonzero(book != to_ints(r), axis=1)
    return sorted(tuple(row) for row in book[distances <= tau].tolist())


def random_received(spec, rng, weight):
    message = uni_from_coeffs(spec.ctx, rng.integers(0, spec.ctx.order, size=spec.w + 1).tolist())
    codeword = rs_encode(spec, message)
    word = to_ints(codeword).copy()
    positions = rng.choice(spec.n, size=weight, replace=False)
    word[positions] = (word[positions] + rng.integers(1, spec.ctx.order, size=weight)) % spec.ctx.order
    return codeword, spec.ctx(word)


class TestRadius:
    @staticmethod
    @pytest.mark.parametrize("n, w, expected", [(256, 32, 166), (16, 8, 5), (16, 1, 12), (5, 1, 3)])
    def test_exact_threshold(n, w, expected) -> None:
        assert rs_radius(n, w) == expected

    @staticmethod
    def test_threshold_matches_real_formula() -> None:
        for n in range(2, 40):
            for w in range(1, n):
                t = rs_radius(n, w)
                assert t - 1 < n * (1 - (w / n) ** 0.5) <= t + 1e-9


def test_weighted_monomial_count():
    assert weighted_monomial_count(-1, 2) == 0
    assert weighted_monomial_count(3, 1) == 10
    assert weighted_monomial_count(5, 3) == 6 + 3


class TestParameters:
    @staticmethod
    def test_counts_exceed_constraints() -> None:
        s, D = gs_parameters(16, 1, 11)
        assert (s, D) == (2, 9)
        assert weighted_monomial_count(D, 1) > 16 * s * (s + 1) // 2

    @staticmethod
    def test_beyond_johnson_bound() -> None:
        with pytest.raises(RadiusUnachievableError):
            gs_parameters(16, 8, 5)

    @staticmethod
    def test_full_radius_rejected() -> None:
        with pytest.raises(RadiusUnachievableError):
            gs_parameters(7, 1, 7)


class TestSpec:
    @staticmethod
    def test_default_points() -> None:
        spec = rs_spec(field_for_order(7), 5, 2)
        assert to_ints(spec.points).tolist() == [0, 1, 2, 3, 4]
        assert spec.parity_check.shape == (2, 5)

    @staticmethod
    def test_duplicate_points() -> None:
        with pytest.raises(SpecValidationError):
            rs_spec(field_for_order(7), 3, 1, [1, 1, 2])

    @staticmethod
    def test_degree_not_below_length() -> None:
        with pytest.raises(SpecValidationError):
            rs_spec(field_for_order(7), 3, 3)


class TestEncode:
    @staticmethod
    def test_codeword_and_message() -> None:
        ctx = field_for_order(7)
        spec = rs_spec(ctx, 7, 2)
        f = uni_from_coeffs(ctx, [3, 1, 4])
        c = rs_encode(spec, f)
        assert rs_is_codeword(spec, c)
        assert rs_message(spec, c) == f

    @staticmethod
    def test_degree_too_high() -> None:
        ctx = field_for_order(7)
        with pytest.raises(DegreeError):
            rs_encode(rs_spec(ctx, 7, 1), uni_from_coeffs(ctx, [0, 0, 1]))

    @staticmethod
    def test_corrupted_word_fails_syndrome() -> None:
        ctx = field_for_order(7)
        spec = rs_spec(ctx, 7, 2)
        c = to_ints(rs_encode(spec, uni_from_coeffs(ctx, [1, 2, 3]))).copy()
        c[0] = (c[0] + 1) % 7
        assert not rs_is_codeword(spec, ctx(c))


def test_rr_roots_finds_both_factors():
    ctx = field_for_order(7)
    f1 = uni_from_coeffs(ctx, [1, 1])
    f2 = uni_from_coeffs(ctx, [0, 2])
    Q = BivariatePoly.from_rows([f1 * f2, -(f1 + f2), uni_from_coeffs(ctx, [1])])
    roots = rr_roots(Q, 1)
    assert [uni_coeffs(f) for f in roots] == [[0, 2], [1, 1]]


def test_interpolation_vanishes_on_received_points():
    ctx = field_for_order(7)
    spec = rs_spec(ctx, 7, 1)
    _, r = random_received(spec, np.random.default_rng(3), 3)
    s, D = gs_parameters(7, 1, 4)
    Q = gs_interpolate(spec, r, s, D)
    assert not Q.is_zero()
    assert Q.weighted_degree(1) <= D
    for x, y in zip(to_ints(spec.points), to_ints(r)):
        assert Q.evaluate(ctx(int(x)), ctx(int(y))) == 0


class TestListDecode:
    @staticmethod
    @pytest.mark.parametrize("q, n, w", ORACLE_CODES)
    def test_matches_brute_force(q, n, w) -> None:
        ctx = field_for_order(q)
        spec = rs_spec(ctx, n, w)
        tau = n - 1 - isqrt(w * n)
        rng = np.random.default_rng(q * 100 + n * 10 + w)
        for weight in (tau, max(tau - 1, 0), n // 2):
            codeword, r = random_received(spec, rng, weight)
            entries = gs_list_decode(spec, r, tau)
            found = sorted(tuple(to_ints(e.codeword).tolist()) for e in entries)
            assert found == brute_force_list(spec, r, tau)
            if weight <= tau:
                assert tuple(to_ints(codeword).tolist()) in found
            for entry in entries:
                assert entry.distance == hamming(entry.codeword, r)
                assert np.array_equal(rs_encode(spec, entry.message), entry.codeword)

    @staticmethod
    def test_sorted_by_distance() -> None:
        ctx = field_for_order(16)
        spec = rs_spec(ctx, 16, 1)
        _, r = random_received(spec, np.random.default_rng(5), 11)
        entries = gs_list_decode(spec, r, 11)
        keys = [e.sort_key() for e in entries]
        assert keys == sorted(keys)

    @staticmethod
    def test_zero_radius_is_codeword_test() -> None:
        ctx = field_for_order(7)
        spec = rs_spec(ctx, 7, 2)
        c = rs_encode(spec, uni_from_coeffs(ctx, [1, 1, 1]))
        assert len(gs_list_decode(spec, c, 0)) == 1
        corrupted = to_ints(c).copy()
        corrupted[3] = (corrupted[3] + 2) % 7
        assert gs_list_decode(spec, ctx(corrupted), 0) == []

    @staticmethod
    def test_constant_code() -> None:
        ctx = field_for_order(5)
        spec = rs_spec(ctx, 5, 0)
        entries = gs_list_decode(spec, ctx([2, 2, 2, 1, 3]), 3)
        assert [(int(e.codeword[0]), e.distance) for e in entries] == [(2, 2)]

    @staticmethod
    def test_negative_radius() -> None:
        ctx = field_for_order(5)
        with pytest.raises(SpecValidationError):
            gs_list_decode(rs_spec(ctx, 5, 1), ctx([0] * 5), -1)

    @staticmethod
    def test_radius_too_large() -> None:
        ctx = field_for_order(16)
        with pytest.raises(RadiusUnachievableError):
            gs_list_decode(rs_spec(ctx, 16, 8), ctx.GF.Zeros(16), gs_radius(rs_spec(ctx, 16, 8)))


def test_nearest_prefers_closest():
    ctx = field_for_order(7)
    spec = rs_spec(ctx, 7, 1)
    codeword, r = random_received(spec, np.random.default_rng(11), 2)
    entry = rs_nearest(spec, r, 3)
    assert entry is not None
    assert np.array_equal(entry.codeword, codeword)
    assert rs_nearest(spec, codeword, 3).distance == 0


def test_nearest_breaks_ties_by_encoding():
    ctx = field_for_order(5)
    spec = rs_spec(ctx, 5, 1)
    book = to_ints(rs_codebook(spec))
    words = grid_points(5, 5)
    distances = np.count_nonzero(words[:, None, :] != book[None, :, :], axis=2)
    closest = distances.min(axis=1)
    tied = np.flatnonzero((closest > 0) & (closest <= 2) & (np.sum(distances == closest[:, None], axis=1) > 1))
    assert tied.size > 0
    r = words[tied[0]]
    expected = min(tuple(row) for row in book[distances[tied[0]] == closest[tied[0]]].tolist())
    entry = rs_nearest(spec, ctx(r), 2)
    assert entry.distance == closest[tied[0]]
    assert tuple(to_ints(entry.codeword).tolist()) == expected


def test_nearest_without_candidates():
    ctx = field_for_order(7)
    spec = rs_spec(ctx, 7, 1)
    r = ctx([0, 0, 0, 1, 2, 4, 3])
    assert gs_list_decode(spec, r, 1) == []
    assert rs_nearest(spec, r, 1) is None


def all_polynomials(ctx, w):
    return [uni_from_coeffs(ctx, row.tolist()) for row in grid_points(ctx.order, w + 1)]


class TestRootsWithoutSolutions:
    @staticmethod
    def test_minus_one_is_not_a_square() -> None:
        # Y^2 + 1 over GF(3)
        ctx = field_for_order(3)
        Q = BivariatePoly.from_rows([uni_from_coeffs(ctx, [1]), uni_from_coeffs(ctx, []), uni_from_coeffs(ctx, [1])])
        assert rr_roots(Q, 1) == []
        assert all(Q.substitute(f) != 0 for f in all_polynomials(ctx, 1))

    @staticmethod
    def test_x_is_not_a_square() -> None:
        # Y^2 - X over GF(7)
        ctx = field_for_order(7)
        Q = BivariatePoly.from_rows([uni_from_coeffs(ctx, [0, 6]), uni_from_coeffs(ctx, []), uni_from_coeffs(ctx, [1])])
        assert rr_roots(Q, 2) == []
        assert all(Q.substitute(f) != 0 for f in all_polynomials(ctx, 2))


def test_interpolation_multiplicities():
    ctx = field_for_order(16)
    spec = rs_spec(ctx, 16, 1)
    _, r = random_received(spec, np.random.default_rng(29), 11)
    s, D = gs_parameters(16, 1, 11)
    assert s > 1
    Q = gs_interpolate(spec, r, s, D)
    for x, y in zip(to_ints(spec.points), to_ints(r)):
        # every coefficient of Q(X + x, Y + y) of total degree < s vanishes
        assert Q.shift(ctx(int(x)), ctx(int(y))).min_total_degree() >= s


@pytest.mark.slow
def test_oracle_equivalence_across_radii():
    rng = np.random.default_rng(2024)
    checked = 0
    for q, n, w in ORACLE_CODES:
        ctx = field_for_order(q)
        spec = rs_spec(ctx, n, w)
        tau_max = n - 1 - isqrt(w * n)
        for _ in range(25):
            tau = int(rng.integers(1, tau_max + 1))
            _, r = random_received(spec, rng, int(rng.integers(0, n + 1)))
            found = sorted(tuple(to_ints(e.codeword).tolist()) for e in gs_list_decode(spec, r, tau))
            assert found == brute_force_list(spec, r, tau)
            checked += 1
    assert checked >= 200
