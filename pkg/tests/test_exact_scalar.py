"""Tests for exact field arithmetic, rank/kernel, Pfaffians, and polynomials.

Expected values fall into three classes: convention anchors asserted
directly, hand-derived matrices frozen after independent computation, and
cross-checks of two algorithmically independent implementations (recursive
Pfaffian expansion vs. elimination determinant vs. a test-local cofactor
determinant).
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triwedge.exact_scalar import (
    ConventionError,
    FieldSpec,
    Matrix,
    UniPoly,
    interpolate,
    pfaffian,
    poly_gcd,
    rank_kernel,
)

QQ = FieldSpec.rationals()
F101 = FieldSpec.prime(101)
BIG_PRIME = 1_000_003


def _cofactor_det(field: FieldSpec, rows: list[list]) -> object:
    """Test-local determinant by first-row cofactor expansion (third oracle)."""
    size = len(rows)
    if size == 0:
        return field.one()
    if size == 1:
        return rows[0][0]
    acc = field.zero()
    for j in range(size):
        a = rows[0][j]
        if field.is_zero(a):
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = field.mul(a, _cofactor_det(field, minor))
        acc = field.add(acc, term) if j % 2 == 0 else field.sub(acc, term)
    return acc


def _random_skew(field: FieldSpec, size: int, rng: random.Random) -> Matrix:
    rows = [[field.zero()] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            v = field.coerce(rng.randrange(101) if field.kind == "prime" else rng.randint(-9, 9))
            rows[i][j] = v
            rows[j][i] = field.neg(v)
    return Matrix.from_rows(field, rows)


# --- FieldSpec ---------------------------------------------------------------


def test_field_spec_rejects_composite_modulus():
    with pytest.raises(ValueError):
        FieldSpec.prime(4)
    with pytest.raises(ValueError):
        FieldSpec.prime(1)


def test_field_spec_accepts_small_and_large_primes():
    assert FieldSpec.prime(2).char == 2
    assert FieldSpec.prime(BIG_PRIME).char == BIG_PRIME
    assert QQ.char == 0


def test_coerce_fraction_string_into_prime_field():
    f7 = FieldSpec.prime(7)
    assert f7.coerce("3/2") == 3 * 4 % 7  # inverse of 2 mod 7 is 4
    assert f7.coerce(Fraction(-1, 3)) == (-1 * 5) % 7  # inverse of 3 mod 7 is 5
    with pytest.raises(ZeroDivisionError):
        f7.coerce(Fraction(1, 7))


def test_coerce_rational_keeps_exact_value():
    assert QQ.coerce("22/7") == Fraction(22, 7)
    assert QQ.coerce(5) == Fraction(5)


# --- rank_kernel -------------------------------------------------------------


def test_rank_kernel_zero_matrix():
    rank, kernel = rank_kernel(Matrix.zero(QQ, 3, 3))
    assert rank == 0
    assert kernel.cols == 3


def test_rank_kernel_identity():
    rank, kernel = rank_kernel(Matrix.identity(QQ, 4))
    assert rank == 4
    assert kernel.cols == 0


def test_rank_kernel_pairing_matrix_of_decomposable_four_form():
    # Gram matrix of the quadratic form attached to x0^x1^x2^x3 on the
    # 6-dimensional space of bivectors in basis order 01,02,03,12,13,23:
    # entry[(ab),(cd)] = value of the 4-form on e_a^e_b^e_c^e_d, derived by
    # hand from the determinant pairing.
    rho = Matrix.from_rows(
        QQ,
        [
            [0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, -1, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, -1, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
        ],
    )
    rank, kernel = rank_kernel(rho)
    assert rank == 6
    assert kernel.cols == 0


def test_rank_kernel_columns_are_annihilated():
    rng = random.Random(20260816)
    for _ in range(20):
        rows = [[rng.randint(-5, 5) for _ in range(5)] for _ in range(3)]
        m = Matrix.from_rows(QQ, rows)
        rank, kernel = rank_kernel(m)
        assert rank + kernel.cols == 5
        for j in range(kernel.cols):
            image = m.matvec(kernel.column(j))
            assert all(v == 0 for v in image)


def test_rank_kernel_agrees_between_rationals_and_large_prime_field():
    big = FieldSpec.prime(BIG_PRIME)
    rng = random.Random(99)
    for _ in range(10):
        rows = [[rng.randint(-999, 999) for _ in range(6)] for _ in range(4)]
        rank_q, _ = rank_kernel(Matrix.from_rows(QQ, rows))
        rank_p, _ = rank_kernel(Matrix.from_rows(big, rows))
        assert rank_q == rank_p


# --- pfaffian ----------------------------------------------------------------


def test_pfaffian_sign_convention_anchor():
    m = Matrix.from_rows(QQ, [[0, 1], [-1, 0]])
    assert pfaffian(m) == 1


def test_pfaffian_of_direct_sum_is_product():
    m = Matrix.from_rows(
        QQ,
        [
            [0, 1, 0, 0],
            [-1, 0, 0, 0],
            [0, 0, 0, 1],
            [0, 0, -1, 0],
        ],
    )
    assert pfaffian(m) == 1


def test_pfaffian_rejects_odd_size_and_non_skew():
    with pytest.raises(ConventionError):
        pfaffian(Matrix.zero(QQ, 3, 3))
    with pytest.raises(ConventionError):
        pfaffian(Matrix.identity(QQ, 2))


def test_pfaffian_squared_equals_determinant_random_over_prime_field():
    rng = random.Random(7)
    for size in (2, 4, 6):
        m = _random_skew(F101, size, rng)
        pf = pfaffian(m)
        assert F101.mul(pf, pf) == m.det()


def test_pfaffian_squared_equals_determinant_all_even_sizes_to_ten():
    rng = random.Random(11)
    for size in (2, 4, 6, 8, 10):
        for field in (QQ, F101):
            m = _random_skew(field, size, rng)
            pf = pfaffian(m)
            assert field.mul(pf, pf) == m.det()


def test_elimination_determinant_matches_cofactor_oracle():
    rng = random.Random(13)
    for size in range(1, 6):
        for field in (QQ, F101):
            rows = [
                [field.coerce(rng.randint(-9, 9)) for _ in range(size)]
                for _ in range(size)
            ]
            m = Matrix.from_rows(field, rows)
            assert m.det() == _cofactor_det(field, m.row_lists())


# --- polynomials -------------------------------------------------------------


def test_poly_gcd_linear_factor():
    f = UniPoly.from_coeffs(QQ, [-1, 0, 1])  # t^2 - 1
    g = UniPoly.from_coeffs(QQ, [-1, 1])  # t - 1
    assert poly_gcd(f, g) == g.monic()


def test_poly_gcd_with_zero_returns_monic():
    f = UniPoly.from_coeffs(QQ, [2, 0, 4])  # 4t^2 + 2
    expected = UniPoly.from_coeffs(QQ, [Fraction(1, 2), 0, 1])
    assert poly_gcd(f, UniPoly.zero(QQ)) == expected
    assert poly_gcd(UniPoly.zero(QQ), UniPoly.zero(QQ)).is_zero()


def test_poly_gcd_rejects_mixed_fields():
    with pytest.raises(ValueError):
        poly_gcd(UniPoly.one(QQ), UniPoly.one(F101))


def test_poly_divmod_roundtrip():
    rng = random.Random(3)
    for _ in range(25):
        f = UniPoly.from_coeffs(F101, [rng.randrange(101) for _ in range(6)])
        g = UniPoly.from_coeffs(F101, [rng.randrange(101) for _ in range(3)])
        if g.is_zero():
            continue
        q, r = f.divmod(g)
        assert q.mul(g).add(r) == f
        assert r.degree < g.degree


@settings(max_examples=60, deadline=None)
@given(
    a=st.lists(st.integers(0, 100), min_size=0, max_size=5),
    b=st.lists(st.integers(0, 100), min_size=0, max_size=5),
    c=st.lists(st.integers(0, 100), min_size=1, max_size=3),
)
def test_poly_gcd_divides_both_and_is_symmetric(a, b, c):
    common = UniPoly.from_coeffs(F101, c)
    f = UniPoly.from_coeffs(F101, a).mul(common)
    g = UniPoly.from_coeffs(F101, b).mul(common)
    d = poly_gcd(f, g)
    assert d == poly_gcd(g, f)
    if not f.is_zero():
        assert f.divmod(d)[1].is_zero()
    if not g.is_zero():
        assert g.divmod(d)[1].is_zero()
    if not common.is_zero():
        assert d.divmod(common.monic())[1].is_zero()


def test_interpolation_recovers_polynomial():
    rng = random.Random(17)
    for _ in range(10):
        poly = UniPoly.from_coeffs(F101, [rng.randrange(101) for _ in range(6)])
        nodes = list(range(7))
        points = [(t, poly.eval(t)) for t in nodes]
        assert interpolate(F101, points) == poly


def test_interpolation_rejects_duplicate_nodes():
    with pytest.raises(ValueError):
        interpolate(QQ, [(1, 1), (1, 2)])


def test_poly_eval_horner_matches_direct_sum():
    poly = UniPoly.from_coeffs(QQ, [1, -2, 0, 3])  # 3t^3 - 2t + 1
    t = Fraction(5, 7)
    assert poly.eval(t) == 3 * t**3 - 2 * t + 1


# --- matrix plumbing ----------------------------------------------------------


def test_matrix_shape_validation():
    with pytest.raises(ValueError):
        Matrix(QQ, 2, 2, (Fraction(0),) * 3)


def test_matrix_multiplication_and_transpose():
    a = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
    b = Matrix.from_rows(QQ, [[0, 1], [1, 0]])
    assert a.mul(b) == Matrix.from_rows(QQ, [[2, 1], [4, 3]])
    assert a.transpose() == Matrix.from_rows(QQ, [[1, 3], [2, 4]])


def test_matrix_rejects_mixed_fields():
    with pytest.raises(ValueError):
        Matrix.identity(QQ, 2).mul(Matrix.identity(F101, 2))


def test_submatrix_and_skew_check():
    m = Matrix.from_rows(QQ, [[0, 2, 5], [-2, 0, -1], [-5, 1, 0]])
    assert m.is_skew_symmetric()
    sub = m.submatrix([0, 2], [0, 2])
    assert sub == Matrix.from_rows(QQ, [[0, 5], [-5, 0]])
