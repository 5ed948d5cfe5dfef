import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thick_sandpile.linalg import (
    DimensionError,
    InconsistentSystemError,
    IntegerMatrix,
    det,
    integer_inverse,
    minors_gcd,
    smith_normal_form,
    solve_integer,
    solve_rational,
)

from oracles import brute_minors_gcd, frac_solve, leibniz_det


def matrices(max_rows=5, max_cols=5, bound=20):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                min_size=r, max_size=r,
            )
        )
    )


def square_matrices(max_n=5, bound=20):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
            min_size=n, max_size=n,
        )
    )


class TestIntegerMatrix:
    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            IntegerMatrix(2, 2, [1, 2, 3])

    def test_ragged_rows(self):
        with pytest.raises(DimensionError):
            IntegerMatrix.from_rows([[1, 2], [3]])

    def test_matmul_and_transpose(self):
        a = IntegerMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert (a @ a.T).to_rows() == [[14, 32], [32, 77]]
        assert a.T.shape == (3, 2)

    def test_submatrix_keeps_order(self):
        a = IntegerMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        assert a.submatrix([2, 0], [1, 2]).to_rows() == [[8, 9], [2, 3]]

    def test_big_entries_stay_exact(self):
        big = 10 ** 40
        assert det([[big, 1], [1, big]]) == big * big - 1


class TestDet:
    def test_identity(self):
        assert det(IntegerMatrix.identity(3)) == 1

    def test_two_by_two(self):
        assert det([[2, -1], [-1, 2]]) == 3

    def test_needs_row_swap(self):
        assert det([[0, 1], [1, 0]]) == -1

    def test_singular(self):
        assert det([[1, 2], [2, 4]]) == 0

    def test_empty(self):
        assert det(IntegerMatrix(0, 0, [])) == 1

    def test_non_square(self):
        with pytest.raises(DimensionError):
            det([[1, 2, 3]])

    @given(square_matrices())
    def test_matches_leibniz(self, rows):
        assert det(rows) == leibniz_det(rows)

    @given(square_matrices())
    def test_transpose_and_row_swap(self, rows):
        m = IntegerMatrix.from_rows(rows)
        assert det(m) == det(m.T)
        if len(rows) > 1:
            swapped = [rows[1], rows[0]] + rows[2:]
            assert det(swapped) == -det(rows)


class TestMinorsGcd:
    def test_examples(self):
        assert minors_gcd([[2, 1], [0, 2]], 1) == 1
        assert minors_gcd([[2, 1], [0, 2]], 2) == 4

    def test_zero_matrix(self):
        assert minors_gcd(IntegerMatrix.zeros(3, 3), 1) == 0

    def test_out_of_range(self):
        with pytest.raises(DimensionError):
            minors_gcd([[1, 2], [3, 4]], 3)
        with pytest.raises(DimensionError):
            minors_gcd([[1, 2], [3, 4]], 0)

    def test_size_guard(self):
        with pytest.raises(DimensionError, match="guard"):
            minors_gcd(IntegerMatrix.identity(13), 1)
        assert minors_gcd(IntegerMatrix.identity(13), 1, max_size=13) == 1

    @settings(max_examples=60)
    @given(matrices(4, 4, 9))
    def test_matches_brute_force(self, rows):
        for t in range(1, min(len(rows), len(rows[0])) + 1):
            assert minors_gcd(rows, t) == brute_minors_gcd(rows, t)


def check_snf(rows):
    m = IntegerMatrix.from_rows(rows)
    snf = smith_normal_form(m)
    assert snf.U @ m @ snf.V == snf.diagonal_matrix()
    assert abs(det(snf.U)) == 1
    assert abs(det(snf.V)) == 1
    nonzero = [d for d in snf.diag if d]
    assert len(nonzero) == snf.rank
    assert all(d > 0 for d in nonzero)
    assert list(snf.diag[:snf.rank]) == nonzero
    assert all(y % x == 0 for x, y in zip(nonzero, nonzero[1:]))
    return snf


class TestSmithNormalForm:
    def test_examples(self):
        assert smith_normal_form([[2, 1], [0, 2]]).diag == (1, 4)
        assert smith_normal_form(IntegerMatrix.identity(3)).diag == (1, 1, 1)
        assert smith_normal_form([[2, -1], [-1, 2]]).diag == (1, 3)

    def test_rank_deficient_rectangular(self):
        snf = check_snf([[2, 4, 6], [1, 2, 3]])
        assert snf.rank == 1 and snf.diag == (1, 0)

    def test_zero_and_empty(self):
        assert smith_normal_form(IntegerMatrix.zeros(2, 3)).rank == 0
        assert smith_normal_form(IntegerMatrix(0, 0, [])).diag == ()

    def test_divisibility_needs_fixup(self):
        # diag(2, 3) is diagonal but not a chain
        assert check_snf([[2, 0], [0, 3]]).diag == (1, 6)

    def test_large_entries(self):
        big = 2 ** 70
        snf = check_snf([[big, 0], [0, big * 6]])
        assert snf.diag == (big, 6 * big)

    @given(matrices(6, 6, 30))
    def test_invariants(self, rows):
        snf = check_snf(rows)
        for t in range(1, snf.rank + 1):
            prod = 1
            for d in snf.diag[:t]:
                prod *= d
            if len(rows) <= 4 and len(rows[0]) <= 4:
                assert prod == brute_minors_gcd(rows, t)

    @given(square_matrices(5, 15))
    def test_product_is_abs_det(self, rows):
        snf = smith_normal_form(rows)
        d = det(rows)
        if d:
            prod = 1
            for x in snf.diag:
                prod *= x
            assert prod == abs(d)


class TestSolveRational:
    def test_identity(self):
        assert solve_rational(IntegerMatrix.identity(2), [3, 5]) == [3, 5]

    def test_singular_consistent(self):
        x = solve_rational([[3, -3], [-3, 3]], [-1, 1])
        assert 3 * x[0] - 3 * x[1] == -1
        assert x[1] - x[0] == Fraction(1, 3)

    def test_inconsistent(self):
        with pytest.raises(InconsistentSystemError):
            solve_rational([[1, 0], [1, 0]], [0, 1])

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            solve_rational([[1, 0], [0, 1]], [1])

    @given(square_matrices(4, 10), st.lists(st.integers(-20, 20), min_size=4, max_size=4))
    def test_substitute_back(self, rows, b):
        b = b[:len(rows)]
        if leibniz_det(rows):
            x = solve_rational(rows, b)
            assert x == frac_solve(rows, b)
        else:
            try:
                x = solve_rational(rows, b)
            except InconsistentSystemError:
                return
        assert IntegerMatrix.from_rows(rows).matvec(x) == b
        assert all(isinstance(v, Fraction) for v in x)


class TestSolveInteger:
    def test_examples(self):
        assert solve_integer([[2]], [4]) == [2]
        assert solve_integer([[2]], [3]) is None
        assert solve_integer([[2, -1], [-1, 2]], [3, -3]) == [1, -1]

    def test_inconsistent_rank_deficient(self):
        assert solve_integer([[1, 1], [1, 1]], [1, 2]) is None

    def test_random_images(self):
        rng = random.Random(5)
        for _ in range(200):
            r, c = rng.randint(1, 5), rng.randint(1, 5)
            m = IntegerMatrix(r, c, [rng.randint(-9, 9) for _ in range(r * c)])
            x = [rng.randint(-5, 5) for _ in range(c)]
            b = m.matvec(x)
            y = solve_integer(m, b)
            assert y is not None and m.matvec(y) == b

    def test_non_image_detected(self):
        # 2Z + 4Z does not reach odd numbers
        assert solve_integer([[2, 4]], [5]) is None


def test_integer_inverse():
    u = IntegerMatrix.from_rows([[2, 1], [1, 1]])
    assert u @ integer_inverse(u) == IntegerMatrix.identity(2)
    with pytest.raises(ValueError):
        integer_inverse([[2, 0], [0, 1]])
