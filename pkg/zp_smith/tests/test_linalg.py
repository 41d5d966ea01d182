"""
Tests for zp_smith.linalg module.
"""

import random

import pytest


def _random_matrix(rng, rows, cols, density=0.5, bound=6):
    from zp_smith.linalg import IntMatrix

    return IntMatrix.from_rows(
        [
            [rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(cols)]
            for _ in range(rows)
        ],
        cols=cols,
    )


class TestIntMatrix:
    """Tests for IntMatrix."""

    def test_zero_entries_not_stored(self):
        from zp_smith.linalg import IntMatrix

        D = IntMatrix.from_rows([[0, 3], [0, 0]])
        assert D.nnz == 1
        assert D.entries == {(0, 1): 3}

    def test_apply_and_apply_left(self):
        from zp_smith.linalg import IntMatrix

        D = IntMatrix.from_rows([[1, 2], [3, 4]])
        assert D.apply([1, 1]) == [3, 7]
        assert D.apply_left([1, 1]) == [4, 6]

    def test_matmul_and_transpose(self):
        from zp_smith.linalg import IntMatrix

        D = IntMatrix.from_rows([[1, 2], [3, 4]])
        assert (D @ IntMatrix.identity(2)) == D
        assert D.transpose().to_dense() == [[1, 3], [2, 4]]

    def test_is_zero_modulo(self):
        from zp_smith.linalg import IntMatrix

        D = IntMatrix.from_rows([[2, 4], [6, 8]])
        assert not D.is_zero()
        assert D.is_zero(2)
        assert not D.is_zero(4)

    def test_out_of_range_entry(self):
        from zp_smith.linalg import IntMatrix

        with pytest.raises(ValueError):
            IntMatrix(2, 2, {(2, 0): 1})

    def test_mismatched_product(self):
        from zp_smith.linalg import IntMatrix

        with pytest.raises(ValueError):
            IntMatrix.zeros(2, 3) @ IntMatrix.zeros(2, 3)


class TestSnf:
    """Tests for snf function."""

    def test_small_example(self):
        from zp_smith.linalg import IntMatrix, snf

        decomposition = snf(IntMatrix.from_rows([[2, 4], [6, 8]]))
        assert decomposition.diagonal == (2, 4)
        assert decomposition.rank == 2

    def test_zero_matrix(self):
        from zp_smith.linalg import IntMatrix, snf

        decomposition = snf(IntMatrix.zeros(3, 2))
        assert decomposition.rank == 0
        assert decomposition.invariant_factors == ()

    def test_empty_matrix(self):
        from zp_smith.linalg import IntMatrix, snf

        decomposition = snf(IntMatrix.zeros(0, 4))
        assert decomposition.diagonal == ()
        assert decomposition.right.shape == (4, 4)

    def test_transforms_reproduce_matrix(self):
        from zp_smith.linalg import snf

        rng = random.Random(7)
        for _ in range(20):
            D = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
            dec = snf(D)
            assert dec.left @ D @ dec.right == dec.S
            assert dec.V @ dec.S @ dec.U == D
            assert (dec.left @ dec.V).to_dense() == [
                [int(i == j) for j in range(D.rows)] for i in range(D.rows)
            ]

    def test_diagonal_shape(self):
        from zp_smith.linalg import snf

        rng = random.Random(11)
        for _ in range(20):
            D = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
            dec = snf(D)
            off_diagonal = {k: v for k, v in dec.S.entries.items() if k[0] != k[1]}
            assert off_diagonal == {}
            factors = dec.invariant_factors
            assert all(s > 0 for s in factors)
            assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
            assert dec.diagonal[dec.rank :] == (0,) * (len(dec.diagonal) - dec.rank)

    def _assert_matches_sympy(self, seed, count, size):
        from sympy import Matrix, ZZ
        from sympy.matrices.normalforms import smith_normal_form

        from zp_smith.linalg import snf

        rng = random.Random(seed)
        for _ in range(count):
            D = _random_matrix(rng, rng.randint(1, size), rng.randint(1, size), density=0.7)
            expected = smith_normal_form(Matrix(D.to_dense()), domain=ZZ)
            reference = sorted(
                abs(int(expected[i, i]))
                for i in range(min(expected.shape))
                if expected[i, i] != 0
            )
            assert sorted(snf(D, inverses=False).invariant_factors) == reference

    def test_against_sympy(self):
        self._assert_matches_sympy(seed=3, count=100, size=5)

    @pytest.mark.slow
    def test_against_sympy_up_to_eight(self):
        self._assert_matches_sympy(seed=11, count=1000, size=8)

    def test_product_is_determinant(self):
        from sympy import Matrix

        from zp_smith.linalg import IntMatrix, snf

        D = IntMatrix.from_rows([[3, 1, 4], [1, 5, 9], [2, 6, 5]])
        product = 1
        for s in snf(D).diagonal:
            product *= s
        assert product == abs(Matrix(D.to_dense()).det())

    def test_memory_cap(self):
        from zp_smith.linalg import IntMatrix, MemoryCapExceeded, snf

        with pytest.raises(MemoryCapExceeded) as info:
            snf(IntMatrix.from_rows([[1, 2], [3, 4]]), memory_cap=1)
        assert info.value.cap == 1
        assert info.value.estimate > 1

    def test_memory_cap_from_settings(self):
        from unittest.mock import patch

        from zp_smith.linalg import IntMatrix, MemoryCapExceeded, snf

        with patch("zp_smith.linalg.smith_settings") as mock_settings:
            mock_settings.MEMORY_CAP = 1
            with pytest.raises(MemoryCapExceeded):
                snf(IntMatrix.identity(3))

    def test_big_integers_stay_exact(self):
        from zp_smith.linalg import IntMatrix, snf

        big = 10**40 + 7
        dec = snf(IntMatrix.from_rows([[big, 0], [0, big * 3]]))
        assert dec.diagonal == (big, 3 * big)


class TestSolve:
    """Tests for solve and image_membership."""

    def test_integer_solution(self):
        from zp_smith.linalg import IntMatrix, solve

        assert solve(IntMatrix.from_rows([[2, 0], [0, 3]]), [4, 9]) == [2, 3]

    def test_no_integer_solution(self):
        from zp_smith.linalg import IntMatrix, solve

        assert solve(IntMatrix.from_rows([[2, 0], [0, 3]]), [1, 0]) is None

    def test_modular_solution(self):
        from zp_smith.linalg import IntMatrix, solve

        A = IntMatrix.from_rows([[2, 0], [0, 3]])
        x = solve(A, [1, 2], modulus=5)
        assert x is not None
        assert all((u - v) % 5 == 0 for u, v in zip(A.apply(x), [1, 2]))

    def test_rank_deficient_system(self):
        from zp_smith.linalg import IntMatrix, solve

        A = IntMatrix.from_rows([[1, 2], [2, 4]])
        x = solve(A, [3, 6])
        assert A.apply(x) == [3, 6]
        assert solve(A, [3, 5]) is None

    def test_image_membership_torsion(self):
        from zp_smith.linalg import IntMatrix, image_membership

        assert image_membership(IntMatrix.from_rows([[2]]), [1], 2) is None
        assert image_membership(IntMatrix.from_rows([[2]]), [1], 3) == [2]

    def test_bad_modulus(self):
        from zp_smith.linalg import IntMatrix, solve

        with pytest.raises(ValueError):
            solve(IntMatrix.from_rows([[1]]), [1], modulus=0)

    def test_random_consistency(self):
        from zp_smith.linalg import solve

        rng = random.Random(5)
        for _ in range(20):
            A = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
            x = [rng.randint(-3, 3) for _ in range(A.cols)]
            b = A.apply(x)
            y = solve(A, b)
            assert y is not None
            assert A.apply(y) == b
