"""Tests for dense F2 linear algebra"""

import pytest

from conftest import span_set
from src.algebra.gf2core import (
    BitMatrix,
    BitVector,
    contains,
    dual_basis,
    intersect_spaces,
    kernel_basis,
    rank,
    rref,
    sum_spaces,
)
from src.errors import DegreeMismatchError


def random_matrix(rng, nrows, ncols):
    return BitMatrix(ncols, tuple(rng.getrandbits(ncols) for _ in range(nrows)))


def same_space(A: BitMatrix, B: BitMatrix) -> bool:
    return rref(A)[0] == rref(B)[0]


class TestBitVector:
    def test_from_string(self):
        v = BitVector.from_bits("1010")
        assert v.to_list() == [1, 0, 1, 0]
        assert v.weight() == 2
        assert str(v) == "1010"

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            BitVector.from_bits("1020")

    def test_add_and_dot(self):
        a = BitVector.from_bits("1100")
        b = BitVector.from_bits("0110")
        assert str(a + b) == "1010"
        assert a.dot(b) == 1

    def test_length_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            BitVector.from_bits("11") + BitVector.from_bits("111")


class TestRref:
    def test_duplicate_rows(self):
        R, pivots = rref(BitMatrix.from_rows(["11", "11"], 2))
        assert R.to_strings() == ["11"]
        assert pivots == [0]

    def test_identity(self):
        R, pivots = rref(BitMatrix.identity(3))
        assert R == BitMatrix.identity(3)
        assert pivots == [0, 1, 2]

    def test_elimination(self):
        R, pivots = rref(BitMatrix.from_rows(["011", "110"], 3))
        assert R.to_strings() == ["101", "011"]
        assert pivots == [0, 1]

    def test_row_space_preserved(self, rng):
        for _ in range(50):
            M = random_matrix(rng, rng.randint(1, 8), 10)
            R, pivots = rref(M)
            assert span_set(R.rows, 10) == span_set(M.rows, 10)
            assert pivots == sorted(pivots)
            assert len(pivots) == R.nrows == rank(M)


class TestKernelAndDual:
    def test_zero_map(self):
        assert kernel_basis(BitMatrix(3, (0, 0))).nrows == 3

    def test_injective_map(self):
        assert kernel_basis(BitMatrix.identity(3)).nrows == 0

    def test_small_kernel(self):
        K = kernel_basis(BitMatrix.from_rows(["110", "011"], 3))
        assert K.to_strings() == ["111"]

    def test_dual_of_full_space(self):
        assert dual_basis(BitMatrix.identity(2), 2).nrows == 0

    def test_small_dual(self):
        D = dual_basis(BitMatrix.from_rows(["110", "011"], 3), 3)
        assert D.to_strings() == ["111"]

    def test_dual_width_checked(self):
        with pytest.raises(DegreeMismatchError):
            dual_basis(BitMatrix.identity(2), 3)

    def test_rank_nullity(self, rng):
        for _ in range(1000):
            n = rng.randint(1, 64)
            M = random_matrix(rng, rng.randint(0, 40), n)
            assert rank(M) + kernel_basis(M).nrows == n

    def test_biduality(self, rng):
        for _ in range(100):
            n = rng.randint(1, 64)
            G = random_matrix(rng, rng.randint(0, n), n)
            assert same_space(dual_basis(dual_basis(G, n), n), G)


class TestSumAndIntersection:
    def test_idempotent(self):
        A = BitMatrix.from_rows(["1100", "0011"], 4)
        assert same_space(sum_spaces(A, A), A)
        assert same_space(intersect_spaces(A, A), A)

    def test_complementary_lines(self):
        A = BitMatrix.from_rows(["10"], 2)
        B = BitMatrix.from_rows(["01"], 2)
        assert sum_spaces(A, B).nrows == 2
        assert intersect_spaces(A, B).nrows == 0

    def test_dimension_identity(self, rng):
        for _ in range(1000):
            n = rng.randint(1, 64)
            A = random_matrix(rng, rng.randint(0, n), n)
            B = random_matrix(rng, rng.randint(0, n), n)
            dim_sum = sum_spaces(A, B).nrows
            dim_meet = intersect_spaces(A, B).nrows
            assert dim_sum + dim_meet == rank(A) + rank(B)

    def test_intersection_matches_enumeration(self, rng):
        for _ in range(50):
            A = random_matrix(rng, rng.randint(0, 6), 8)
            B = random_matrix(rng, rng.randint(0, 6), 8)
            expected = span_set(A.rows, 8) & span_set(B.rows, 8)
            assert span_set(intersect_spaces(A, B).rows, 8) == expected


class TestContains:
    def test_zero_vector(self):
        assert contains(BitMatrix.from_rows(["101"], 3), BitVector.zeros(3))

    def test_row_itself(self):
        assert contains(BitMatrix.from_rows(["110"], 3), BitVector.from_bits("110"))

    def test_sum_of_rows(self):
        assert contains(BitMatrix.from_rows(["110", "011"], 3), BitVector.from_bits("101"))

    def test_agrees_with_enumeration(self, rng):
        for _ in range(30):
            n = rng.randint(1, 14)
            S = random_matrix(rng, rng.randint(0, 12), n)
            members = span_set(S.rows, n)
            for _ in range(20):
                v = rng.getrandbits(n)
                assert contains(S, BitVector(n, v)) == (v in members)
