"""
Tests for the F2 linear algebra module.
"""

import numpy as np
import pytest

from phantomqec.f2linalg import (
    BitMatrix,
    block_pldu,
    elementary,
    gl_order,
    gl_sum_split,
    in_row_span,
    inverse,
    is_invertible,
    is_symplectic,
    iter_gl,
    kernel,
    random_invertible,
    rank,
    row_span_equal,
    rref,
    solve_in_span,
    standard_form,
    symplectic_form,
    symplectic_product,
)


class TestBitMatrix:
    """Test suite for the BitMatrix type."""

    def test_construct_from_strings(self):
        """Test parsing rows of '0'/'1' characters."""
        m = BitMatrix(["101", "011"])
        assert m.shape == (2, 3)
        assert m.to_list() == [[1, 0, 1], [0, 1, 1]]

    def test_construct_reduces_mod_two(self):
        """Test integer entries are reduced mod 2."""
        m = BitMatrix([[2, 3], [5, 4]])
        assert m.to_strings() == ["01", "10"]

    def test_empty_needs_cols(self):
        """Test an empty row list keeps the requested width."""
        assert BitMatrix([], cols=5).shape == (0, 5)

    def test_immutable(self):
        """Test the underlying array cannot be written."""
        m = BitMatrix.identity(2)
        with pytest.raises(ValueError):
            m.data[0, 0] = 0

    def test_product_and_sum(self):
        """Test matrix product and sum over F2."""
        a = BitMatrix(["11", "01"])
        assert (a @ a).is_identity()
        assert (a + a).is_zero()

    def test_product_shape_mismatch(self):
        """Test mismatched products are rejected."""
        with pytest.raises(ValueError, match="Shape mismatch"):
            BitMatrix.identity(2) @ BitMatrix.identity(3)

    def test_row_ints_bit_order(self):
        """Test bit j of a packed row is column j."""
        assert BitMatrix(["100", "011"]).row_ints() == [1, 6]
        assert BitMatrix.from_ints([1, 6], 3).to_strings() == ["100", "011"]

    def test_permutation_moves_entry_i_to_perm_i(self):
        """Test v·P sends entry i of v to position perm[i]."""
        p = BitMatrix.permutation([2, 0, 1])
        v = np.array([1, 0, 0])
        assert list((v @ p.data.astype(int)) % 2) == [0, 0, 1]

    def test_permute_columns(self):
        """Test column permutation convention."""
        m = BitMatrix(["110"])
        assert m.permute_columns([1, 2, 0]).to_strings() == ["011"]

    def test_block_assembly(self):
        """Test assembling a block matrix."""
        eye, zero = BitMatrix.identity(1), BitMatrix.zeros(1, 1)
        assert BitMatrix.block([[eye, eye], [zero, eye]]).to_strings() == ["11", "01"]

    def test_hash_and_equality(self):
        """Test equal matrices hash equally."""
        assert BitMatrix(["10"]) == BitMatrix([[1, 0]])
        assert len({BitMatrix(["10"]), BitMatrix([[1, 0]])}) == 1


class TestElimination:
    """Test suite for rank, rref, kernel and inverse."""

    def test_rank(self):
        """Test rank of a dependent set."""
        assert rank(BitMatrix(["110", "011", "101"])) == 2

    def test_rref_pivots(self):
        """Test rref drops zero rows and reports increasing pivots."""
        reduced, pivots = rref(BitMatrix(["011", "110", "101"]))
        assert pivots == [0, 1]
        assert reduced.to_strings() == ["101", "011"]

    def test_kernel_annihilates(self, rng):
        """Test every kernel vector is orthogonal to the rows."""
        for _ in range(20):
            m = BitMatrix.random(4, 7, rng)
            k = kernel(m)
            assert k.rows == 7 - rank(m)
            if k.rows:
                assert (m @ k.T).is_zero()

    def test_inverse(self, rng):
        """Test inverse of random invertible matrices."""
        for _ in range(20):
            m = random_invertible(5, rng)
            assert (m @ inverse(m)).is_identity()

    def test_inverse_singular(self):
        """Test singular matrices are rejected."""
        with pytest.raises(ValueError, match="singular"):
            inverse(BitMatrix(["11", "11"]))

    def test_inverse_non_square(self):
        """Test non-square matrices are rejected."""
        with pytest.raises(ValueError, match="non-square"):
            inverse(BitMatrix(["110"]))

    def test_span_queries(self):
        """Test row-span membership and equality."""
        m = BitMatrix(["1100", "0011"])
        assert in_row_span([1, 1, 1, 1], m)
        assert not in_row_span([1, 0, 0, 0], m)
        assert row_span_equal(m, BitMatrix(["1111", "0011"]))
        assert not row_span_equal(m, BitMatrix(["1111", "1000"]))

    def test_solve_in_span(self):
        """Test expressing a vector as a sum of rows."""
        rows = [0b0011, 0b0110, 0b1100]
        assert solve_in_span(0b1111, rows) == [0, 2]
        assert solve_in_span(0b0001, rows) is None


class TestSymplectic:
    """Test suite for the symplectic form and standard form."""

    def test_symplectic_product(self):
        """Test X and Z on the same qubit anticommute."""
        assert symplectic_product([1, 0], [0, 1]) == 1
        assert symplectic_product([1, 1], [1, 1]) == 0

    def test_symplectic_product_bad_lengths(self):
        """Test odd or unequal lengths are rejected."""
        with pytest.raises(ValueError):
            symplectic_product([1, 0, 1], [1, 0, 1])

    def test_form_is_symplectic(self):
        """Test the form itself is symplectic."""
        assert is_symplectic(symplectic_form(3))
        assert not is_symplectic(BitMatrix(["10", "00"]))

    def test_standard_form_logicals(self):
        """Test the CSS standard form gives a symplectic logical pair."""
        h = BitMatrix(["11110000", "00001111"])
        sf = standard_form(h, css=True)
        lx, lz = sf.css_logicals()
        assert sf.k == 2
        assert (lx @ lz.T).is_identity()
        assert lx.shape == (2, 4)
        assert (lx @ BitMatrix(["1111"]).T).is_zero()


class TestBlockDecompositions:
    """Test suite for block PLDU and sum splitting."""

    def test_pldu_reconstructs(self, rng):
        """Test P·L·D·U recovers random invertible matrices."""
        for _ in range(30):
            x = random_invertible(6, rng)
            assert block_pldu(x, 3).product() == x

    def test_pldu_singular_block(self):
        """Test PLDU handles a zero leading block via the row permutation."""
        eye, zero = BitMatrix.identity(2), BitMatrix.zeros(2, 2)
        x = BitMatrix.block([[zero, eye], [eye, zero]])
        factors = block_pldu(x, 2)
        assert factors.product() == x
        assert is_invertible(factors.c1) and is_invertible(factors.c2)

    def test_pldu_rejects_singular(self):
        """Test singular input is rejected."""
        with pytest.raises(ValueError, match="invertible"):
            block_pldu(BitMatrix.zeros(4, 4), 2)

    def test_gl_sum_split_all_k2(self):
        """Test every 2x2 matrix splits into two invertible summands."""
        for value in range(16):
            u = BitMatrix([[value & 1, value >> 1 & 1], [value >> 2 & 1, value >> 3 & 1]])
            u1, u2 = gl_sum_split(u)
            assert is_invertible(u1) and is_invertible(u2)
            assert u1 + u2 == u

    def test_gl_sum_split_k1_one(self):
        """Test [1] has no split over F2."""
        with pytest.raises(ValueError):
            gl_sum_split(BitMatrix([[1]]))

    def test_gl_sum_split_zero_k1(self):
        """Test [0] splits as [1] + [1]."""
        u1, u2 = gl_sum_split(BitMatrix([[0]]))
        assert u1.to_strings() == ["1"] and u2.to_strings() == ["1"]

    def test_iter_gl_count(self):
        """Test GL(3,F2) enumeration size."""
        assert gl_order(3) == 168
        assert sum(1 for _ in iter_gl(3)) == 168

    def test_elementary(self):
        """Test the elementary matrix I + E_rc."""
        assert elementary(2, 0, 1).to_strings() == ["11", "01"]
