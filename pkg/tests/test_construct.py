"""
Tests for the construct module: GF(4) codes, Reed-Muller families, gluing and
concatenation constructions, fold circuits and the family registry.
"""

import pytest

from phantomqec.codes import CssCode, distance_css
from phantomqec.construct import (
    OMEGA,
    FoldCircuit,
    Gf4Code,
    affine_perm,
    bc_code,
    binarize,
    build_family,
    concat_422,
    concat_simple,
    connect_dual,
    connected_distance,
    double_noncss,
    five_one_three,
    fold_involution,
    fold_target,
    four_two_two,
    gf4_arith,
    glued_422,
    hgp_phantom,
    hypercube,
    monomials,
    phantom_qrm,
    punctured_fold,
    punctured_hypercube,
    qr_gf4,
    qrm,
    qrm_orbits,
    repetition,
    rm_generator,
    simplex_checks,
    trivial,
)
from phantomqec.enums import FoldKind
from phantomqec.f2linalg import BitMatrix
from phantomqec.phantom import check_perm_gateset_css, is_phantom_automorphism, is_phantom_bruteforce, is_phantom_sat
from phantomqec.enums import SolveStatus
from phantomqec.solver import SolverHandle
from phantomqec.tableau import logical_action


class TestGf4:
    """Test suite for GF(4) arithmetic and codes."""

    def test_arithmetic(self):
        """Test ω² = ω + 1 and the trace of ω."""
        assert gf4_arith(OMEGA, OMEGA, "mul") == 3
        assert gf4_arith(OMEGA, op="trace") == 1
        assert gf4_arith(1, 1, "add") == 0

    def test_arithmetic_errors(self):
        """Test unknown operations and operands are rejected."""
        with pytest.raises(ValueError, match="Unknown GF"):
            gf4_arith(1, 1, "div")
        with pytest.raises(ValueError, match="0..3"):
            gf4_arith(4, 1)

    def test_qr_generator(self):
        """Test the p=3 quadratic-residue generator."""
        assert qr_gf4(3).hx4.tolist() == [[2, 3, 1]]

    def test_qr_rejects_p(self):
        """Test primes with the wrong residue mod 8 are rejected."""
        with pytest.raises(ValueError):
            qr_gf4(17)

    def test_binarize(self):
        """Test the binary image of a one-row GF(4) code."""
        code = binarize(Gf4Code([[1, OMEGA, 3]], [[1, OMEGA, 3]]))
        assert code.hx.to_strings() == ["100111", "011110"]

    def test_non_commuting_gf4(self):
        """Test non-commuting GF(4) sectors are rejected."""
        with pytest.raises(ValueError, match="do not commute"):
            Gf4Code([[1, 0]], [[1, 1]])

    def test_bc_code(self):
        """Test the p=3 concatenated code."""
        code = bc_code(3)
        assert (code.n, code.k) == (12, 2)


class TestReedMuller:
    """Test suite for Reed-Muller based families."""

    def test_rm_generator(self):
        """Test RM(1,2) rows."""
        assert rm_generator(1, 2).to_strings() == ["1111", "0101", "0011"]

    def test_monomials(self):
        """Test the degree-2 monomials of four variables."""
        assert len(monomials(4, 2)) == 6

    def test_affine_perm(self):
        """Test an affine map as a coordinate permutation."""
        assert affine_perm(BitMatrix(["110", "010", "001"])) == [0, 1, 3, 2, 4, 5, 7, 6]

    def test_affine_perm_singular(self):
        """Test a singular linear part is rejected."""
        with pytest.raises(ValueError):
            affine_perm(BitMatrix(["110", "110", "001"]))

    def test_qrm(self):
        """Test qRM(3,1) parameters."""
        assert qrm(3, 1).parameters() == "[[8,3,(4,2)]]"
        with pytest.raises(ValueError):
            qrm(3, 3)

    def test_hypercube(self):
        """Test the square is [[4,2,2]]."""
        assert hypercube(2).parameters() == "[[4,2,2]]"

    def test_punctured_hypercube(self):
        """Test the punctured cube."""
        code = punctured_hypercube(3)
        assert code.parameters() == "[[7,3,(3,2)]]"
        assert code.rx == 1

    def test_orbits(self):
        """Test the orbit sizes of degree-3 monomials in six variables."""
        assert [len(o) for o in qrm_orbits(6, 3)] == [4, 6, 6, 4]

    def test_phantom_qrm(self):
        """Test the m=4, l=2 phantom qRM code."""
        assert phantom_qrm(4, 2).parameters() == "[[16,3,4]]"

    def test_phantom_qrm_bad_promotion(self):
        """Test promotions outside the degree are rejected."""
        with pytest.raises(ValueError):
            phantom_qrm(4, 2, promote_x=[(0,)])


class TestGluedCodes:
    """Test suite for gluing, product and concatenation constructions."""

    def test_concat_422(self):
        """Test concatenating [[2,2]] with [[4,2,2]]."""
        code = concat_422(trivial(2))
        assert code.parameters() == "[[4,2]]"
        assert distance_css(code) == (2, 2)

    def test_concat_422_odd(self):
        """Test odd n is rejected."""
        with pytest.raises(ValueError, match="even"):
            concat_422(trivial(3))

    def test_glued(self):
        """Test gluing two [[4,2,2]] blocks."""
        assert glued_422(2).parameters() == "[[8,2,(2,4)]]"

    def test_simplex_checks(self):
        """Test the k=2 simplex check."""
        assert simplex_checks(2).to_strings() == ["111"]

    def test_hgp_phantom(self):
        """Test the k=2 hypergraph product code is phantom."""
        code = hgp_phantom(2)
        assert code.parameters() == "[[7,2,2]]"
        witness = is_phantom_bruteforce(code)
        assert witness is not None
        assert check_perm_gateset_css(code, witness.claim())

    def test_concat_simple(self):
        """Test concatenation with a trivial inner code."""
        assert concat_simple(four_two_two(), trivial(1)).parameters() == "[[4,2]]"
        with pytest.raises(ValueError, match="k = 1"):
            concat_simple(four_two_two(), four_two_two())

    def test_double_noncss(self):
        """Test the CSS doubling of the five-qubit code."""
        code = double_noncss(five_one_three())
        assert isinstance(code, CssCode)
        assert code.parameters() == "[[10,2]]"

    def test_repetition(self):
        """Test repetition distances and the bit-flip dual."""
        assert distance_css(repetition(3)) == (1, 3)
        assert distance_css(repetition(3, phase_flip=False)) == (3, 1)


class TestFamilyParameters:
    """Test suite for the published parameters of the phantom families."""

    def test_connect_dual_parameters(self):
        """Test the connected [[8,3,(2,4)]] code is [[16,6,4]]."""
        primal = hypercube(3).hadamard_dual()
        code = connect_dual(primal)
        assert (code.n, code.k) == (16, 6)
        assert connected_distance(primal) == 4

    @pytest.mark.slow
    def test_connect_dual_distance(self):
        """Test the exact distance of the connected code agrees with the primal walk."""
        code = connect_dual(hypercube(3).hadamard_dual())
        assert min(distance_css(code)) == 4

    def test_connect_dual_unequal_ranks(self):
        """Test primals with rx != rz connect."""
        primal = punctured_hypercube(3)
        code = connect_dual(primal)
        assert (code.n, code.k) == (14, 6)
        assert code.rx == primal.rx + primal.rz

    @pytest.mark.parametrize("code,dx,dz", [
        (glued_422(2), 2, 4),
        (punctured_hypercube(3), 3, 2),
        (hgp_phantom(2), 2, 2),
    ])
    def test_small_phantom_families(self, code, dx, dz):
        """Test distances and phantomness of the families small enough for the automorphism route."""
        assert distance_css(code) == (dx, dz)
        assert is_phantom_automorphism(code)

    @pytest.mark.slow
    @pytest.mark.parametrize("code,d", [
        (bc_code(3), 4),
        (bc_code(5), 6),
        (phantom_qrm(4, 2), 4),
    ])
    def test_large_phantom_families(self, code, d):
        """Test distances and SAT phantomness of the larger families."""
        assert min(distance_css(code)) == d
        result = is_phantom_sat(code, SolverHandle.internal(timeout=600))
        assert result.status == SolveStatus.SAT


class TestFolds:
    """Test suite for fold circuits."""

    def test_fold_circuit_validation(self):
        """Test non-involutions and overlapping supports are rejected."""
        with pytest.raises(ValueError, match="involution"):
            FoldCircuit(3, [1, 2, 0])
        with pytest.raises(ValueError, match="overlap"):
            FoldCircuit(2, [1, 0], s_qubits=[0], cz_pairs=[(0, 1)])

    def test_from_pairs(self):
        """Test zero S powers are dropped."""
        fold = FoldCircuit.from_pairs(4, [(2, 0)], {1: 1, 3: 4})
        assert fold.cz_pairs == [(0, 2)]
        assert fold.s_qubits == [1]
        assert fold.involution == [2, 1, 0, 3]

    def test_fold_target(self):
        """Test the CZ fold target."""
        assert fold_target(FoldKind.CZ, 2).to_strings() == ["1001", "0110", "0010", "0001"]

    def test_fold_involution_shape(self):
        """Test the SS fold of the m=4, l=2 phantom qRM code."""
        fold = fold_involution(phantom_qrm(4, 2), FoldKind.SS)
        assert fold.involution[0] == 15
        assert len(fold.s_qubits) == 4

    @pytest.mark.parametrize("kind", [FoldKind.SS, FoldKind.CZ])
    def test_hypercube_fold_action(self, kind):
        """Test hypercube folds are non-trivial logical gates."""
        code = hypercube(2)
        fold = fold_involution(code, kind)
        action = logical_action(code, fold.to_circuit())
        assert action.preserved
        assert not action.f.is_identity()

    def test_fold_needs_family(self):
        """Test codes without qRM metadata are rejected."""
        with pytest.raises(ValueError, match="phantom qRM"):
            fold_involution(CssCode(["1111"], ["1111"]))

    def test_punctured_fold(self):
        """Test the punctured cube fold supports."""
        fold = punctured_fold(punctured_hypercube(3))
        assert fold.s_qubits == [3, 6]
        assert fold.cz_pairs == [(4, 5)]


class TestRegistry:
    """Test suite for the family registry."""

    def test_build_family(self):
        """Test hyphenated names resolve."""
        assert build_family("phantom-qrm", m=4, l=2).parameters() == "[[16,3,4]]"

    def test_unknown_family(self):
        """Test unknown names are rejected."""
        with pytest.raises(ValueError, match="Unknown family"):
            build_family("surface")

    def test_bad_parameters(self):
        """Test wrong keyword arguments are reported as ValueError."""
        with pytest.raises(ValueError, match="Bad parameters"):
            build_family("hypercube", m=3)
