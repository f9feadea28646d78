"""
Tests for the gates module: automorphism Cliffords, diagonal gates over Z_{2^l} and
fold gates through the embedded code.
"""

import numpy as np
import pytest

from phantomqec.codes import CssCode, PauliOp
from phantomqec.config import CutoffExceeded
from phantomqec.construct import FoldCircuit, fold_involution, hypercube, phantom_qrm, trivial
from phantomqec.enums import FoldKind, LocalClifford
from phantomqec.gates import (
    ExtendedCheckMatrix,
    PhasePolynomial,
    RotationAssignment,
    automorphism_gates,
    diagonal_gates,
    embedded_code,
    fold_gates,
    gate_report,
    howell_form,
    is_diagonal_logical,
    kernel_mod,
    logical_phase_poly,
    parity_expansion,
    pauli_fix,
    phase_invariance_check,
    solve_mod,
    statevector_diagonal_check,
)
from phantomqec.tableau import Circuit, logical_action

# T on even-weight points of the cube, T† on odd ones
CUBE_CCZ = [1, 7, 7, 1, 7, 1, 1, 7]


class TestModularAlgebra:
    """Test suite for Z_{2^l} linear algebra."""

    def test_howell_form(self):
        """Test the Howell form adds the annihilator row."""
        assert howell_form([[2, 2]], 4).tolist() == [[2, 2]]
        assert howell_form([[2, 1]], 4).tolist() == [[2, 1], [0, 2]]

    def test_modulus_must_be_power_of_two(self):
        """Test odd moduli are rejected."""
        with pytest.raises(ValueError, match="power of two"):
            howell_form([[1]], 6)

    def test_kernel(self):
        """Test every kernel row annihilates the matrix."""
        matrix = np.array([[1, 1, 2], [0, 2, 2]])
        kernel = kernel_mod(matrix, 4)
        assert kernel_mod([[1, 1]], 4).tolist() == [[1, 3]]
        assert not (matrix @ kernel.T % 4).any()

    def test_solve(self):
        """Test solvable and unsolvable systems."""
        assert solve_mod([[2]], [2], 4).tolist() == [1]
        assert solve_mod([[2]], [1], 4) is None

    @pytest.mark.parametrize("values", [[1, 1, 1], [1, 0, 1, 1], [0, 0], [1]])
    def test_parity_expansion(self, values):
        """Test the expansion reproduces XOR on binary inputs."""
        assert parity_expansion(values, 8) == sum(values) % 2


class TestAutomorphismGates:
    """Test suite for automorphism Clifford search."""

    def test_extended_matrix(self):
        """Test the three-block layout."""
        ext = ExtendedCheckMatrix.from_code(CssCode(["11"], ["11"]))
        assert ext.data.to_strings() == ["110011", "001111"]

    def test_422_count(self, code_422):
        """Test the full automorphism group of [[4,2,2]]."""
        search = automorphism_gates(code_422)
        assert len(search) == 144
        assert search.complete and not search.generators_only

    def test_trivial_count(self):
        """Test every permutation with every local Clifford preserves [[2,2,1]]."""
        assert len(automorphism_gates(trivial(2))) == 72

    def test_gates_verified(self, code_422):
        """Test each found circuit reproduces its recorded logical action."""
        for gate in list(automorphism_gates(code_422))[:20]:
            action = logical_action(code_422, gate.circuit)
            assert action.preserved
            assert action.f == gate.f

    def test_limit(self, code_422):
        """Test a stopped search is flagged incomplete."""
        search = automorphism_gates(code_422, limit=10)
        assert len(search) == 10
        assert not search.complete

    def test_identity_permutation_only(self, code_422):
        """Test transversal gates of [[4,2,2]]."""
        search = automorphism_gates(code_422, identity_permutation=True, uniform=True)
        locals_found = {gate.local[0] for gate in search}
        assert LocalClifford.I in locals_found and LocalClifford.H in locals_found

    def test_transversal_hadamard(self):
        """Test H on all four qubits of [[4,2,2]] is H̄⊗H̄ followed by a logical SWAP."""
        code = CssCode(["1111"], ["1111"], lx=["1001", "1100"], lz=["1100", "1001"])
        expected = logical_action(trivial(2), Circuit().h(0).h(1).swap(0, 1)).f
        search = automorphism_gates(code, identity_permutation=True, uniform=True)
        hadamards = [gate for gate in search if gate.local[0] == LocalClifford.H]
        assert len(hadamards) == 1
        assert hadamards[0].f == expected

    def test_budget(self, code_422, config):
        """Test the open search respects automorphism_max_n."""
        config.configure(automorphism_max_n=3)
        with pytest.raises(CutoffExceeded):
            automorphism_gates(code_422, config=config)

    def test_pauli_fix_identity(self, code_422):
        """Test the empty circuit needs no fix."""
        assert pauli_fix(code_422, Circuit()) == PauliOp.identity(4)

    def test_pauli_fix_restores_signs(self, code_422):
        """Test a Z error flips the X check and is undone."""
        fix = pauli_fix(code_422, Circuit().z(0))
        assert fix.weight > 0

    def test_perfect_code_shift_needs_no_fix(self):
        """Test the [[5,1,3]] cyclic shift comes back with an identity Pauli fix."""
        from phantomqec.construct import five_one_three

        shift = (1, 2, 3, 4, 0)
        search = automorphism_gates(five_one_three(), candidates=[list(shift)], uniform=True)
        plain = [g for g in search if g.permutation == shift and g.local[0] == LocalClifford.I]
        assert len(plain) == 1
        assert plain[0].pauli_fix == PauliOp.identity(5)
        assert plain[0].f.is_identity() and not any(plain[0].signs)

    def test_pauli_fix_rejects(self, code_422):
        """Test a circuit leaving the stabilizer group is rejected."""
        with pytest.raises(ValueError, match="does not preserve"):
            pauli_fix(code_422, Circuit().h(0))

    def test_report(self, code_422):
        """Test the automorphism report layout."""
        report = gate_report(automorphism_gates(code_422, limit=1).gates[0])
        assert report["kind"] == "automorphism"
        assert set(report) == {"kind", "physical", "logical"}


class TestDiagonalGates:
    """Test suite for transversal Z-rotation gates."""

    def test_rotation_validation(self):
        """Test level and range checks."""
        with pytest.raises(ValueError, match="Level"):
            RotationAssignment((0,), 5)
        with pytest.raises(ValueError, match="Rotation powers"):
            RotationAssignment((4,), 2)

    def test_rotation_circuit(self):
        """Test level-2 powers become S, Z and S†."""
        circuit = RotationAssignment((1, 2, 3, 0), 2).to_circuit()
        assert [g.kind.name for g in circuit] == ["S", "Z", "SDG"]
        with pytest.raises(ValueError, match="not Clifford"):
            RotationAssignment((1,), 3).to_circuit()

    def test_polynomial_str(self):
        """Test coefficients reduce and order by degree."""
        assert str(PhasePolynomial(8, {(0, 1, 2): 12, (1,): 8})) == "4x1x2x3 (mod 8)"
        assert PhasePolynomial(4).is_zero()

    def test_422_phase_poly(self, code_422):
        """Test S S† S† S on [[4,2,2]]."""
        assert str(logical_phase_poly([1, 3, 3, 1], code_422, 2)) == "2x1 + 2x1x2 (mod 4)"

    def test_codespace_check(self, code_422):
        """Test a single S does not preserve the codespace."""
        assert is_diagonal_logical(code_422, [1, 3, 3, 1], 2)
        assert not is_diagonal_logical(code_422, [1, 0, 0, 0], 2)
        with pytest.raises(ValueError, match="does not preserve"):
            logical_phase_poly([1, 0, 0, 0], code_422, 2)

    def test_cube_ccz(self):
        """Test alternating T and T† on the cube is logical CCZ."""
        code = hypercube(3)
        poly = logical_phase_poly(CUBE_CCZ, code, 3)
        assert str(poly) == "4x1x2x3 (mod 8)"
        assert poly.degree == 3
        assert phase_invariance_check(code, CUBE_CCZ, 3, seed=1)
        assert statevector_diagonal_check(code, CUBE_CCZ, poly, 3)

    def test_cube_generators_isolate_ccz(self):
        """Test the level-3 generators of the cube include a pure 4x1x2x3."""
        code = hypercube(3)
        gates = diagonal_gates(code, level=3)
        pure = [g for g in gates if str(g.polynomial) == "4x1x2x3 (mod 8)"]
        assert pure
        assert statevector_diagonal_check(code, pure[0].rotation.gamma, pure[0].polynomial, 3)
        for gate in gates:
            assert is_diagonal_logical(code, gate.rotation.gamma, 3)

    def test_statevector_rejects_wrong_poly(self):
        """Test the dense check notices a wrong polynomial."""
        assert not statevector_diagonal_check(hypercube(3), CUBE_CCZ, PhasePolynomial(8), 3)

    def test_generators_are_logical(self, code_422):
        """Test each kernel generator preserves the codespace."""
        gates = diagonal_gates(code_422, level=2)
        assert gates
        for gate in gates:
            assert is_diagonal_logical(code_422, gate.rotation.gamma, 2)
            assert statevector_diagonal_check(code_422, gate.rotation.gamma, gate.polynomial, 2)

    def test_non_css_rejected(self):
        """Test stabilizer codes are rejected."""
        from phantomqec.construct import five_one_three

        with pytest.raises(ValueError, match="CSS"):
            diagonal_gates(five_one_three())

    def test_level_range(self, code_422):
        """Test levels outside 1..4 are rejected."""
        with pytest.raises(ValueError, match="Level"):
            diagonal_gates(code_422, level=0)

    def test_statevector_budget(self, code_422, config):
        """Test the dense check respects statevector_max_n."""
        config.configure(statevector_max_n=2)
        with pytest.raises(CutoffExceeded):
            statevector_diagonal_check(code_422, [1, 3, 3, 1], PhasePolynomial(4), 2, config)


class TestFoldGates:
    """Test suite for fold gates through the embedded code."""

    def test_embedded_code(self, code_422):
        """Test one ancilla per pair."""
        assert embedded_code(code_422).parameters() == "[[10,2]]"
        assert embedded_code(code_422, [(0, 3)]).n == 5

    def test_embedded_rejects_pairs(self, code_422):
        """Test repeated or out-of-range pairs are rejected."""
        with pytest.raises(ValueError, match="Invalid qubit pairs"):
            embedded_code(code_422, [(0, 1), (1, 0)])

    def test_422_folds(self, code_422):
        """Test every fold found on [[4,2,2]] is a verified non-Pauli logical gate."""
        folds = fold_gates(code_422)
        assert folds
        for fold in folds:
            assert isinstance(fold, FoldCircuit)
            action = logical_action(code_422, fold.to_circuit())
            assert action.preserved
            assert fold.logical == action.f
            assert not action.f.is_identity()

    @pytest.mark.slow
    def test_qrm_fold_search_matches_ss_fold(self):
        """Test the fold search on [[16,3,4]] finds the SS fold's action, S̄ on two logical qubits."""
        code = phantom_qrm(4, 2)
        action = logical_action(code, fold_involution(code, FoldKind.SS).to_circuit())
        assert action.preserved
        two_s = [logical_action(trivial(3), Circuit().s(i).s(j)).f for i, j in ((0, 1), (0, 2), (1, 2))]
        assert action.f in two_s
        assert any(fold.logical == action.f for fold in fold_gates(code))

    def test_fold_candidates(self, code_422):
        """Test an explicit pair list restricts the search."""
        folds = fold_gates(code_422, candidates=[[(0, 3)]])
        assert all(fold.cz_pairs in ([], [(0, 3)]) for fold in folds)

    def test_level_must_be_two(self, code_422):
        """Test other levels are rejected."""
        with pytest.raises(ValueError, match="level 2"):
            fold_gates(code_422, level=3)

    def test_fold_budget(self, config):
        """Test codes beyond fold_max_n without a known fold are refused."""
        config.configure(fold_max_n=4)
        with pytest.raises(CutoffExceeded):
            fold_gates(trivial(5), config=config)

    def test_fold_report(self, code_422):
        """Test the fold report layout."""
        report = gate_report(fold_gates(code_422)[0])
        assert report["kind"] == "fold"
        assert "involution" in report["physical"]
