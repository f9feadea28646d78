"""
Tests for the tableau module: circuits, exact Pauli conjugation and logical actions.
"""

import pytest

from phantomqec.codes import PauliOp
from phantomqec.enums import GateKind
from phantomqec.tableau import (
    Circuit,
    CliffordTableau,
    Gate,
    circuit_symplectic,
    conjugate_pauli,
    gate_symplectic,
    logical_action,
    verify_claim,
)


class TestCircuit:
    """Test suite for the Circuit container."""

    def test_chaining(self):
        """Test builder methods chain and count gates."""
        circuit = Circuit().h(0).cnot(0, 1).perm([1, 0])
        assert len(circuit) == 3
        assert circuit.max_qubit() == 1

    def test_repeated_target_rejected(self):
        """Test a two-qubit gate on one qubit is rejected."""
        with pytest.raises(ValueError, match="Repeated target"):
            Circuit().cnot(1, 1)

    def test_perm_needs_bijection(self):
        """Test PERM rejects non-bijections."""
        with pytest.raises(ValueError, match="bijection"):
            Circuit().perm([0, 0])

    def test_list_round_trip(self):
        """Test circuit JSON round trip."""
        circuit = Circuit().s(0).cz(0, 1).perm([1, 0])
        again = Circuit.from_list(circuit.to_list())
        assert [g.kind for g in again] == [GateKind.S, GateKind.CZ, GateKind.PERM]
        assert again.gates[-1].targets == (1, 0)

    def test_unknown_gate_name(self):
        """Test unknown gate names are rejected."""
        with pytest.raises(ValueError, match="Unknown gate"):
            Circuit.from_list([{"gate": "T", "targets": [0]}])


class TestConjugation:
    """Test suite for exact conjugation rules."""

    @pytest.mark.parametrize("gate,before,after", [
        (Gate(GateKind.H, (0,)), "X", "+Z"),
        (Gate(GateKind.H, (0,)), "Y", "-Y"),
        (Gate(GateKind.S, (0,)), "X", "+Y"),
        (Gate(GateKind.S, (0,)), "Y", "-X"),
        (Gate(GateKind.SDG, (0,)), "X", "-Y"),
        (Gate(GateKind.X, (0,)), "Z", "-Z"),
        (Gate(GateKind.Z, (0,)), "X", "-X"),
    ])
    def test_single_qubit_rules(self, gate, before, after):
        """Test single-qubit conjugation signs."""
        assert str(conjugate_pauli(PauliOp.from_string(before), gate)) == after

    def test_cnot_rules(self):
        """Test CNOT spreads X forward and Z backward."""
        cnot = Gate(GateKind.CNOT, (0, 1))
        assert str(conjugate_pauli(PauliOp.from_string("XI"), cnot)) == "+XX"
        assert str(conjugate_pauli(PauliOp.from_string("IZ"), cnot)) == "+ZZ"

    def test_cz_rule(self):
        """Test CZ maps XI to XZ."""
        cz = Gate(GateKind.CZ, (0, 1))
        assert str(conjugate_pauli(PauliOp.from_string("XI"), cz)) == "+XZ"

    def test_perm_moves_qubits(self):
        """Test PERM sends qubit i to images[i]."""
        circuit = Circuit().perm([2, 0, 1])
        assert str(conjugate_pauli(PauliOp.from_string("XIZ"), circuit)) == "+IZX"

    def test_out_of_range(self):
        """Test gates beyond the register are rejected."""
        with pytest.raises(ValueError, match="out of range"):
            conjugate_pauli(PauliOp.from_string("X"), Gate(GateKind.H, (3,)))

    def test_tableau_commutation_preserved(self):
        """Test a Clifford circuit keeps the tableau commutation relations."""
        circuit = Circuit().h(0).s(1).cnot(0, 2).cz(1, 2).swap(0, 1)
        tableau = CliffordTableau.identity(3).apply(circuit)
        assert tableau.commutation_ok()
        assert tableau != CliffordTableau.identity(3)

    def test_hadamard_tableau(self):
        """Test H turns the Z stabilizer into X."""
        tableau = CliffordTableau.identity(1).conjugate(Gate(GateKind.H, (0,)))
        assert str(tableau.stabilizer(0)) == "+X"
        assert str(tableau.destabilizer(0)) == "+Z"


class TestLogicalAction:
    """Test suite for induced logical maps."""

    def test_gate_symplectic_cnot(self):
        """Test the row-convention CNOT symplectic."""
        assert gate_symplectic(2, "CNOT", 0, 1).to_strings() == ["1100", "0100", "0010", "0011"]

    def test_circuit_symplectic_identity(self):
        """Test the empty circuit has identity action."""
        assert circuit_symplectic(Circuit(), 3).is_identity()

    def test_identity_action(self, code_422):
        """Test the empty circuit acts trivially on [[4,2,2]]."""
        action = logical_action(code_422, Circuit())
        assert action.f.is_identity()
        assert action.preserved and action.pauli_free

    def test_permutation_cnot(self, code_422):
        """Test the (0 2) transposition implements CNOT from logical 0 to 1."""
        target = gate_symplectic(2, "CNOT", 0, 1)
        assert verify_claim(code_422, Circuit().perm([2, 1, 0, 3]), target)

    def test_transversal_hadamard_swaps(self, code_422):
        """Test transversal H on [[4,2,2]] preserves the codespace."""
        circuit = Circuit()
        for q in range(4):
            circuit.h(q)
        action = logical_action(code_422, circuit)
        assert action.preserved
        assert not action.f.is_identity()

    def test_cyclic_shift_perfect_code(self):
        """Test the cyclic shift of [[5,1,3]] is a sign-free logical identity."""
        from phantomqec.construct import five_one_three

        action = logical_action(five_one_three(), Circuit().perm([1, 2, 3, 4, 0]))
        assert action.preserved
        assert action.f.is_identity() and action.pauli_free

    def test_codespace_violation(self, code_422):
        """Test a single H leaves the codespace."""
        assert not logical_action(code_422, Circuit().h(0)).preserved
        assert not verify_claim(code_422, Circuit().h(0), gate_symplectic(2, "CNOT", 0, 1))

    def test_pauli_frame(self, code_422):
        """Test a logical Pauli shows up as a sign and is ignored up to Pauli."""
        # X on qubits 1 and 2 is X̄ on logical 0 in the standard-form basis
        circuit = Circuit().x(1).x(2)
        identity = gate_symplectic(2, "PERM", 0, 1)
        action = logical_action(code_422, circuit)
        assert action.f == identity
        assert not action.pauli_free
        assert verify_claim(code_422, circuit, identity, up_to_pauli=True)
        assert not verify_claim(code_422, circuit, identity)
