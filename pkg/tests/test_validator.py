"""
Unit tests for CodeValidator.

Tests validation of user inputs before they reach the algorithms:
- Bit strings and bit matrices
- Qubit permutations
- CSS and stabilizer code JSON
- Logical CNOT circuits, schedules and phantom witnesses
- Numeric ranges
"""

import pytest

from phantomqec.construct import five_one_three, steane
from phantomqec.validator import CodeValidator


@pytest.fixture
def validator():
    """Fresh validator instance."""
    return CodeValidator()


class TestBitstringValidation:
    """Test suite for bit strings and matrices."""

    def test_valid(self, validator):
        """Test a valid bit string of the right length."""
        assert validator.validate('bitstring', '1010', n=4) == (True, "")

    @pytest.mark.parametrize("value", ["", "10a", 1010, None])
    def test_invalid(self, validator, value):
        """Test empty, non-binary and non-string values."""
        ok, msg = validator.validate('bitstring', value)
        assert not ok and msg

    def test_wrong_length(self, validator):
        """Test a length mismatch is reported."""
        ok, msg = validator.validate('bitstring', '101', n=4)
        assert not ok
        assert "expected 4" in msg

    def test_matrix(self, validator):
        """Test ragged rows are rejected and an empty matrix is accepted."""
        assert validator.validate('matrix', ['110', '011'])[0]
        assert validator.validate('matrix', [])[0]
        ok, msg = validator.validate('matrix', ['110', '01'])
        assert not ok and msg.startswith("Row 1")

    def test_matrix_type(self, validator):
        """Test a bare string is not a matrix."""
        assert not validator.validate('matrix', '110')[0]


class TestPermutationValidation:
    """Test suite for permutations."""

    def test_valid(self, validator):
        """Test a valid permutation."""
        assert validator.validate('permutation', [2, 0, 1], n=3) == (True, "")

    def test_repeated_image(self, validator):
        """Test a non-bijective list is rejected."""
        ok, msg = validator.validate('permutation', [0, 0, 1])
        assert not ok and "Not a permutation" in msg

    def test_non_integer(self, validator):
        """Test booleans and strings are rejected."""
        assert not validator.validate('permutation', [True, False])[0]
        assert not validator.validate('permutation', ["0", "1"])[0]

    def test_wrong_length(self, validator):
        """Test n is enforced."""
        assert not validator.validate('permutation', [1, 0], n=3)[0]


class TestCodeValidation:
    """Test suite for code JSON."""

    def test_css(self, validator, code_422):
        """Test a serialized CSS code passes."""
        assert validator.validate('code', code_422.to_dict()) == (True, "")
        assert validator.validate('code', steane().to_dict())[0]

    def test_missing_sector(self, validator):
        """Test a missing hz is reported."""
        ok, msg = validator.validate('code', {"hx": ["11"]})
        assert not ok and "'hz'" in msg

    def test_width_mismatch(self, validator):
        """Test rows that disagree with the declared n."""
        ok, msg = validator.validate('code', {"n": 5, "hx": ["1111"], "hz": ["1111"]})
        assert not ok and msg.startswith("hx:")

    def test_non_commuting(self, validator):
        """Test Hx·Hzᵀ ≠ 0 is rejected."""
        ok, msg = validator.validate('code', {"hx": ["10"], "hz": ["11"]})
        assert not ok and "commute" in msg

    def test_declared_k(self, validator):
        """Test a wrong declared k is rejected."""
        ok, msg = validator.validate('code', {"hx": ["1111"], "hz": ["1111"], "k": 3})
        assert not ok and "k=2" in msg

    def test_stabilizer(self, validator):
        """Test a general stabilizer code passes through the h path."""
        assert validator.validate('code', five_one_three().to_dict())[0]

    def test_stabilizer_non_commuting(self, validator):
        """Test anticommuting stabilizer rows are rejected."""
        ok, msg = validator.validate('code', {"h": ["1000", "0010"]})
        assert not ok and "commute" in msg

    def test_not_an_object(self, validator):
        """Test a list is not code JSON."""
        assert not validator.validate('code', ["1111"])[0]


class TestCircuitValidation:
    """Test suite for circuits, schedules and witnesses."""

    def test_circuit(self, validator):
        """Test a valid logical CNOT circuit."""
        payload = {"blocks": 2, "k": 2, "cnots": [[[0, 0], [1, 1]]]}
        assert validator.validate('circuit', payload) == (True, "")

    def test_circuit_missing_key(self, validator):
        """Test k is required."""
        ok, msg = validator.validate('circuit', {"blocks": 2})
        assert not ok and "'k'" in msg

    def test_circuit_out_of_range(self, validator):
        """Test a CNOT naming a missing block."""
        payload = {"blocks": 2, "k": 2, "cnots": [[[0, 0], [2, 0]]]}
        assert not validator.validate('circuit', payload)[0]

    def test_circuit_block_range(self, validator):
        """Test zero blocks is out of range."""
        assert not validator.validate('circuit', {"blocks": 0, "k": 2})[0]

    def test_schedule(self, validator):
        """Test a one-layer schedule."""
        payload = {"blocks": 2, "k": 2, "residual": [0, 1, 2, 3],
                   "layers": [{"kind": "transversal", "pairs": [{"control": 0, "target": 1}]}]}
        assert validator.validate('schedule', payload) == (True, "")

    def test_schedule_bad_residual(self, validator):
        """Test a residual that is not a permutation."""
        ok, msg = validator.validate('schedule', {"blocks": 2, "k": 2, "layers": [], "residual": [0, 0, 1, 2]})
        assert not ok and "not a permutation" in msg

    def test_witness(self, validator, witness_422):
        """Test a complete witness for k=2."""
        assert validator.validate('witness', witness_422.to_dict(), k=2) == (True, "")

    def test_witness_incomplete(self, validator, witness_422):
        """Test missing directions are listed."""
        ok, msg = validator.validate('witness', witness_422.to_dict(), k=3)
        assert not ok and "lacks" in msg

    def test_witness_bad_perm(self, validator):
        """Test a non-permutation entry is reported with its CNOT."""
        ok, msg = validator.validate('witness', {"pairs": [{"control": 0, "target": 1, "perm": [0, 0]}]})
        assert not ok and msg.startswith("CNOT01")


class TestRangeValidation:
    """Test suite for numeric ranges."""

    @pytest.mark.parametrize("name,value,ok", [
        ('n', 4, True), ('n', 0, False), ('distance', 2, True),
        ('level', 4, True), ('level', 5, False), ('blocks', 1.5, False), ('n', True, False),
    ])
    def test_ranges(self, validator, name, value, ok):
        """Test bounds and integer checks."""
        assert validator.validate(name, value)[0] is ok

    def test_unknown_type(self, validator):
        """Test unknown validation types are reported."""
        ok, msg = validator.validate('surface', 1)
        assert not ok and "Unknown validation type" in msg
