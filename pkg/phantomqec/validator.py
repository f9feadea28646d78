"""
Phantom QEC Toolkit - Validator Module

Validation of user-supplied inputs (code JSON, permutations, circuits, schedules,
search parameters) before they reach the algorithms. Validators never raise; they
return (is_valid, message) so the CLI can report a diagnostic and exit cleanly.
"""

from mylogger import logger
from typing import Any, Dict, Tuple

from .codes import CssCode, StabilizerCode


logger.info("Loading validator module")


class CodeValidator:
    """
    Validation utilities class.

    Provides validation methods for:
    - Code JSON objects (CSS and general stabilizer)
    - Bit strings and bit matrices
    - Qubit permutations
    - Logical CNOT circuits, physical schedules and phantom witnesses
    - Block lengths, distances and hierarchy levels
    """

    def __init__(self):
        self._validation_rules = self._initialize_rules()
        logger.debug("CodeValidator initialized")

    def _initialize_rules(self) -> Dict[str, Any]:
        return {
            'n': {'min': 1, 'max': 4096},
            'distance': {'min': 1, 'max': 1024},
            'level': {'min': 1, 'max': 4},
            'blocks': {'min': 1, 'max': 1024},
        }

    def validate(self, validation_type: str, value: Any, **kwargs) -> Tuple[bool, str]:
        """
        Master validation method that routes to specific validators.

        Args:
            validation_type: One of 'code', 'bitstring', 'matrix', 'permutation', 'circuit',
                'schedule', 'witness', 'n', 'distance', 'level', 'blocks'
            value: Value to validate
            **kwargs: n for bitstrings and permutations, k for witnesses

        Returns:
            Tuple of (is_valid, error_message)

        Example:
            >>> CodeValidator().validate('permutation', [1, 0, 2])
            (True, '')
            >>> CodeValidator().validate('bitstring', '10a', n=3)[0]
            False
        """
        try:
            if validation_type == 'code':
                return self._validate_code(value)
            elif validation_type == 'bitstring':
                return self._validate_bitstring(value, kwargs.get('n'))
            elif validation_type == 'matrix':
                return self._validate_matrix(value, kwargs.get('n'))
            elif validation_type == 'permutation':
                return self._validate_permutation(value, kwargs.get('n'))
            elif validation_type == 'circuit':
                return self._validate_circuit(value)
            elif validation_type == 'schedule':
                return self._validate_schedule(value)
            elif validation_type == 'witness':
                return self._validate_witness(value, kwargs.get('k'))
            elif validation_type in self._validation_rules:
                return self._validate_range(validation_type, value)
            else:
                return False, f"Unknown validation type: {validation_type}"

        except Exception as e:
            logger.error(f"Validation error: {e}")
            return False, str(e)

    def _validate_range(self, name: str, value: Any) -> Tuple[bool, str]:
        rule = self._validation_rules[name]
        if isinstance(value, bool) or not isinstance(value, int):
            return False, f"{name} must be an integer"
        if value < rule['min'] or value > rule['max']:
            return False, f"{name} must be between {rule['min']} and {rule['max']}"
        return True, ""

    def _validate_bitstring(self, value: Any, n: Any = None) -> Tuple[bool, str]:
        """Validate a '0'/'1' string, optionally of length n."""
        if not isinstance(value, str) or not value:
            return False, "Bit string must be a non-empty string"
        if set(value) - {"0", "1"}:
            return False, f"Bit string contains characters other than 0/1: '{value}'"
        if n is not None and len(value) != n:
            return False, f"Bit string has length {len(value)}, expected {n}"
        return True, ""

    def _validate_matrix(self, value: Any, n: Any = None) -> Tuple[bool, str]:
        """Validate a list of equal-length bit strings (an empty list is valid)."""
        if not isinstance(value, list):
            return False, "Matrix must be a list of bit strings"
        width = n if n is not None else (len(value[0]) if value and isinstance(value[0], str) else None)
        for i, row in enumerate(value):
            ok, msg = self._validate_bitstring(row, width)
            if not ok:
                return False, f"Row {i}: {msg}"
        return True, ""

    def _validate_permutation(self, value: Any, n: Any = None) -> Tuple[bool, str]:
        """
        Validate a permutation given as a list of images.

        Returns:
            Tuple of (is_valid, error_message)
        """
        if not isinstance(value, (list, tuple)):
            return False, "Permutation must be a list of integers"
        if any(isinstance(v, bool) or not isinstance(v, int) for v in value):
            return False, "Permutation entries must be integers"
        if sorted(value) != list(range(len(value))):
            return False, f"Not a permutation of 0..{len(value) - 1}: {list(value)}"
        if n is not None and len(value) != n:
            return False, f"Permutation has length {len(value)}, expected {n}"
        return True, ""

    def _validate_code(self, value: Any) -> Tuple[bool, str]:
        """Validate a code JSON object; parsing checks stabilizer commutation."""
        if not isinstance(value, dict):
            return False, "Code JSON must be an object"
        if "h" in value and "hx" not in value:
            ok, msg = self._validate_matrix(value["h"])
            if not ok:
                return False, f"h: {msg}"
            StabilizerCode.from_dict(value)
            return True, ""
        for key in ("hx", "hz"):
            if key not in value:
                return False, f"Code JSON is missing '{key}'"
        n = value.get("n")
        for key in ("hx", "hz", "lx", "lz"):
            if key in value and value[key] is not None:
                ok, msg = self._validate_matrix(value[key], n)
                if not ok:
                    return False, f"{key}: {msg}"
        try:
            CssCode.from_dict(value)
        except ValueError as e:
            return False, str(e)
        return True, ""

    def _validate_circuit(self, value: Any) -> Tuple[bool, str]:
        """Validate logical CNOT circuit JSON."""
        from .compile import LogicalCnotCircuit

        if not isinstance(value, dict):
            return False, "Circuit JSON must be an object"
        for key in ("blocks", "k"):
            if key not in value:
                return False, f"Circuit JSON is missing '{key}'"
        ok, msg = self._validate_range('blocks', value["blocks"])
        if not ok:
            return False, msg
        try:
            LogicalCnotCircuit.from_dict(value)
        except ValueError as e:
            return False, str(e)
        return True, ""

    def _validate_schedule(self, value: Any) -> Tuple[bool, str]:
        """Validate physical schedule JSON."""
        from .compile import PhysicalSchedule

        if not isinstance(value, dict):
            return False, "Schedule JSON must be an object"
        try:
            PhysicalSchedule.from_dict(value)
        except ValueError as e:
            return False, str(e)
        return True, ""

    def _validate_witness(self, value: Any, k: Any = None) -> Tuple[bool, str]:
        """Validate phantom witness JSON: every ordered pair of k logicals needs a permutation."""
        if not isinstance(value, dict) or "pairs" not in value:
            return False, "Witness JSON must be an object with 'pairs'"
        seen = set()
        for item in value["pairs"]:
            ok, msg = self._validate_permutation(item.get("perm"))
            if not ok:
                return False, f"CNOT{item.get('control')}{item.get('target')}: {msg}"
            seen.add((item.get("control"), item.get("target")))
        if k is not None:
            missing = [(a, b) for a in range(k) for b in range(k) if a != b and (a, b) not in seen]
            if missing:
                return False, f"Witness lacks CNOT permutations for {missing}"
        return True, ""
