"""
Tests for the codes module: Pauli operators, CSS and stabilizer codes, distances,
logical classes and the phantom Hamming bound.
"""

import pytest

from phantomqec.codes import (
    CssCode,
    DistanceBound,
    PauliOp,
    StabilizerCode,
    WeightVector,
    check_hamming_bound,
    distance_css,
    distance_stabilizer,
    hamming_B,
    johnson_bound,
    logical_basis_css,
    logical_class_table,
    logical_class_weights,
    parse_logical_label,
    uniform_weight_check,
)
from phantomqec.config import CutoffExceeded
from phantomqec.construct import five_one_three, repetition
from phantomqec.enums import Sector
from phantomqec.f2linalg import BitMatrix


class TestPauliOp:
    """Test suite for Pauli operators."""

    def test_parse_and_print(self):
        """Test string round trip keeps the displayed sign."""
        assert str(PauliOp.from_string("-iXYZ")) == "-iXYZ"
        assert str(PauliOp.from_string("IY")) == "+IY"

    def test_parse_rejects_garbage(self):
        """Test unknown letters are rejected."""
        with pytest.raises(ValueError, match="Cannot parse"):
            PauliOp.from_string("XQ")

    def test_product_phase(self):
        """Test XZ = -iY."""
        x, z = PauliOp.from_string("X"), PauliOp.from_string("Z")
        assert str(x * z) == "-iY"
        assert str(z * x) == "+iY"

    def test_commutation(self):
        """Test commutation of two-qubit operators."""
        assert PauliOp.from_string("XX").commutes_with(PauliOp.from_string("ZZ"))
        assert not PauliOp.from_string("XI").commutes_with(PauliOp.from_string("ZI"))

    def test_weight_vector(self):
        """Test the (wx, wz, wy) split."""
        assert PauliOp.from_string("XXYZI").weight_vector() == WeightVector(2, 1, 1)
        assert PauliOp.from_string("XXYZI").weight == 4


class TestCssCode:
    """Test suite for CSS codes."""

    def test_parameters(self, code_422):
        """Test n, k and ranks of [[4,2,2]]."""
        assert (code_422.n, code_422.k, code_422.rx, code_422.rz) == (4, 2, 1, 1)
        assert code_422.parameters() == "[[4,2,2]]"

    def test_default_logical_basis(self):
        """Test the standard-form logical basis of [[4,2,2]]."""
        lx, lz = logical_basis_css(BitMatrix(["1111"]), BitMatrix(["1111"]))
        assert lx.to_strings() == ["0110", "0101"]
        assert lz.to_strings() == ["1010", "1001"]

    def test_noncommuting_rejected(self):
        """Test Hx·Hzᵀ ≠ 0 is rejected."""
        with pytest.raises(ValueError, match="do not commute"):
            CssCode(["1100"], ["1000"])

    def test_bad_logical_basis_rejected(self):
        """Test a non-symplectic logical basis is rejected."""
        with pytest.raises(ValueError, match="not symplectic"):
            CssCode(["1111"], ["1111"], lx=["1100", "1010"], lz=["1100", "1010"])

    def test_permute(self, code_422):
        """Test qubit permutation keeps k and moves logical supports."""
        code = code_422.with_logicals()
        moved = code.permute([1, 2, 3, 0])
        assert moved.k == 2
        assert moved.lx.to_strings()[0] == "0011"

    def test_permute_rejects_non_bijection(self, code_422):
        """Test a non-permutation is rejected."""
        with pytest.raises(ValueError):
            code_422.permute([0, 0, 1, 2])

    def test_hadamard_dual_swaps_distances(self):
        """Test the dual swaps the check matrices and recorded distances."""
        code = repetition(3)
        dual = code.hadamard_dual()
        assert dual.hx == code.hz and dual.hz == code.hx
        assert (dual.metadata["dx"], dual.metadata["dz"]) == (3, 1)

    def test_dict_round_trip(self, code_422):
        """Test code JSON round trip."""
        again = CssCode.from_dict(code_422.to_dict())
        assert again.hx == code_422.hx and again.lx == code_422.lx
        assert again.name == "[[4,2,2]]"

    def test_from_dict_k_mismatch(self):
        """Test a declared k that disagrees with the matrices is rejected."""
        with pytest.raises(ValueError, match="Declared k"):
            CssCode.from_dict({"n": 4, "k": 3, "hx": ["1111"], "hz": ["1111"]})

    def test_from_dict_missing_fields(self):
        """Test missing check matrices are rejected."""
        with pytest.raises(ValueError, match="hx"):
            CssCode.from_dict({"n": 4})


class TestStabilizerCode:
    """Test suite for general stabilizer codes."""

    def test_five_one_three(self):
        """Test the perfect code parameters and distance."""
        code = five_one_three()
        assert (code.n, code.k) == (5, 1)
        assert distance_stabilizer(code) == 3

    def test_generators_hermitian(self):
        """Test generators keep the given rows with a + sign."""
        gens = five_one_three().stabilizer_generators()
        assert [str(g) for g in gens] == ["+XZZXI", "+IXZZX", "+XIXZZ", "+ZXIXZ"]

    def test_hermitian_y_phase(self):
        """Test a Y entry is read as +Y."""
        assert PauliOp.hermitian([1, 1, 0, 1, 0, 0]) == PauliOp.from_string("YXI")

    def test_from_css(self, code_422):
        """Test conversion keeps n and k."""
        code = StabilizerCode.from_css(code_422)
        assert (code.n, code.k) == (4, 2)
        assert code.q.shape == (4, 8)

    def test_noncommuting_rejected(self):
        """Test anticommuting generators are rejected."""
        with pytest.raises(ValueError, match="do not commute"):
            StabilizerCode(["10", "01"])


class TestDistances:
    """Test suite for distance computations."""

    def test_distance_422(self, code_422):
        """Test [[4,2,2]] has distance 2 in both sectors."""
        assert distance_css(code_422) == (2, 2)

    def test_distance_steane(self, steane_code):
        """Test Steane has distance 3."""
        assert distance_css(steane_code) == (3, 3)

    def test_distance_asymmetric(self):
        """Test the phase-flip repetition code has (dx, dz) = (1, n)."""
        assert distance_css(repetition(5)) == (1, 5)

    def test_distance_k0(self):
        """Test distance of a k = 0 code is undefined."""
        with pytest.raises(ValueError, match="k = 0"):
            distance_css(CssCode(["11", "01"], BitMatrix.zeros(0, 2)))

    def test_cutoff_raises(self, steane_code):
        """Test the span cutoff raises CutoffExceeded."""
        with pytest.raises(CutoffExceeded):
            distance_css(steane_code, cutoff=2)

    def test_cutoff_bound_fallback(self, steane_code):
        """Test the weight-limited fallback certifies small distances."""
        bound = distance_css(steane_code, cutoff=2, allow_bound=True, max_weight=4)
        assert isinstance(bound, DistanceBound)
        assert (bound.dx, bound.dz) == (3, 3)
        assert bound.exact_x and bound.exact_z


class TestLogicalClasses:
    """Test suite for logical class weight distributions."""

    def test_parse_labels(self):
        """Test compact, indexed and vector labels."""
        assert parse_logical_label("XZ", 2) == ([1, 0], [0, 1])
        assert parse_logical_label("Y2", 2) == ([0, 1], [0, 1])
        assert parse_logical_label([1, 0, 0, 1], 2) == ([1, 0], [0, 1])

    def test_parse_label_out_of_range(self):
        """Test a logical index beyond k is rejected."""
        with pytest.raises(ValueError):
            parse_logical_label("X3", 2)

    def test_class_weights_422(self):
        """Test the X̄₁ class of [[4,2,2]] with an explicit basis."""
        code = CssCode(["1111"], ["1111"], lx=["1001", "1100"], lz=["1100", "1001"])
        dist = logical_class_weights(code, "X1")
        assert dist == {WeightVector(2, 0, 0): 2, WeightVector(0, 2, 2): 2}

    def test_class_table_422(self):
        """Test all fifteen [[4,2,2]] classes in the X̄₁=X₁X₄, X̄₂=X₁X₂ basis."""
        code = CssCode(["1111"], ["1111"], lx=["1001", "1100"], lz=["1100", "1001"])
        x_type = {WeightVector(2, 0, 0): 2, WeightVector(0, 2, 2): 2}
        z_type = {WeightVector(0, 2, 0): 2, WeightVector(2, 0, 2): 2}
        mixed = {WeightVector(0, 0, 2): 2, WeightVector(2, 2, 0): 2}
        odd = {WeightVector(1, 1, 1): 4}
        expected = {label: x_type for label in ("XI", "IX", "XX")}
        expected.update({label: z_type for label in ("ZI", "IZ", "ZZ")})
        expected.update({label: mixed for label in ("XZ", "ZX", "YY")})
        expected.update({label: odd for label in ("YI", "IY", "XY", "YX", "YZ", "ZY")})
        assert logical_class_table(code) == expected

    def test_class_table_size(self, code_422):
        """Test the table covers all 4^k − 1 nontrivial classes."""
        table = logical_class_table(code_422)
        assert len(table) == 15
        assert all(sum(dist.values()) == 4 for dist in table.values())

    def test_uniform_weight_422(self, code_422):
        """Test [[4,2,2]] has uniform X-type and Z-type classes."""
        assert uniform_weight_check(code_422)

    def test_class_cutoff(self, code_422, config):
        """Test the class enumeration cutoff."""
        config.configure(class_enum_cutoff=1)
        with pytest.raises(CutoffExceeded):
            logical_class_weights(code_422, "X1", config=config)


class TestHammingBound:
    """Test suite for B(n, d) and the phantom Hamming bound."""

    def test_known_values(self):
        """Test small exact values of B(n, d)."""
        assert hamming_B(4, 1) == 4
        assert hamming_B(4, 2) == 6
        assert hamming_B(4, 4) == 1
        assert hamming_B(8, 4) == 14

    def test_bad_arguments(self):
        """Test d outside 1..n is rejected."""
        with pytest.raises(ValueError):
            hamming_B(4, 5)

    @pytest.mark.parametrize("n,d,expected", [
        (4, 2, 6), (5, 2, 10), (4, 3, 1), (6, 4, 3), (7, 4, 7),
        (8, 4, 14), (9, 3, 12), (10, 4, 30), (13, 3, 26),
    ])
    def test_table_values(self, n, d, expected):
        """Test the published B(n, d) table."""
        assert hamming_B(n, d) == expected

    @pytest.mark.parametrize("n", range(4, 16))
    def test_pairs(self, n):
        """Test B(n, 2) counts every pair."""
        assert hamming_B(n, 2) == n * (n - 1) // 2

    def test_limit_from_config(self, config):
        """Test the passed config bounds n."""
        config.configure(hamming_max_n=5)
        with pytest.raises(CutoffExceeded):
            hamming_B(6, 2, config)

    def test_422_saturates(self, code_422):
        """Test η = 2 meets B(4, 2) = 6 with equality."""
        assert check_hamming_bound(code_422, eta=2)
        assert not check_hamming_bound(code_422, eta=3)

    def test_johnson_bound(self):
        """Test the Johnson bound at (8, 2, 4)."""
        assert johnson_bound(8, 2, 4) == 14

    def test_bound_holds_for_422(self, code_422):
        """Test [[4,2,2]] satisfies the bound with the measured η."""
        assert check_hamming_bound(code_422)

    def test_bound_violated_with_large_eta(self, code_422):
        """Test a large η violates the bound."""
        assert not check_hamming_bound(code_422, eta=3, sector=Sector.Z)
