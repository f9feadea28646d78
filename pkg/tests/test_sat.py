"""
Tests for the SAT encoding module: formula building, gadgets, DIMACS I/O and the
phantomness and discovery instances.
"""

import pytest

from phantomqec.codes import CssCode, distance_css
from phantomqec.construct import trivial
from phantomqec.config import CutoffExceeded
from phantomqec.enums import SolveStatus
from phantomqec.phantom import check_perm_gateset_css
from phantomqec.sat import (
    CnfFormula,
    DiscoverySpec,
    and_gate,
    count_models,
    discovery_instance,
    minimal_n,
    or_gate,
    parse_dimacs,
    permutation_var,
    phantom_instance,
    solve,
    sweep_frame,
    to_dimacs,
    weak_phantom_instance,
    xor_clause,
    xor_gate,
)
from phantomqec.solver import SolverHandle


@pytest.fixture
def handle():
    """Built-in solver with a generous timeout."""
    return SolverHandle.internal(timeout=120)


class TestFormula:
    """Test suite for CnfFormula."""

    def test_constants_fold(self):
        """Test constant literals satisfy or drop out of clauses."""
        f = CnfFormula()
        x = f.new_var()
        f.add_clause([x, True])
        f.add_clause([x, False])
        assert f.clauses == [[1]]

    def test_literal_range(self):
        """Test literals beyond the variable counter are rejected."""
        f = CnfFormula()
        f.new_var()
        with pytest.raises(ValueError, match="outside"):
            f.add_clause([2])

    def test_named_groups(self):
        """Test named matrices are registered."""
        f = CnfFormula()
        f.new_matrix(2, 3, "A")
        assert f.groups["A"].shape == (2, 3)


class TestGadgets:
    """Test suite for XOR, AND and OR gadgets."""

    @pytest.mark.parametrize("size,parity", [(1, 1), (3, 0), (5, 1), (6, 0)])
    def test_xor_clause_model_count(self, size, parity):
        """Test an XOR constraint keeps exactly half of the assignments."""
        f = CnfFormula()
        lits = f.new_vector(size)
        xor_clause(f, lits, parity)
        assert count_models(f, lits) == 1 << (size - 1)
        assert all(len(c) <= 3 for c in f.clauses)

    def test_xor_of_constants(self):
        """Test an unsatisfiable constant XOR adds the empty clause."""
        f = CnfFormula()
        xor_clause(f, [True, True], 1)
        assert f.clauses == [[]]

    def test_gates_truth_tables(self, handle):
        """Test AND, OR and XOR gates against their truth tables."""
        for a_val in (0, 1):
            for b_val in (0, 1):
                f = CnfFormula()
                a, b = f.new_var(), f.new_var()
                f.add_clause([a] if a_val else [-a])
                f.add_clause([b] if b_val else [-b])
                g_and, g_or, g_xor = and_gate(f, a, b), or_gate(f, [a, b]), xor_gate(f, [a, b])
                result = solve(f, handle)
                assert result.is_sat
                assert result.value(g_and) == bool(a_val and b_val)
                assert result.value(g_or) == bool(a_val or b_val)
                assert result.value(g_xor) == bool(a_val ^ b_val)

    def test_permutation_models(self):
        """Test permutation and involution variables count 3! and 4 models."""
        f = CnfFormula()
        grid = permutation_var(f, 3)
        assert count_models(f, [v for row in grid for v in row]) == 6
        g = CnfFormula()
        grid = permutation_var(g, 3, involution=True)
        assert count_models(g, sorted({v for row in grid for v in row})) == 4


class TestDimacs:
    """Test suite for DIMACS text."""

    def test_round_trip(self):
        """Test formula to text and back."""
        f = CnfFormula()
        x, y = f.new_var(), f.new_var()
        f.add_clause([x, -y])
        f.add_clause([y])
        text = to_dimacs(f)
        assert text.startswith("p cnf 2 2")
        again = parse_dimacs(text)
        assert again.num_vars == 2 and again.clauses == [[1, -2], [2]]

    def test_comments_and_wrapped_clauses(self):
        """Test comments are skipped and clauses may span lines."""
        f = parse_dimacs("c hello\np cnf 3 1\n1 2\n-3 0\n")
        assert f.clauses == [[1, 2, -3]]

    def test_missing_header(self):
        """Test a clause before the header is rejected."""
        with pytest.raises(ValueError, match="header"):
            parse_dimacs("1 2 0\n")


class TestPhantomInstance:
    """Test suite for the phantomness instance."""

    def test_422_decodes_to_witness(self, code_422, handle):
        """Test a model of the [[4,2,2]] instance decodes to a valid witness."""
        formula, decode = phantom_instance(code_422)
        result = solve(formula, handle)
        assert result.status == SolveStatus.SAT
        witness = decode(result)
        assert check_perm_gateset_css(code_422, witness.claim())

    def test_involution_instance(self, code_422, handle):
        """Test the period-two restriction stays satisfiable for [[4,2,2]]."""
        formula, _ = phantom_instance(code_422, involutions_only=True)
        assert solve(formula, handle).status == SolveStatus.SAT

    def test_weak_level_one_rotates_basis(self, handle):
        """Test the [[2,2,1]] qubit swap is a CNOT in the decoded rotated basis."""
        code = trivial(2)
        formula, decode = weak_phantom_instance(code, 1)
        result = solve(formula, handle)
        assert result.status == SolveStatus.SAT
        witness = decode(result)
        assert list(witness.perms) == [(0, 1)]
        assert check_perm_gateset_css(code.with_logicals(witness.lx, witness.lz), witness.claim())

    def test_weak_level_two_unsat(self, handle):
        """Test a single swap cannot generate both CNOT directions."""
        formula, _ = weak_phantom_instance(trivial(2), 2)
        assert solve(formula, handle).status == SolveStatus.UNSAT

    def test_weak_level_range(self, code_422):
        """Test levels outside 1..k are rejected."""
        with pytest.raises(ValueError, match="1..2"):
            weak_phantom_instance(code_422, 0)
        with pytest.raises(ValueError, match="1..2"):
            weak_phantom_instance(code_422, 3)


class TestDiscovery:
    """Test suite for the discovery instance and the minimal-n sweep."""

    def test_spec_validation(self):
        """Test out-of-range ranks and distances are rejected."""
        with pytest.raises(ValueError):
            DiscoverySpec(n=4, r=3, k=2, dx=2, dz=2)
        with pytest.raises(ValueError):
            DiscoverySpec(n=4, r=1, k=2, dx=0, dz=2)
        with pytest.raises(ValueError, match="k >= 2"):
            DiscoverySpec(n=4, r=1, k=1, dx=2, dz=2, phantom=True)

    def test_clause_limit(self, config):
        """Test oversized instances are refused."""
        config.configure(clause_limit=10)
        with pytest.raises(CutoffExceeded):
            discovery_instance(DiscoverySpec(n=6, r=2, k=2, dx=2, dz=2), config)

    def test_discover_422(self, handle):
        """Test the n=4, r=1 CSS instance decodes to a distance-2 code."""
        formula, decode = discovery_instance(DiscoverySpec(n=4, r=1, k=2, dx=2, dz=2))
        result = solve(formula, handle)
        assert result.is_sat
        code = decode(result)
        assert isinstance(code, CssCode)
        assert (code.n, code.k) == (4, 2)
        assert distance_css(code) == (2, 2)

    def test_distance_too_high_unsat(self, handle):
        """Test no [[4,2]] CSS code reaches distance 3."""
        formula, _ = discovery_instance(DiscoverySpec(n=4, r=1, k=2, dx=3, dz=3))
        assert solve(formula, handle).is_unsat

    def test_lower_bound_records_true_distances(self, handle):
        """Test a lower-bound instance decodes with its recomputed distances."""
        spec = DiscoverySpec(n=4, r=1, k=2, dx=1, dz=1, exact_distance=False)
        formula, decode = discovery_instance(spec)
        result = solve(formula, handle)
        assert result.is_sat
        code = decode(result)
        assert (code.metadata["dx"], code.metadata["dz"]) == distance_css(code)

    def test_lower_bound_drops_witness_clause(self):
        """Test only the exact instance asks for a logical at the target weight."""
        exact, _ = discovery_instance(DiscoverySpec(n=4, r=1, k=2, dx=2, dz=2))
        bound, _ = discovery_instance(DiscoverySpec(n=4, r=1, k=2, dx=2, dz=2, exact_distance=False))
        assert len(bound.clauses) < len(exact.clauses)

    def test_minimal_n_sweep(self, handle, config):
        """Test the d=2, k=2 sweep stops at n=4."""
        rows = minimal_n(2, 2, handle=handle, config=config)
        assert [(row.n, row.status) for row in rows] == [(3, SolveStatus.UNSAT), (4, SolveStatus.SAT)]
        frame = sweep_frame(rows)
        assert list(frame.columns) == ["n", "status", "r"]
        assert frame["status"].tolist() == ["unsat", "sat"]

    @pytest.mark.slow
    def test_minimal_n_phantom(self, handle, config):
        """Test the phantom d=2, k=2 sweep also stops at n=4."""
        rows = minimal_n(2, 2, phantom=True, n_max=5, handle=handle, config=config)
        assert rows[-1].n == 4 and rows[-1].status == SolveStatus.SAT

    @pytest.mark.slow
    def test_minimal_n_accepts_unequal_distances(self, config):
        """Test the k=3 phantom sweep reaches n=7, where only (2,3) and (3,2) codes exist."""
        rows = minimal_n(3, 2, phantom=True, n_max=7, handle=SolverHandle.internal(timeout=1800), config=config)
        assert rows[-1].n == 7 and rows[-1].status == SolveStatus.SAT
