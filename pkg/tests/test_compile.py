"""
Tests for the compile module: logical CNOT circuits, two-block and multiblock
compilation, logical swaps, residual routing and schedule verification.
"""

import networkx as nx
import pytest

from phantomqec.compile import (
    Layer,
    LogicalCnotCircuit,
    PhysicalSchedule,
    cnot_word,
    compile_logical_swap_pairs,
    compile_matrix,
    compile_multiblock,
    compile_two_blocks,
    edge_colouring,
    involution_factors,
    physical_circuit,
    relabel_permutation,
    residual_permutation,
    route_residual,
    verify_schedule,
)
from phantomqec.construct import phantom_qrm
from phantomqec.enums import LayerKind, SolveStatus
from phantomqec.f2linalg import BitMatrix, iter_gl, random_invertible
from phantomqec.phantom import is_phantom_sat
from phantomqec.solver import SolverHandle

EYE2 = BitMatrix.identity(2)
ZERO2 = BitMatrix.zeros(2, 2)


def _random_permutation(size, rng):
    return [int(v) for v in rng.permutation(size)]


class TestLogicalCnotCircuit:
    """Test suite for LogicalCnotCircuit."""

    def test_matrix(self):
        """Test a single interblock CNOT."""
        circuit = LogicalCnotCircuit(2, 1).cnot((0, 0), (1, 0))
        assert circuit.to_matrix().to_strings() == ["11", "01"]

    def test_time_order(self):
        """Test later CNOTs act after earlier ones."""
        circuit = LogicalCnotCircuit(1, 3).cnot((0, 0), (0, 1)).cnot((0, 1), (0, 2))
        assert circuit.to_matrix().to_strings() == ["111", "011", "001"]

    def test_rejects_bad_indices(self):
        """Test out-of-range and self-targeting CNOTs are rejected."""
        with pytest.raises(ValueError, match="out of range"):
            LogicalCnotCircuit(2, 2).cnot((2, 0), (0, 0))
        with pytest.raises(ValueError, match="coincide"):
            LogicalCnotCircuit(2, 2).cnot((1, 1), (1, 1))

    def test_unidirectional(self):
        """Test direction detection."""
        forward = LogicalCnotCircuit(3, 1).cnot((0, 0), (2, 0)).cnot((1, 0), (2, 0))
        assert forward.is_unidirectional()
        assert not forward.cnot((2, 0), (0, 0)).is_unidirectional()

    def test_random_unidirectional(self, rng):
        """Test random unidirectional circuits only point forward."""
        circuit = LogicalCnotCircuit.random(4, 2, 30, rng, unidirectional=True)
        assert len(circuit.cnots) == 30
        assert all(c[0] <= t[0] for c, t in circuit.cnots)

    def test_dict_round_trip(self, rng):
        """Test circuit JSON round trip."""
        circuit = LogicalCnotCircuit.random(2, 3, 5, rng)
        again = LogicalCnotCircuit.from_dict(circuit.to_dict())
        assert again.cnots == circuit.cnots

    def test_malformed_dict(self):
        """Test missing fields are reported."""
        with pytest.raises(ValueError, match="Malformed circuit"):
            LogicalCnotCircuit.from_dict({"k": 2})


class TestScheduleTypes:
    """Test suite for layers and schedules."""

    def test_layer_validation(self):
        """Test a transversal layer touches each block once."""
        with pytest.raises(ValueError, match="twice"):
            Layer(LayerKind.TRANSVERSAL, pairs=((0, 1), (1, 2)))
        with pytest.raises(ValueError, match="needs a block"):
            Layer(LayerKind.RELABEL)

    def test_residual_must_be_permutation(self):
        """Test a malformed residual is rejected."""
        with pytest.raises(ValueError, match="not a permutation"):
            PhysicalSchedule(1, 2, residual=[0, 0])

    def test_empty_circuit(self):
        """Test the empty circuit compiles to nothing."""
        schedule = compile_multiblock(LogicalCnotCircuit(2, 2))
        assert schedule.layers == []
        assert schedule.depth == 0 and not schedule.has_residual
        assert schedule.summary() == "depth=0 relabels=0 residual=identity"

    def test_json_round_trip(self, rng):
        """Test schedule JSON keeps the action."""
        schedule = compile_matrix(random_invertible(6, rng), 2)
        again = PhysicalSchedule.from_dict(schedule.to_dict())
        assert again.matrix() == schedule.matrix()
        assert again.depth == schedule.depth

    def test_malformed_schedule(self):
        """Test missing fields are reported."""
        with pytest.raises(ValueError, match="Malformed schedule"):
            PhysicalSchedule.from_dict({"blocks": 2})


class TestCnotWord:
    """Test suite for in-block CNOT words."""

    def test_single(self):
        """Test one CNOT."""
        assert cnot_word(BitMatrix(["11", "01"])) == [(0, 1)]

    def test_product_matches(self, rng):
        """Test the word multiplies back to the matrix."""
        for _ in range(20):
            matrix = random_invertible(4, rng)
            circuit = LogicalCnotCircuit(1, 4)
            for control, target in cnot_word(matrix):
                circuit.cnot((0, control), (0, target))
            assert circuit.to_matrix() == matrix

    def test_singular(self):
        """Test singular matrices are rejected."""
        with pytest.raises(ValueError, match="singular"):
            cnot_word(BitMatrix(["11", "11"]))

    def test_relabel_permutation(self, witness_422):
        """Test the identity relabel needs no qubit movement."""
        assert relabel_permutation(EYE2, witness_422) == [0, 1, 2, 3]


class TestTwoBlocks:
    """Test suite for two-block compilation."""

    def test_block_diagonal_is_free(self):
        """Test diag(A, A) is pure relabelling."""
        a = BitMatrix(["11", "01"])
        schedule = compile_two_blocks(BitMatrix.block([[a, ZERO2], [ZERO2, a]]), 2)
        assert schedule.depth == 0
        assert schedule.relabel_count == 2
        assert verify_schedule(schedule, BitMatrix.block([[a, ZERO2], [ZERO2, a]]))

    def test_transversal_cnot(self):
        """Test [[I, I], [0, I]] is one layer."""
        x = BitMatrix.block([[EYE2, EYE2], [ZERO2, EYE2]])
        schedule = compile_two_blocks(x, 2)
        assert schedule.depth == 1 and schedule.relabel_count == 0
        assert schedule.layers[0].pairs == ((0, 1),)

    def test_backward_cnot(self):
        """Test [[I, 0], [I, I]] runs from block 1 to block 0."""
        x = BitMatrix.block([[EYE2, ZERO2], [EYE2, EYE2]])
        schedule = compile_two_blocks(x, 2)
        assert schedule.depth == 1
        assert schedule.layers[0].pairs == ((1, 0),)

    def test_singular_off_diagonal(self):
        """Test a rank-one off-diagonal block costs two layers."""
        x = BitMatrix.block([[EYE2, BitMatrix(["10", "00"])], [ZERO2, EYE2]])
        schedule = compile_two_blocks(x, 2)
        assert schedule.depth == 2 and not schedule.has_residual
        assert verify_schedule(schedule, x)

    def test_random_depth_bound(self, rng):
        """Test random two-block maps with k = 3."""
        for _ in range(40):
            x = random_invertible(6, rng)
            schedule = compile_two_blocks(x, 3)
            assert schedule.depth <= 4
            assert schedule.matrix() == x

    @pytest.mark.slow
    def test_exhaustive_gl4(self):
        """Test every element of GL(4, F2) as a k = 2 two-block map."""
        count = 0
        for x in iter_gl(4):
            schedule = compile_two_blocks(x, 2)
            assert schedule.depth <= 4
            assert schedule.matrix() == x
            count += 1
        assert count == 20160

    def test_shape_checks(self):
        """Test wrong shapes and singular maps are rejected."""
        with pytest.raises(ValueError, match="Expected a 4x4"):
            compile_two_blocks(BitMatrix.identity(6), 2)
        with pytest.raises(ValueError, match="singular"):
            compile_two_blocks(BitMatrix.zeros(4, 4), 2)
        with pytest.raises(ValueError, match="multiple of k"):
            compile_matrix(BitMatrix.identity(5), 2)

    def test_witness_k_mismatch(self, witness_422):
        """Test a witness for a different k is rejected."""
        with pytest.raises(ValueError, match="Witness has k=2"):
            compile_matrix(BitMatrix.identity(6), 3, witness_422)


class TestMultiblock:
    """Test suite for multiblock compilation."""

    def test_doc_circuit(self):
        """Test a four-block circuit."""
        circuit = LogicalCnotCircuit(4, 2).cnot((0, 0), (3, 1)).cnot((1, 1), (2, 0))
        schedule = compile_multiblock(circuit)
        assert schedule.depth <= 6 and not schedule.has_residual
        assert verify_schedule(schedule, circuit)

    @pytest.mark.parametrize("blocks", [2, 3, 4, 5])
    def test_random_depth_bound(self, blocks, rng):
        """Test the 4(2^a - 1) bound on random circuits, padding odd block counts."""
        padded = 1 << (blocks - 1).bit_length()
        for _ in range(5):
            circuit = LogicalCnotCircuit.random(blocks, 2, 25, rng)
            schedule = compile_multiblock(circuit)
            assert schedule.depth <= 4 * (padded - 1)
            assert verify_schedule(schedule, circuit)

    @pytest.mark.parametrize("blocks", [2, 4, 8])
    def test_unidirectional_bound(self, blocks, rng):
        """Test one-way circuits stay within 2(B - 1) without a residual."""
        for _ in range(3):
            circuit = LogicalCnotCircuit.random(blocks, 2, 30, rng, unidirectional=True)
            schedule = compile_multiblock(circuit)
            assert schedule.depth <= 2 * (blocks - 1)
            assert not schedule.has_residual
            assert verify_schedule(schedule, circuit)

    def test_matrix_needs_k(self):
        """Test a bare matrix needs k."""
        with pytest.raises(ValueError, match="k is required"):
            compile_multiblock(BitMatrix.identity(4))

    def test_mutation_detected(self):
        """Test verification notices a reversed transversal layer."""
        x = BitMatrix.block([[EYE2, EYE2], [ZERO2, EYE2]])
        schedule = compile_two_blocks(x, 2)
        broken = PhysicalSchedule(2, 2, [Layer(LayerKind.TRANSVERSAL, pairs=((1, 0),))])
        assert verify_schedule(schedule, x)
        assert not verify_schedule(broken, x)

    def test_wrong_target_size(self):
        """Test a target of the wrong size fails verification."""
        schedule = compile_multiblock(LogicalCnotCircuit(2, 2))
        assert not verify_schedule(schedule, BitMatrix.identity(6))


class TestLogicalPermutations:
    """Test suite for swaps and residual routing."""

    def test_swap_pair(self):
        """Test one interblock swap in depth four."""
        schedule = compile_logical_swap_pairs([(0, 0)], 2)
        assert schedule.depth == 4
        assert schedule.matrix().to_strings() == ["0010", "0100", "1000", "0001"]

    @pytest.mark.parametrize("pairs", [[(0, 3), (2, 1)], [(3, 0)], []])
    def test_swap_pairs_k4(self, pairs):
        """Test swap circuits against the permutation they implement."""
        k = 4
        perm = list(range(2 * k))
        for i, j in pairs:
            perm[i], perm[k + j] = k + j, i
        schedule = compile_logical_swap_pairs(pairs, k)
        assert schedule.depth == (4 if pairs else 0)
        assert schedule.matrix() == BitMatrix.permutation(perm)

    def test_swap_capacity(self):
        """Test more than k/2 swaps and overlapping pairs are rejected."""
        with pytest.raises(ValueError, match="At most 1"):
            compile_logical_swap_pairs([(0, 0), (1, 1)], 2)
        with pytest.raises(ValueError, match="disjoint"):
            compile_logical_swap_pairs([(0, 0), (0, 1)], 4)
        with pytest.raises(ValueError, match="out of range"):
            compile_logical_swap_pairs([(0, 5)], 4)

    def test_involution_factors(self, rng):
        """Test both factors are involutions composing to the permutation."""
        assert involution_factors([1, 2, 0]) == ([0, 2, 1], [1, 0, 2])
        for _ in range(20):
            perm = _random_permutation(9, rng)
            first, second = involution_factors(perm)
            assert all(first[first[i]] == i and second[second[i]] == i for i in range(9))
            assert all(second[first[i]] == perm[i] for i in range(9))

    def test_in_block_permutation_is_free(self):
        """Test swapping inside a block costs nothing."""
        assert residual_permutation([1, 0, 2, 3], 2).depth == 0

    @pytest.mark.parametrize("blocks,k", [(2, 2), (3, 2), (4, 3)])
    def test_random_permutations(self, blocks, k, rng):
        """Test routed permutations within 8k + 8 leave only block renamings."""
        for _ in range(5):
            perm = _random_permutation(blocks * k, rng)
            schedule = residual_permutation(perm, k)
            assert schedule.depth <= 8 * k + 8
            assert schedule.residual_blocks() is not None
            assert schedule.matrix() == BitMatrix.permutation(perm)

    def test_permutation_validation(self):
        """Test non-permutations are rejected."""
        with pytest.raises(ValueError, match="permutation"):
            residual_permutation([0, 0, 1, 2], 2)

    def test_route_residual(self, rng):
        """Test routing keeps the target and removes in-block residual content."""
        for _ in range(10):
            x = random_invertible(6, rng)
            schedule = compile_matrix(x, 2)
            routed = route_residual(schedule)
            assert routed.matrix() == x
            assert routed.residual_blocks() is not None
            assert routed.depth <= schedule.depth + 8 * 2 + 8


class TestEdgeColouring:
    """Test suite for the Misra-Gries colouring."""

    def _check(self, graph, colours):
        degree = max((d for _, d in graph.degree()), default=0)
        assert set(colours) == {tuple(sorted(e)) for e in graph.edges()}
        assert all(c <= degree for c in colours.values())

    def test_complete_graph(self):
        """Test K5 with at most five colours."""
        graph = nx.complete_graph(5)
        self._check(graph, edge_colouring(graph))

    def test_petersen(self):
        """Test the Petersen graph."""
        graph = nx.petersen_graph()
        self._check(graph, edge_colouring(graph))

    def test_random_graphs(self):
        """Test random graphs."""
        for seed in range(5):
            graph = nx.gnp_random_graph(10, 0.5, seed=seed)
            self._check(graph, edge_colouring(graph))

    def test_empty(self):
        """Test a graph without edges."""
        assert edge_colouring(nx.empty_graph(3)) == {}


class TestTableauVerification:
    """Test suite for physical verification on [[4,2,2]] blocks."""

    def test_two_block_circuit(self, code_422, witness_422, rng):
        """Test compiled schedules act correctly on two [[4,2,2]] blocks."""
        for _ in range(3):
            circuit = LogicalCnotCircuit.random(2, 2, 6, rng)
            schedule = compile_multiblock(circuit, witness=witness_422)
            assert verify_schedule(schedule, circuit, code=code_422, witness=witness_422)

    def test_relabel_layers_carry_permutations(self, witness_422):
        """Test relabellings get physical permutations from the witness."""
        a = BitMatrix(["11", "01"])
        schedule = compile_two_blocks(BitMatrix.block([[a, ZERO2], [ZERO2, a]]), 2, witness_422)
        assert all(layer.permutation is not None for layer in schedule.layers)
        circuit = physical_circuit(schedule, 4)
        assert len(circuit) == 2

    def test_missing_witness(self, code_422):
        """Test tableau checks need physical permutations."""
        a = BitMatrix(["11", "01"])
        x = BitMatrix.block([[a, ZERO2], [ZERO2, EYE2]])
        schedule = compile_two_blocks(x, 2)
        with pytest.raises(ValueError, match="witness"):
            verify_schedule(schedule, x, code=code_422)

    def test_transversal_only(self, code_422):
        """Test a transversal layer needs no witness."""
        x = BitMatrix.block([[EYE2, EYE2], [ZERO2, EYE2]])
        assert verify_schedule(compile_two_blocks(x, 2), x, code=code_422)


class TestCompilerBounds:
    """Test suite for the depth bounds over many random circuits."""

    @pytest.mark.slow
    @pytest.mark.parametrize("a", [1, 2, 3])
    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_random_circuits(self, a, k, rng):
        """Test 120 circuits per (a, k), alternately general and one-way, against both bounds."""
        blocks = 1 << a
        for trial in range(120):
            unidirectional = bool(trial % 2)
            circuit = LogicalCnotCircuit.random(blocks, k, 4 * blocks * k, rng, unidirectional=unidirectional)
            schedule = compile_multiblock(circuit)
            assert verify_schedule(schedule, circuit)
            if unidirectional:
                assert schedule.depth <= 2 * (blocks - 1)
                assert not schedule.has_residual
            else:
                assert schedule.depth <= 4 * (blocks - 1)

    @pytest.mark.slow
    def test_qrm_blocks(self, rng):
        """Test schedules on two [[16,3,4]] blocks under tableau simulation."""
        code = phantom_qrm(4, 2)
        result = is_phantom_sat(code, SolverHandle.internal(timeout=600))
        assert result.status == SolveStatus.SAT
        for unidirectional in (False, True):
            circuit = LogicalCnotCircuit.random(2, 3, 8, rng, unidirectional=unidirectional)
            schedule = compile_multiblock(circuit, witness=result.witness)
            assert schedule.depth <= 4
            assert verify_schedule(schedule, circuit, code=code, witness=result.witness)
