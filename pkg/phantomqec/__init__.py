"""
phantomqec - Phantom Quantum Error-Correcting Codes

Construction, enumeration, SAT discovery and verification of phantom codes (codes whose
in-block logical CNOTs are qubit permutations), logical gate search and a depth-bounded
compiler for interblock logical CNOT circuits.

Example:
    >>> from phantomqec import four_two_two, is_phantom_bruteforce, LogicalCnotCircuit, compile_multiblock
    >>> code = four_two_two()
    >>> witness = is_phantom_bruteforce(code)
    >>> circuit = LogicalCnotCircuit(2, 2).cnot((0, 0), (1, 0)).cnot((0, 1), (1, 1))
    >>> compile_multiblock(circuit, witness=witness).depth
    1
"""

from phantomqec.__version__ import (
    __version__,
    __version_info__,
    __title__,
    __description__,
    __url__,
    __author__,
    __author_email__,
    __license__,
    __copyright__,
)

# Core imports
from phantomqec.config import CutoffExceeded, QecConfig, default_config
from phantomqec.f2linalg import BitMatrix
from phantomqec.codes import CssCode, PauliOp, StabilizerCode, distance_css, hamming_B
from phantomqec.tableau import Circuit, CliffordTableau, logical_action, verify_claim
from phantomqec.phantom import (
    GateSetClaim, PhantomWitness, is_phantom_bruteforce, is_phantom_sat, weak_phantom_level_sat,
)
from phantomqec.solver import SolverHandle
from phantomqec.enumerate import CodeDatabase, enumerate_all
from phantomqec.construct import build_family, four_two_two, hypercube, phantom_qrm
from phantomqec.gates import automorphism_gates, diagonal_gates, fold_gates
from phantomqec.compile import (
    LogicalCnotCircuit,
    PhysicalSchedule,
    compile_logical_swap_pairs,
    compile_multiblock,
    compile_two_blocks,
    residual_permutation,
    verify_schedule,
)
from phantomqec.validator import CodeValidator
from phantomqec.utils import QecUtils

# Enums
from phantomqec.enums import ExitCode, FoldKind, GateKind, LayerKind, Sector, SolveStatus

__all__ = [
    # Version info
    '__version__',
    '__version_info__',
    '__title__',
    '__description__',
    '__url__',
    '__author__',
    '__author_email__',
    '__license__',
    '__copyright__',

    # Core classes and entry points
    'CutoffExceeded',
    'QecConfig',
    'default_config',
    'BitMatrix',
    'CssCode',
    'PauliOp',
    'StabilizerCode',
    'distance_css',
    'hamming_B',
    'Circuit',
    'CliffordTableau',
    'logical_action',
    'verify_claim',
    'GateSetClaim',
    'PhantomWitness',
    'is_phantom_bruteforce',
    'is_phantom_sat',
    'weak_phantom_level_sat',
    'SolverHandle',
    'CodeDatabase',
    'enumerate_all',
    'build_family',
    'four_two_two',
    'hypercube',
    'phantom_qrm',
    'automorphism_gates',
    'diagonal_gates',
    'fold_gates',
    'LogicalCnotCircuit',
    'PhysicalSchedule',
    'compile_logical_swap_pairs',
    'compile_multiblock',
    'compile_two_blocks',
    'residual_permutation',
    'verify_schedule',
    'CodeValidator',
    'QecUtils',

    # Enums
    'ExitCode',
    'FoldKind',
    'GateKind',
    'LayerKind',
    'Sector',
    'SolveStatus',
]
