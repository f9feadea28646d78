"""
Phantom QEC Toolkit - Enumerations Module

This module contains the enumeration classes used throughout the toolkit.
These enums provide type-safe constants for gates, Pauli sectors, solver modes,
solver outcomes, local Cliffords, fold kinds, schedule layers and CLI exit codes.
"""

from mylogger import logger
from enum import Enum, IntEnum


logger.info("Loading enums module")


class GateKind(Enum):
    """
    Enumeration of the physical gates understood by the tableau simulator.

    Attributes:
        H: Hadamard
        S: Phase gate
        SDG: Inverse phase gate
        X: Pauli X
        Z: Pauli Z
        CNOT: Controlled NOT (control, target)
        CZ: Controlled Z
        SWAP: Two-qubit swap
        PERM: Qubit permutation given as an index array
    """
    H = "H"
    S = "S"
    SDG = "Sdg"
    X = "X"
    Z = "Z"
    CNOT = "CNOT"
    CZ = "CZ"
    SWAP = "SWAP"
    PERM = "PERM"

    def __str__(self) -> str:
        """Return string representation of the gate kind."""
        return self.value

    def __repr__(self) -> str:
        """Return detailed representation of the gate kind."""
        return f"GateKind.{self.name}"

    @classmethod
    def from_name(cls, name: str) -> 'GateKind':
        """
        Look up a gate kind by its serialized name (case-insensitive).

        Args:
            name: Gate name such as 'cnot', 'Sdg' or 'PERM'

        Returns:
            GateKind: Matching gate kind

        Raises:
            ValueError: If the name is not a known gate
        """
        for kind in cls:
            if kind.value.lower() == name.lower():
                return kind
        raise ValueError(f"Unknown gate name: {name}")

    @classmethod
    def arity(cls, kind: 'GateKind') -> int:
        """
        Number of qubit targets the gate takes (0 for PERM, which takes an array).

        Args:
            kind: Gate kind

        Returns:
            int: 1 or 2 for fixed-arity gates, 0 for PERM
        """
        if kind in (cls.CNOT, cls.CZ, cls.SWAP):
            return 2
        if kind == cls.PERM:
            return 0
        return 1

    @classmethod
    def is_diagonal(cls, kind: 'GateKind') -> bool:
        """Check whether the gate is diagonal in the computational basis."""
        return kind in (cls.S, cls.SDG, cls.Z, cls.CZ)


class Sector(Enum):
    """
    Pauli sector of a CSS object.

    Attributes:
        X: X-type
        Z: Z-type
    """
    X = "x"
    Z = "z"

    def __str__(self) -> str:
        """Return string representation of the sector."""
        return self.value

    def __repr__(self) -> str:
        """Return detailed representation of the sector."""
        return f"Sector.{self.name}"

    @property
    def conjugate(self) -> 'Sector':
        """The other sector."""
        return Sector.Z if self is Sector.X else Sector.X


class SolverMode(Enum):
    """
    How a SAT formula is solved.

    Attributes:
        EXTERNAL: DIMACS handed to an external solver binary
        INTERNAL: Built-in CDCL engine
    """
    EXTERNAL = "external"
    INTERNAL = "internal"

    def __str__(self) -> str:
        return self.value

    def __repr__(self) -> str:
        return f"SolverMode.{self.name}"


class SolveStatus(Enum):
    """
    Outcome of a SAT solve.

    Attributes:
        SAT: Satisfiable, a model is attached
        UNSAT: Proven unsatisfiable by a complete run
        TIMEOUT: Time budget exhausted, verdict unknown
        UNKNOWN: Solver finished without a verdict
    """
    SAT = "sat"
    UNSAT = "unsat"
    TIMEOUT = "timeout"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        """Return string representation of the solve status."""
        return self.value

    def __repr__(self) -> str:
        """Return detailed representation of the solve status."""
        return f"SolveStatus.{self.name}"

    @classmethod
    def is_definitive(cls, status: 'SolveStatus') -> bool:
        """
        Check if the status is a trusted verdict (SAT or UNSAT).

        Args:
            status: Solve status

        Returns:
            bool: True for SAT/UNSAT, False for TIMEOUT/UNKNOWN
        """
        return status in (cls.SAT, cls.UNSAT)


class SolverState(Enum):
    """
    Lifecycle state of a SolverHandle.

    Attributes:
        IDLE: Ready, nothing running
        RUNNING: A solve is in progress
        FAILED: Last solve failed (bad binary, malformed output)
    """
    IDLE = "idle"
    RUNNING = "running"
    FAILED = "failed"

    def __str__(self) -> str:
        return self.value

    def __repr__(self) -> str:
        return f"SolverState.{self.name}"


class LocalClifford(IntEnum):
    """
    The six single-qubit Cliffords modulo Paulis, as permutations of (X, Z, Y).

    The value indexes the permutation of the per-qubit triple (x, z, x+z) columns
    in the extended check matrix.

    Attributes:
        I: Identity
        H: Hadamard (X <-> Z)
        S: Phase (X -> Y)
        HS: S then H
        SH: H then S
        HSH: Sqrt-X up to Pauli (Z <-> Y)
    """
    I = 0
    H = 1
    S = 2
    HS = 3
    SH = 4
    HSH = 5

    def __str__(self) -> str:
        """Return string representation of the local Clifford."""
        return self.name

    def __repr__(self) -> str:
        """Return detailed representation of the local Clifford."""
        return f"LocalClifford.{self.name}"

    @property
    def gates(self) -> tuple:
        """Gate names in application order."""
        return {
            LocalClifford.I: (),
            LocalClifford.H: ("H",),
            LocalClifford.S: ("S",),
            LocalClifford.HS: ("S", "H"),
            LocalClifford.SH: ("H", "S"),
            LocalClifford.HSH: ("H", "S", "H"),
        }[self]


class FoldKind(Enum):
    """
    Fold-diagonal gate families on qRM codes.

    Attributes:
        SS: S on fixed points, CZ on mirrored pairs, logical S-type product
        CZ: Mirror with the middle pair unswapped, logical CZ
    """
    SS = "SS"
    CZ = "CZ"

    def __str__(self) -> str:
        return self.value

    def __repr__(self) -> str:
        return f"FoldKind.{self.name}"


class LayerKind(Enum):
    """
    Layer types of a compiled physical schedule.

    Attributes:
        TRANSVERSAL: Interblock transversal CNOTs between disjoint block pairs
        RELABEL: Zero-cost in-block relabelling by a phantom permutation
    """
    TRANSVERSAL = "transversal"
    RELABEL = "relabel"

    def __str__(self) -> str:
        return self.value

    def __repr__(self) -> str:
        return f"LayerKind.{self.name}"


class ExitCode(IntEnum):
    """
    Process exit codes of the command-line interface.

    Attributes:
        SUCCESS: Command succeeded (positive verdict)
        NEGATIVE: Command ran to completion with a negative verdict
        USAGE: Usage or input parse error
        RESOURCE: Resource limit or timeout
    """
    SUCCESS = 0
    NEGATIVE = 1
    USAGE = 2
    RESOURCE = 3

    def __str__(self) -> str:
        """Return string representation of the exit code."""
        return self.name

    def __repr__(self) -> str:
        """Return detailed representation of the exit code."""
        return f"ExitCode.{self.name}"
