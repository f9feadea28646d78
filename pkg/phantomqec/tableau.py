"""
Phantom QEC Toolkit - Tableau Module

Exact Clifford simulation with sign tracking. Pauli rows are stored as i^p X^x Z^z
and conjugated gate by gate; this is the ground-truth oracle for every permutation,
automorphism and fold gate the toolkit reports.
"""

from mylogger import logger
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union
import numpy as np

from .codes import CssCode, PauliOp, StabilizerCode
from .enums import GateKind
from .f2linalg import BitMatrix, solve_in_span


logger.info("Loading tableau module")


# =============================================================================
# CIRCUITS
# =============================================================================

@dataclass(frozen=True)
class Gate:
    """A single gate; PERM carries the full image array as its targets."""
    kind: GateKind
    targets: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"gate": self.kind.value, "targets": list(self.targets)}

    def __str__(self) -> str:
        return f"{self.kind.value}{list(self.targets)}"


class Circuit:
    """
    Ordered gate list.

    Example:
        >>> c = Circuit().h(0).cnot(0, 1).perm([1, 0])
        >>> len(c)
        3
    """

    def __init__(self, gates: Optional[Iterable[Gate]] = None):
        self.gates: List[Gate] = list(gates or [])

    def append(self, kind: Union[GateKind, str], *targets: int) -> 'Circuit':
        if isinstance(kind, str):
            kind = GateKind.from_name(kind)
        if kind == GateKind.PERM:
            raise ValueError("Use Circuit.perm for permutations")
        if len(targets) != GateKind.arity(kind):
            raise ValueError(f"{kind} takes {GateKind.arity(kind)} targets, got {len(targets)}")
        if len(set(targets)) != len(targets):
            raise ValueError(f"Repeated target in {kind}{targets}")
        self.gates.append(Gate(kind, tuple(int(t) for t in targets)))
        return self

    def h(self, q: int) -> 'Circuit':
        return self.append(GateKind.H, q)

    def s(self, q: int) -> 'Circuit':
        return self.append(GateKind.S, q)

    def sdg(self, q: int) -> 'Circuit':
        return self.append(GateKind.SDG, q)

    def x(self, q: int) -> 'Circuit':
        return self.append(GateKind.X, q)

    def z(self, q: int) -> 'Circuit':
        return self.append(GateKind.Z, q)

    def cnot(self, control: int, target: int) -> 'Circuit':
        return self.append(GateKind.CNOT, control, target)

    def cz(self, a: int, b: int) -> 'Circuit':
        return self.append(GateKind.CZ, a, b)

    def swap(self, a: int, b: int) -> 'Circuit':
        return self.append(GateKind.SWAP, a, b)

    def perm(self, images: Sequence[int]) -> 'Circuit':
        """Qubit permutation: the state of qubit i moves to images[i]."""
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"PERM needs a bijection, got {list(images)}")
        self.gates.append(Gate(GateKind.PERM, images))
        return self

    def extend(self, other: 'Circuit') -> 'Circuit':
        self.gates.extend(other.gates)
        return self

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __repr__(self) -> str:
        return f"Circuit({', '.join(str(g) for g in self.gates)})"

    def max_qubit(self) -> int:
        top = -1
        for gate in self.gates:
            if gate.targets:
                top = max(top, len(gate.targets) - 1 if gate.kind == GateKind.PERM else max(gate.targets))
        return top

    def to_list(self) -> List[Dict[str, Any]]:
        """Circuit JSON: [{"gate": name, "targets": [...]}, ...]."""
        return [gate.to_dict() for gate in self.gates]

    @classmethod
    def from_list(cls, items: Sequence[Dict[str, Any]]) -> 'Circuit':
        circuit = cls()
        for item in items:
            kind = GateKind.from_name(item["gate"])
            if kind == GateKind.PERM:
                circuit.perm(item["targets"])
            else:
                circuit.append(kind, *item["targets"])
        return circuit


# =============================================================================
# CONJUGATION RULES
# =============================================================================

def _check_targets(gate: Gate, n: int) -> None:
    if gate.kind == GateKind.PERM:
        if len(gate.targets) != n:
            raise ValueError(f"PERM of size {len(gate.targets)} on {n} qubits")
    elif any(not 0 <= t < n for t in gate.targets):
        raise ValueError(f"Gate {gate} out of range for {n} qubits")


def apply_gate(xs: np.ndarray, zs: np.ndarray, ps: np.ndarray, gate: Gate) -> None:
    """
    Conjugate a batch of Pauli rows in place: P ↦ G P G†.

    Args:
        xs, zs: (m, n) uint8 arrays
        ps: (m,) int array of i-powers
        gate: Gate to apply
    """
    kind, t = gate.kind, gate.targets
    _check_targets(gate, xs.shape[1])
    if kind == GateKind.H:
        a = t[0]
        ps += 2 * (xs[:, a] & zs[:, a])
        xs[:, a], zs[:, a] = zs[:, a].copy(), xs[:, a].copy()
    elif kind == GateKind.S:
        a = t[0]
        ps += xs[:, a]
        zs[:, a] ^= xs[:, a]
    elif kind == GateKind.SDG:
        a = t[0]
        ps += 3 * xs[:, a]
        zs[:, a] ^= xs[:, a]
    elif kind == GateKind.X:
        ps += 2 * zs[:, t[0]]
    elif kind == GateKind.Z:
        ps += 2 * xs[:, t[0]]
    elif kind == GateKind.CNOT:
        c, g = t
        xs[:, g] ^= xs[:, c]
        zs[:, c] ^= zs[:, g]
    elif kind == GateKind.CZ:
        a, b = t
        ps += 2 * (xs[:, a] & xs[:, b])
        zs[:, a] ^= xs[:, b]
        zs[:, b] ^= xs[:, a]
    elif kind == GateKind.SWAP:
        a, b = t
        xs[:, [a, b]] = xs[:, [b, a]]
        zs[:, [a, b]] = zs[:, [b, a]]
    elif kind == GateKind.PERM:
        images = list(t)
        new_x, new_z = np.empty_like(xs), np.empty_like(zs)
        new_x[:, images] = xs
        new_z[:, images] = zs
        xs[:], zs[:] = new_x, new_z
    ps %= 4


def conjugate_pauli(p: PauliOp, circuit: Union[Circuit, Gate]) -> PauliOp:
    """Image of a single Pauli under a gate or circuit."""
    gates = [circuit] if isinstance(circuit, Gate) else circuit.gates
    xs, zs = p.x.reshape(1, -1).copy(), p.z.reshape(1, -1).copy()
    ps = np.array([p.phase], dtype=np.int64)
    for gate in gates:
        apply_gate(xs, zs, ps, gate)
    return PauliOp(xs[0], zs[0], int(ps[0]))


class CliffordTableau:
    """
    Destabilizer/stabilizer tableau: rows 0..n-1 are destabilizers, rows n..2n-1 the
    stabilizers, each an i^p X^x Z^z Pauli.

    Example:
        >>> t = CliffordTableau.identity(1).conjugate(Gate(GateKind.H, (0,)))
        >>> str(t.stabilizer(0))
        '+X'
    """

    def __init__(self, xs: np.ndarray, zs: np.ndarray, ps: np.ndarray):
        self.xs = np.asarray(xs, dtype=np.uint8).copy()
        self.zs = np.asarray(zs, dtype=np.uint8).copy()
        self.ps = np.asarray(ps, dtype=np.int64).copy() % 4

    @property
    def n(self) -> int:
        return self.xs.shape[1]

    @classmethod
    def identity(cls, n: int) -> 'CliffordTableau':
        eye = np.eye(n, dtype=np.uint8)
        zero = np.zeros((n, n), dtype=np.uint8)
        return cls(np.vstack([eye, zero]), np.vstack([zero, eye]), np.zeros(2 * n))

    @classmethod
    def from_paulis(cls, rows: Sequence[PauliOp]) -> 'CliffordTableau':
        return cls(np.array([r.x for r in rows]), np.array([r.z for r in rows]),
                   np.array([r.phase for r in rows]))

    def row(self, i: int) -> PauliOp:
        return PauliOp(self.xs[i], self.zs[i], int(self.ps[i]))

    def destabilizer(self, i: int) -> PauliOp:
        return self.row(i)

    def stabilizer(self, i: int) -> PauliOp:
        return self.row(self.n + i)

    def conjugate(self, gate: Gate) -> 'CliffordTableau':
        return conjugate(self, gate)

    def apply(self, circuit: Circuit) -> 'CliffordTableau':
        xs, zs, ps = self.xs.copy(), self.zs.copy(), self.ps.copy()
        for gate in circuit:
            apply_gate(xs, zs, ps, gate)
        return CliffordTableau(xs, zs, ps)

    def commutation_ok(self) -> bool:
        """Destabilizer i anticommutes only with stabilizer i; stabilizers commute."""
        n = self.n
        x, z = self.xs.astype(np.int64), self.zs.astype(np.int64)
        gram = (x @ z.T + z @ x.T) & 1
        expected = np.zeros((2 * n, 2 * n), dtype=np.int64)
        expected[:n, n:] = np.eye(n, dtype=np.int64)
        expected[n:, :n] = np.eye(n, dtype=np.int64)
        return bool(np.array_equal(gram, expected))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return (np.array_equal(self.xs, other.xs) and np.array_equal(self.zs, other.zs)
                and np.array_equal(self.ps, other.ps))

    def __repr__(self) -> str:
        return f"CliffordTableau(n={self.n})"


def conjugate(t: CliffordTableau, gate: Gate) -> CliffordTableau:
    """Tableau with every row replaced by its exact image under the gate."""
    xs, zs, ps = t.xs.copy(), t.zs.copy(), t.ps.copy()
    apply_gate(xs, zs, ps, gate)
    return CliffordTableau(xs, zs, ps)


def circuit_symplectic(circuit: Circuit, n: int) -> BitMatrix:
    """
    Sign-free symplectic action of a circuit in row convention: row j is the image of
    generator j (X₁..X_n then Z₁..Z_n).
    """
    xs = np.vstack([np.eye(n, dtype=np.uint8), np.zeros((n, n), dtype=np.uint8)])
    zs = np.vstack([np.zeros((n, n), dtype=np.uint8), np.eye(n, dtype=np.uint8)])
    ps = np.zeros(2 * n, dtype=np.int64)
    for gate in circuit:
        apply_gate(xs, zs, ps, gate)
    return BitMatrix(np.hstack([xs, zs]))


# =============================================================================
# LOGICAL ACTION
# =============================================================================

class LogicalAction(NamedTuple):
    """
    Induced logical map.

    f: 2k×2k symplectic matrix, row j the image of X̄_j (j < k) or Z̄_{j-k}
    signs: per generator, 1 when the image carries a − sign relative to the Hermitian
           canonical logical product
    preserved: every stabilizer maps to a + element of the stabilizer group
    """
    f: BitMatrix
    signs: Tuple[int, ...]
    preserved: bool

    @property
    def pauli_free(self) -> bool:
        return not any(self.signs)


def _group_element(generators: Sequence[PauliOp], indices: Sequence[int], n: int) -> PauliOp:
    out = PauliOp.identity(n)
    for i in indices:
        out = out * generators[i]
    return out


def _stabilizer_and_logicals(code: Union[CssCode, StabilizerCode]) -> Tuple[List[PauliOp], List[PauliOp], List[PauliOp]]:
    if isinstance(code, CssCode):
        code = StabilizerCode.from_css(code)
    n, k = code.n, code.k
    stabs = code.stabilizer_generators()
    q = code.q
    xbar = [PauliOp.hermitian(q.data[i]) for i in range(k)]
    zbar = [PauliOp.hermitian(q.data[k + i]) for i in range(k)]
    return stabs, xbar, zbar


def _canonical_logical(xbar: List[PauliOp], zbar: List[PauliOp], a: Sequence[int], b: Sequence[int], n: int) -> PauliOp:
    """Hermitian product ∏ (i^{a_j b_j} X̄_j^{a_j} Z̄_j^{b_j})."""
    out = PauliOp.identity(n)
    for j in range(len(xbar)):
        term = PauliOp.identity(n)
        if a[j]:
            term = term * xbar[j]
        if b[j]:
            term = term * zbar[j]
        if a[j] and b[j]:
            term = PauliOp(term.x, term.z, term.phase + 1)
        out = out * term
    return out


def logical_action(code: Union[CssCode, StabilizerCode], circuit: Circuit) -> LogicalAction:
    """
    Logical symplectic map, Pauli frame and codespace check of a physical circuit.

    Args:
        code: Code with (or able to compute) a logical basis
        circuit: Circuit on the code's n qubits

    Returns:
        LogicalAction; preserved is False when some stabilizer leaves the group or
        changes sign

    Raises:
        ValueError: If a logical image is off its Hermitian canonical form by ±i

    Example:
        >>> code = CssCode(["1111"], ["1111"])
        >>> logical_action(code, Circuit()).f.is_identity()
        True
    """
    n = code.n
    stabs, xbar, zbar = _stabilizer_and_logicals(code)
    k = len(xbar)
    stab_rows = BitMatrix(np.array([s.to_symplectic() for s in stabs])).row_ints() if stabs else []

    preserved = True
    for s in stabs:
        image = conjugate_pauli(s, circuit)
        packed = BitMatrix(image.to_symplectic()).row_ints()[0]
        combo = solve_in_span(packed, stab_rows)
        if combo is None:
            preserved = False
            break
        if _group_element(stabs, combo, n).phase != image.phase:
            preserved = False
            break

    f_rows: List[List[int]] = []
    signs: List[int] = []
    for generator in xbar + zbar:
        image = conjugate_pauli(generator, circuit)
        a = [0 if image.commutes_with(zbar[j]) else 1 for j in range(k)]
        b = [0 if image.commutes_with(xbar[j]) else 1 for j in range(k)]
        f_rows.append(a + b)
        logical = _canonical_logical(xbar, zbar, a, b, n)
        remainder = image * logical
        packed = BitMatrix(remainder.to_symplectic()).row_ints()[0]
        combo = solve_in_span(packed, stab_rows) if packed else []
        if combo is None:
            preserved = False
            signs.append(0)
            continue
        diff = (remainder.phase - _group_element(stabs, combo, n).phase) % 4
        if diff % 2:
            raise ValueError("Logical image differs from its canonical form by a factor of ±i")
        signs.append(diff // 2)

    f = BitMatrix(f_rows) if f_rows else BitMatrix.zeros(0, 0)
    return LogicalAction(f=f, signs=tuple(signs), preserved=preserved)


def verify_claim(code: Union[CssCode, StabilizerCode], circuit: Circuit, f: BitMatrix,
                 signs: Optional[Sequence[int]] = None, up_to_pauli: bool = False) -> bool:
    """
    Check that a circuit preserves the codespace and implements the claimed logical map.

    Args:
        code: Code
        circuit: Physical circuit
        f: Claimed 2k×2k symplectic action (row convention)
        signs: Claimed sign frame (default all +)
        up_to_pauli: Ignore the sign frame

    Returns:
        bool: True iff the action matches exactly (signs included unless up_to_pauli)
    """
    try:
        action = logical_action(code, circuit)
    except ValueError as e:
        logger.error(f"Claim verification failed: {e}")
        return False
    if not action.preserved:
        logger.debug("Circuit does not preserve the codespace")
        return False
    if action.f != f:
        return False
    if up_to_pauli:
        return True
    claimed = tuple(signs) if signs is not None else tuple([0] * len(action.signs))
    return action.signs == claimed


# =============================================================================
# LOGICAL GATE SYMPLECTICS
# =============================================================================

def gate_symplectic(k: int, name: str, *qubits: int) -> BitMatrix:
    """
    Symplectic matrix of a named logical gate on k qubits (0-based qubit indices).

    Example:
        >>> gate_symplectic(2, "CNOT", 0, 1).to_strings()
        ['1100', '0100', '0010', '0011']
    """
    circuit = Circuit()
    if name.upper() == "PERM":
        circuit.perm(qubits)
    else:
        circuit.append(GateKind.from_name(name), *qubits)
    return circuit_symplectic(circuit, k)

