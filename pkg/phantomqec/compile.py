"""
Phantom QEC Toolkit - Compile Module

Compiles logical CNOT circuits over several phantom codeblocks into physical schedules
made of interblock transversal CNOT layers and zero-cost in-block relabellings.

Matrices follow the row convention used throughout the package: row j of a logical
map is the image of X̄_j, and a circuit's matrix is the product of its gate matrices
in time order. A schedule's layers multiplied in order, followed by its residual
logical permutation, give the compiled target.
"""

from mylogger import logger
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import networkx as nx
import numpy as np

from .codes import CssCode
from .enums import LayerKind
from .f2linalg import BitMatrix, block_pldu, elementary, gl_sum_split, inverse, is_invertible
from .phantom import PhantomWitness, compose_permutations, inverse_permutation
from .tableau import Circuit, logical_action


logger.info("Loading compile module")


Logical = Tuple[int, int]
Permutation = List[int]


# ==================== Circuits and schedules ====================

@dataclass
class LogicalCnotCircuit:
    """
    Ordered logical CNOTs over ``blocks`` codeblocks of ``k`` logical qubits each.

    Attributes:
        blocks: Number of codeblocks
        k: Logical qubits per block
        cnots: (control, target) pairs of (block, logical index)

    Raises:
        ValueError: If an index is out of range or a CNOT acts on a single qubit

    Example:
        >>> c = LogicalCnotCircuit(2, 1).cnot((0, 0), (1, 0))
        >>> c.to_matrix().to_strings()
        ['11', '01']
    """
    blocks: int
    k: int
    cnots: List[Tuple[Logical, Logical]] = field(default_factory=list)

    def __post_init__(self):
        if self.blocks < 1 or self.k < 1:
            raise ValueError(f"Need at least one block and one logical qubit, got B={self.blocks}, k={self.k}")
        self.cnots = [(self._check(c), self._check(t)) for c, t in self.cnots]
        for control, target in self.cnots:
            if control == target:
                raise ValueError(f"CNOT control and target coincide: {control}")

    def _check(self, logical: Sequence[int]) -> Logical:
        block, index = (int(v) for v in logical)
        if not (0 <= block < self.blocks and 0 <= index < self.k):
            raise ValueError(f"Logical qubit {(block, index)} out of range for B={self.blocks}, k={self.k}")
        return block, index

    @property
    def size(self) -> int:
        """Total number of logical qubits."""
        return self.blocks * self.k

    def index(self, logical: Logical) -> int:
        return logical[0] * self.k + logical[1]

    def cnot(self, control: Sequence[int], target: Sequence[int]) -> 'LogicalCnotCircuit':
        """Append a CNOT and return self for chaining."""
        control, target = self._check(control), self._check(target)
        if control == target:
            raise ValueError(f"CNOT control and target coincide: {control}")
        self.cnots.append((control, target))
        return self

    def to_matrix(self) -> BitMatrix:
        """Logical X-sector map in GL(Bk, F2)."""
        out = BitMatrix.identity(self.size)
        for control, target in self.cnots:
            out = out @ elementary(self.size, self.index(control), self.index(target))
        return out

    def is_unidirectional(self) -> bool:
        """True when every interblock CNOT points the same way along block order."""
        forward = any(c[0] < t[0] for c, t in self.cnots)
        backward = any(c[0] > t[0] for c, t in self.cnots)
        return not (forward and backward)

    @classmethod
    def random(cls, blocks: int, k: int, count: int, rng: Optional[np.random.Generator] = None,
               unidirectional: bool = False) -> 'LogicalCnotCircuit':
        """
        Uniformly drawn CNOTs; unidirectional circuits only point to higher blocks.

        Raises:
            ValueError: If the register has a single logical qubit and count > 0
        """
        rng = rng or np.random.default_rng()
        circuit = cls(blocks, k)
        size = blocks * k
        if size < 2 and count:
            raise ValueError("A random CNOT needs at least two logical qubits")
        while len(circuit.cnots) < count:
            a, b = (int(v) for v in rng.choice(size, size=2, replace=False))
            if unidirectional and a // k > b // k:
                a, b = b, a
            circuit.cnot(divmod(a, k), divmod(b, k))
        return circuit

    def to_dict(self) -> Dict[str, Any]:
        return {
            "blocks": self.blocks,
            "k": self.k,
            "cnots": [[list(c), list(t)] for c, t in self.cnots],
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> 'LogicalCnotCircuit':
        """Parse circuit JSON; raises ValueError on missing fields."""
        try:
            cnots = [(tuple(c), tuple(t)) for c, t in payload.get("cnots", [])]
            return cls(int(payload["blocks"]), int(payload["k"]), cnots)
        except (KeyError, TypeError) as e:
            raise ValueError(f"Malformed circuit JSON: {e}") from e


@dataclass(frozen=True)
class Layer:
    """
    One schedule layer.

    Attributes:
        kind: TRANSVERSAL or RELABEL
        pairs: (control block, target block) pairs of a transversal layer
        block: Relabelled block
        matrix: k×k in-block logical map of a relabelling
        permutation: Physical qubit permutation realising the relabelling, when known
    """
    kind: LayerKind
    pairs: Tuple[Tuple[int, int], ...] = ()
    block: int = -1
    matrix: Optional[BitMatrix] = None
    permutation: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind is LayerKind.TRANSVERSAL:
            touched = [b for pair in self.pairs for b in pair]
            if len(touched) != len(set(touched)):
                raise ValueError(f"Transversal layer touches a block twice: {list(self.pairs)}")
        elif self.matrix is None or self.block < 0:
            raise ValueError("A relabel layer needs a block and a matrix")

    def action(self, blocks: int, k: int) -> BitMatrix:
        """The layer's map on all Bk logical qubits."""
        array = np.eye(blocks * k, dtype=np.uint8)
        if self.kind is LayerKind.TRANSVERSAL:
            for control, target in self.pairs:
                for i in range(k):
                    array[control * k + i, target * k + i] = 1
        else:
            lo = self.block * k
            array[lo:lo + k, lo:lo + k] = self.matrix.data
        return BitMatrix(array)

    def to_dict(self) -> Dict[str, Any]:
        if self.kind is LayerKind.TRANSVERSAL:
            return {"kind": str(self.kind),
                    "pairs": [{"control": c, "target": t} for c, t in self.pairs]}
        return {
            "kind": str(self.kind),
            "block": self.block,
            "matrix": self.matrix.to_strings(),
            "permutation": list(self.permutation) if self.permutation is not None else None,
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> 'Layer':
        kind = LayerKind(payload["kind"])
        if kind is LayerKind.TRANSVERSAL:
            return cls(kind, pairs=tuple((int(p["control"]), int(p["target"])) for p in payload["pairs"]))
        perm = payload.get("permutation")
        return cls(kind, block=int(payload["block"]), matrix=BitMatrix(payload["matrix"]),
                   permutation=tuple(perm) if perm is not None else None)


@dataclass
class PhysicalSchedule:
    """
    Compiled program: layers in time order, then a residual logical permutation.

    Attributes:
        blocks: Number of codeblocks
        k: Logical qubits per block
        layers: Transversal and relabel layers
        residual: Logical qubit i ends at residual[i]; identity when nothing is left over
    """
    blocks: int
    k: int
    layers: List[Layer] = field(default_factory=list)
    residual: Permutation = field(default_factory=list)

    def __post_init__(self):
        if not self.residual:
            self.residual = list(range(self.blocks * self.k))
        if sorted(self.residual) != list(range(self.blocks * self.k)):
            raise ValueError(f"Residual is not a permutation of {self.blocks * self.k} logicals")

    @property
    def depth(self) -> int:
        """Transversal depth; relabellings count zero."""
        return sum(1 for layer in self.layers if layer.kind is LayerKind.TRANSVERSAL)

    @property
    def relabel_count(self) -> int:
        return sum(1 for layer in self.layers if layer.kind is LayerKind.RELABEL)

    @property
    def has_residual(self) -> bool:
        return self.residual != list(range(self.blocks * self.k))

    def residual_blocks(self) -> Optional[Permutation]:
        """Block map when the residual moves whole blocks in order, otherwise None."""
        k = self.k
        images = []
        for b in range(self.blocks):
            target = self.residual[b * k] // k
            if any(self.residual[b * k + i] != target * k + i for i in range(k)):
                return None
            images.append(target)
        return images

    def matrix(self, include_residual: bool = True) -> BitMatrix:
        """Logical X-sector map of the whole schedule."""
        out = BitMatrix.identity(self.blocks * self.k)
        for layer in self.layers:
            out = out @ layer.action(self.blocks, self.k)
        if include_residual:
            out = out @ BitMatrix.permutation(self.residual)
        return out

    def summary(self) -> str:
        """Depth, relabel count and residual in one line."""
        residual = "identity" if not self.has_residual else " ".join(map(str, self.residual))
        return f"depth={self.depth} relabels={self.relabel_count} residual={residual}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "blocks": self.blocks,
            "k": self.k,
            "depth": self.depth,
            "relabel_count": self.relabel_count,
            "layers": [layer.to_dict() for layer in self.layers],
            "residual": list(self.residual),
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> 'PhysicalSchedule':
        try:
            return cls(int(payload["blocks"]), int(payload["k"]),
                       [Layer.from_dict(item) for item in payload.get("layers", [])],
                       [int(v) for v in payload.get("residual", [])])
        except (KeyError, TypeError) as e:
            raise ValueError(f"Malformed schedule JSON: {e}") from e


# ==================== Relabel permutations ====================

def cnot_word(matrix: BitMatrix) -> List[Tuple[int, int]]:
    """
    In-block CNOTs (control, target) whose time-ordered product is ``matrix``.

    Gauss-Jordan with row additions only; each addition row a += row b is CNOT(a, b).

    Raises:
        ValueError: If the matrix is singular

    Example:
        >>> cnot_word(BitMatrix(["11", "01"]))
        [(0, 1)]
    """
    if not is_invertible(matrix):
        raise ValueError("Relabel matrix is singular")
    work = matrix.data.astype(np.uint8).copy()
    k = work.shape[0]
    ops: List[Tuple[int, int]] = []
    for col in range(k):
        if not work[col, col]:
            source = next(r for r in range(col + 1, k) if work[r, col])
            work[col] ^= work[source]
            ops.append((col, source))
        for row in range(k):
            if row != col and work[row, col]:
                work[row] ^= work[col]
                ops.append((row, col))
    return ops


def relabel_permutation(matrix: BitMatrix, witness: PhantomWitness) -> Permutation:
    """Physical permutation implementing an in-block logical map via witness CNOTs."""
    n = witness.lx.cols
    perms = [witness.perms[op] for op in cnot_word(matrix)]
    return compose_permutations(*perms) if perms else list(range(n))


# ==================== Schedule assembly ====================

class _Trace:
    """Relabel/transversal steps on physical block ids, with merging of adjacent relabels."""

    def __init__(self, k: int):
        self.k = k
        self.steps: List[Tuple[Dict[int, BitMatrix], List[Tuple[int, int]]]] = []
        self.tail: Dict[int, BitMatrix] = {}

    def relabel(self, block: int, matrix: BitMatrix) -> None:
        current = self.tail.get(block)
        self.tail[block] = matrix if current is None else current @ matrix

    def transversal(self, pairs: Sequence[Tuple[int, int]]) -> None:
        if not pairs:
            return
        self.steps.append((self.tail, list(pairs)))
        self.tail = {}

    def extend(self, other: '_Trace') -> None:
        for relabels, pairs in other.steps:
            for block, matrix in relabels.items():
                self.relabel(block, matrix)
            self.transversal(pairs)
        for block, matrix in other.tail.items():
            self.relabel(block, matrix)

    @staticmethod
    def parallel(first: '_Trace', second: '_Trace') -> '_Trace':
        """Run two traces on disjoint blocks side by side."""
        out = _Trace(first.k)
        length = max(len(first.steps), len(second.steps))
        for i in range(length):
            relabels: Dict[int, BitMatrix] = {}
            pairs: List[Tuple[int, int]] = []
            for trace in (first, second):
                if i < len(trace.steps):
                    relabels.update(trace.steps[i][0])
                    pairs.extend(trace.steps[i][1])
                elif i == len(trace.steps):
                    relabels.update(trace.tail)
            out.steps.append((relabels, pairs))
        for trace in (first, second):
            if len(trace.steps) == length:
                out.tail.update(trace.tail)
        return out

    def layers(self, witness: Optional[PhantomWitness] = None) -> List[Layer]:
        out: List[Layer] = []

        def emit(relabels: Dict[int, BitMatrix]) -> None:
            for block in sorted(relabels):
                matrix = relabels[block]
                if matrix.is_identity():
                    continue
                perm = tuple(relabel_permutation(matrix, witness)) if witness is not None else None
                out.append(Layer(LayerKind.RELABEL, block=block, matrix=matrix, permutation=perm))

        for relabels, pairs in self.steps:
            emit(relabels)
            out.append(Layer(LayerKind.TRANSVERSAL, pairs=tuple(pairs)))
        emit(self.tail)
        return out


def _sub_block(m: BitMatrix, i: int, j: int, k: int) -> BitMatrix:
    return m[i * k:(i + 1) * k, j * k:(j + 1) * k]


def _as_permutation(m: BitMatrix) -> Permutation:
    return [int(v) for v in np.argmax(m.data, axis=1)]


def _off_diagonal(trace: _Trace, grid: BitMatrix, controls: Sequence[int], targets: Sequence[int]) -> None:
    """
    Realise [[I, grid], [0, I]] from ``controls`` to ``targets`` by cyclic matchings.

    Round t pairs control i with target i XOR t; within a round an invertible entry A costs one
    transversal layer (relabel A, CNOT, relabel A⁻¹) and a singular one costs two, via A = A1 + A2.
    """
    k = trace.k
    h = len(controls)
    for t in range(h):
        first, second = [], []
        for i in range(h):
            j = i ^ t
            entry = _sub_block(grid, i, j, k)
            if entry.is_zero():
                continue
            if is_invertible(entry):
                first.append((i, j, entry))
            else:
                a1, a2 = gl_sum_split(entry)
                first.append((i, j, a1))
                second.append((i, j, a2))
        for entries in (first, second):
            for i, _, a in entries:
                trace.relabel(controls[i], a)
            trace.transversal([(controls[i], targets[j]) for i, j, _ in entries])
            for i, _, a in entries:
                trace.relabel(controls[i], inverse(a))


def _compile(x: BitMatrix, blocks: Sequence[int], k: int) -> Tuple[_Trace, BitMatrix]:
    """
    Trace and local residual permutation matrix R with trace · R = x.

    Block-triangular levels split as diag · off-diagonal and never add a residual; other
    levels use block-PLDU of x⁻¹, so x = upper · diag · lower · P⁻¹.
    """
    trace = _Trace(k)
    if len(blocks) == 1:
        trace.relabel(blocks[0], x)
        return trace, BitMatrix.identity(k)

    h = len(blocks) // 2
    m = h * k
    top, bottom = list(blocks[:h]), list(blocks[h:])
    a, b = x[:m, :m], x[:m, m:]
    c, d = x[m:, :m], x[m:, m:]

    if c.is_zero():
        t1, q1 = _compile(a, top, k)
        t2, q2 = _compile(d, bottom, k)
        trace.extend(_Trace.parallel(t1, t2))
        _off_diagonal(trace, q1 @ inverse(a) @ b @ q2.T, top, bottom)
        return trace, _block_diag(q1, q2)

    if b.is_zero():
        t1, q1 = _compile(a, top, k)
        t2, q2 = _compile(d, bottom, k)
        trace.extend(_Trace.parallel(t1, t2))
        _off_diagonal(trace, q2 @ inverse(d) @ c @ q1.T, bottom, top)
        return trace, _block_diag(q1, q2)

    pl = block_pldu(inverse(x), m)
    _off_diagonal(trace, pl.u, top, bottom)
    t1, q1 = _compile(inverse(pl.c1), top, k)
    t2, q2 = _compile(inverse(pl.c2), bottom, k)
    trace.extend(_Trace.parallel(t1, t2))
    _off_diagonal(trace, q2 @ pl.l @ q1.T, bottom, top)
    return trace, _block_diag(q1, q2) @ pl.p.T


def _block_diag(first: BitMatrix, second: BitMatrix) -> BitMatrix:
    return BitMatrix.block([[first, BitMatrix.zeros(first.rows, second.cols)],
                            [BitMatrix.zeros(second.rows, first.cols), second]])


def _padded_blocks(blocks: int) -> int:
    size = 1
    while size < blocks:
        size *= 2
    return size


# ==================== Compilation ====================

def compile_matrix(x: BitMatrix, k: int, witness: Optional[PhantomWitness] = None) -> PhysicalSchedule:
    """
    Compile an invertible logical map over x.rows // k blocks.

    Block counts that are not a power of two are padded with identity blocks, which the
    schedule never touches.

    Args:
        x: Target in GL(Bk, F2)
        k: Logical qubits per block
        witness: Phantom witness used to attach physical permutations to relabellings

    Raises:
        ValueError: If x is singular or its size is not a multiple of k
    """
    if x.rows != x.cols or k < 1 or x.rows % k:
        raise ValueError(f"Expected a square matrix of size a multiple of k={k}, got {x.shape}")
    if not is_invertible(x):
        raise ValueError("Target logical map is singular")
    if witness is not None and witness.k != k:
        raise ValueError(f"Witness has k={witness.k}, circuit has k={k}")

    blocks = x.rows // k
    padded = _padded_blocks(blocks)
    full = x
    if padded != blocks:
        full = _block_diag(x, BitMatrix.identity((padded - blocks) * k))
    trace, residual = _compile(full, list(range(padded)), k)

    layers = trace.layers(witness)
    touched = set()
    for layer in layers:
        if layer.kind is LayerKind.TRANSVERSAL:
            touched.update(b for pair in layer.pairs for b in pair)
        else:
            touched.add(layer.block)
    if any(b >= blocks for b in touched):
        raise RuntimeError("Compiled schedule touched a padding block")
    images = _as_permutation(residual)
    if any(images[i] != i for i in range(blocks * k, padded * k)):
        raise RuntimeError("Residual permutation moved a padding block")

    schedule = PhysicalSchedule(blocks, k, layers, images[:blocks * k])
    logger.debug(f"Compiled B={blocks} k={k}: {schedule.summary()}")
    return schedule


def compile_two_blocks(x: BitMatrix, k: int, witness: Optional[PhantomWitness] = None) -> PhysicalSchedule:
    """
    Compile a two-block logical CNOT map in transversal depth at most four.

    Block-triangular maps take at most two layers and keep the logical ordering; an
    upper-triangular map with invertible off-diagonal block takes a single layer.

    Raises:
        ValueError: If x is not 2k×2k or is singular

    Example:
        >>> eye, zero = BitMatrix.identity(2), BitMatrix.zeros(2, 2)
        >>> compile_two_blocks(BitMatrix.block([[eye, eye], [zero, eye]]), 2).depth
        1
    """
    if x.shape != (2 * k, 2 * k):
        raise ValueError(f"Expected a {2 * k}x{2 * k} matrix, got {x.shape}")
    return compile_matrix(x, k, witness)


def compile_multiblock(circuit: Union[LogicalCnotCircuit, BitMatrix], k: Optional[int] = None,
                       witness: Optional[PhantomWitness] = None) -> PhysicalSchedule:
    """
    Compile a logical CNOT circuit over B codeblocks.

    For B = 2^a the transversal depth is at most 4(2^a - 1), and at most 2(2^a - 1) with no
    residual permutation when all interblock CNOTs point the same way.

    Args:
        circuit: LogicalCnotCircuit, or its matrix together with k
        k: Logical qubits per block when a matrix is given
        witness: Optional phantom witness for physical relabel permutations

    Example:
        >>> c = LogicalCnotCircuit(4, 2).cnot((0, 0), (3, 1)).cnot((1, 1), (2, 0))
        >>> s = compile_multiblock(c)
        >>> s.depth <= 6, s.has_residual
        (True, False)
    """
    if isinstance(circuit, LogicalCnotCircuit):
        logger.info(f"Compiling {len(circuit.cnots)} logical CNOTs over {circuit.blocks} blocks")
        return compile_matrix(circuit.to_matrix(), circuit.k, witness)
    if k is None:
        raise ValueError("k is required when compiling a matrix")
    return compile_matrix(circuit, k, witness)


# ==================== Logical permutations ====================

def _swap_slots(trace: _Trace, pairs: Sequence[Tuple[int, int]], slots: Dict[Tuple[int, int], int]) -> None:
    """
    Aligned swap circuit: for each block pair (u, v) exchange logical 2t of u and v for t < slots.

    Seven factors, four of them transversal; logicals outside the swapped slot pairs see
    upper · lower · lower · upper = I.
    """
    k = trace.k
    active = [(u, v) for u, v in pairs if slots[(u, v)]]

    def pair_matrix(count: int, core: Sequence[Sequence[int]]) -> BitMatrix:
        array = np.eye(k, dtype=np.uint8)
        for t in range(count):
            array[2 * t:2 * t + 2, 2 * t:2 * t + 2] = core
        return BitMatrix(array)

    down = [(u, v) for u, v in active]
    up = [(v, u) for u, v in active]
    first, second = [[1, 1], [1, 0]], [[1, 0], [1, 1]]

    def mix(second_block: bool) -> None:
        for u, v in active:
            trace.relabel(u, pair_matrix(slots[(u, v)], first))
            if second_block:
                trace.relabel(v, pair_matrix(slots[(u, v)], second))

    trace.transversal(down)
    mix(True)
    trace.transversal(up)
    mix(True)
    trace.transversal(up)
    mix(False)
    trace.transversal(down)


def _route_pairs(trace: _Trace, moves: Dict[Tuple[int, int], Dict[int, int]]) -> None:
    """
    Apply, in parallel over disjoint block pairs, a permutation of the 2k logicals of each pair.

    ``moves[(u, v)]`` maps slot s (0..k-1 in u, k..2k-1 in v) to its destination slot; at
    most ⌊k/2⌋ logicals may cross in each direction.
    """
    k = trace.k
    slots: Dict[Tuple[int, int], int] = {}
    post: Dict[Tuple[int, int], Tuple[List[int], List[int]]] = {}
    for (u, v), rho in moves.items():
        cross_u = [s for s in range(k) if rho[s] >= k]
        cross_v = [s for s in range(k, 2 * k) if rho[s] < k]
        count = len(cross_u)
        if count != len(cross_v) or count > k // 2:
            raise ValueError(f"Blocks {u},{v}: {count} crossings exceed the swap capacity {k // 2}")
        alpha_u = _alignment([s for s in cross_u], k)
        alpha_v = _alignment([s - k for s in cross_v], k)
        trace.relabel(u, BitMatrix.permutation(alpha_u))
        trace.relabel(v, BitMatrix.permutation(alpha_v))

        # origin of the content sitting in each slot after the swap circuit
        origin_u = inverse_permutation(alpha_u)
        origin_v = [k + s for s in inverse_permutation(alpha_v)]
        for t in range(count):
            origin_u[2 * t], origin_v[2 * t] = origin_v[2 * t], origin_u[2 * t]
        beta_u = [rho[p] % k for p in origin_u]
        beta_v = [rho[p] % k for p in origin_v]
        slots[(u, v)] = count
        post[(u, v)] = (beta_u, beta_v)

    if any(slots.values()):
        _swap_slots(trace, list(moves), slots)
    for (u, v), (beta_u, beta_v) in post.items():
        trace.relabel(u, BitMatrix.permutation(beta_u))
        trace.relabel(v, BitMatrix.permutation(beta_v))


def _alignment(crossing: Sequence[int], k: int) -> Permutation:
    """In-block permutation sending crossing[t] to slot 2t and the rest, in order, to free slots."""
    images = [-1] * k
    for t, s in enumerate(crossing):
        images[s] = 2 * t
    free = [slot for slot in range(k) if slot not in set(images)]
    for s in range(k):
        if images[s] < 0:
            images[s] = free.pop(0)
    return images


def compile_logical_swap_pairs(pairs: Sequence[Tuple[int, int]], k: int,
                               witness: Optional[PhantomWitness] = None) -> PhysicalSchedule:
    """
    Swap logical i of block 0 with logical j of block 1 for each (i, j), in depth four.

    Args:
        pairs: Disjoint (i, j) index pairs, at most ⌊k/2⌋ of them
        k: Logical qubits per block
        witness: Optional phantom witness for relabel permutations

    Raises:
        ValueError: If indices repeat, are out of range or exceed ⌊k/2⌋ pairs

    Example:
        >>> s = compile_logical_swap_pairs([(0, 0)], 2)
        >>> s.depth, s.matrix().to_strings()
        (4, ['0010', '0100', '1000', '0001'])
    """
    pairs = [(int(i), int(j)) for i, j in pairs]
    left, right = [i for i, _ in pairs], [j for _, j in pairs]
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        raise ValueError(f"Swap pairs must be disjoint: {pairs}")
    if any(not (0 <= v < k) for v in left + right):
        raise ValueError(f"Swap index out of range for k={k}: {pairs}")
    if len(pairs) > k // 2:
        raise ValueError(f"At most {k // 2} swaps fit in one depth-four circuit, got {len(pairs)}")

    rho = {s: s for s in range(2 * k)}
    for i, j in pairs:
        rho[i], rho[k + j] = k + j, i
    trace = _Trace(k)
    if pairs:
        _route_pairs(trace, {(0, 1): rho})
    return PhysicalSchedule(2, k, trace.layers(witness))


def involution_factors(perm: Sequence[int]) -> Tuple[Permutation, Permutation]:
    """
    Involutions (first, second) with perm[i] = second[first[i]].

    Each cycle c0 → c1 → … is reflected twice: first sends c_i to c_-i and second c_i to c_(1-i).

    Example:
        >>> involution_factors([1, 2, 0])
        ([0, 2, 1], [1, 0, 2])
    """
    n = len(perm)
    first, second = list(range(n)), list(range(n))
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        while perm[cycle[-1]] != start:
            cycle.append(perm[cycle[-1]])
            seen[cycle[-1]] = True
        length = len(cycle)
        for i, value in enumerate(cycle):
            first[value] = cycle[-i % length]
            second[value] = cycle[(1 - i) % length]
    return first, second


def edge_colouring(graph: nx.Graph) -> Dict[Tuple[int, int], int]:
    """
    Proper edge colouring with at most Δ+1 colours (Misra-Gries fan rotation).

    Keys are edges with the smaller endpoint first.

    Raises:
        RuntimeError: If the colouring fails its properness check
    """
    colour: Dict[frozenset, int] = {}
    degree = max((d for _, d in graph.degree()), default=0)
    palette = range(degree + 1)

    def used(x: int) -> set:
        return {colour[frozenset((x, y))] for y in graph[x] if frozenset((x, y)) in colour}

    def free(x: int) -> int:
        taken = used(x)
        return next(c for c in palette if c not in taken)

    def neighbour_with(x: int, c: int) -> Optional[int]:
        for y in graph[x]:
            if colour.get(frozenset((x, y))) == c:
                return y
        return None

    for u, v in sorted(tuple(sorted(e)) for e in graph.edges()):
        fan = [v]
        while True:
            last_free = set(palette) - used(fan[-1])
            nxt = next((w for w in graph[u] if w not in fan and frozenset((u, w)) in colour
                        and colour[frozenset((u, w))] in last_free), None)
            if nxt is None:
                break
            fan.append(nxt)
        c, d = free(u), free(fan[-1])

        # invert the cd-path from u; c is free on u so it is a simple path
        path: List[frozenset] = []
        x, want = u, d
        while True:
            y = neighbour_with(x, want)
            if y is None or frozenset((x, y)) in path:
                break
            path.append(frozenset((x, y)))
            x, want = y, (c if want == d else d)
        for key in path:
            colour[key] = c if colour[key] == d else d

        end = None
        for i, w in enumerate(fan):
            if i:
                link = colour.get(frozenset((u, w)))
                if link is None or link in used(fan[i - 1]):
                    break
            if d not in used(w):
                end = i
                break
        if end is None:
            raise RuntimeError(f"No fan rotation found for edge ({u}, {v})")
        for i in range(end):
            colour[frozenset((u, fan[i]))] = colour[frozenset((u, fan[i + 1]))]
        colour[frozenset((u, fan[end]))] = d

    out = {tuple(sorted(e)): c for e, c in colour.items()}
    for x in graph.nodes():
        seen = [out[tuple(sorted((x, y)))] for y in graph[x]]
        if len(seen) != len(set(seen)):
            raise RuntimeError(f"Edge colouring is not proper at node {x}")
    if out and max(out.values()) > degree:
        raise RuntimeError(f"Edge colouring used more than {degree + 1} colours")
    return out


def _involution_layer(trace: _Trace, sigma: Sequence[int], k: int, place: List[int]) -> None:
    """
    Apply the involution ``sigma`` on logical roles; ``place[b]`` is the physical block holding role b.

    Pairs of roles with more than ⌊k/2⌋ transpositions exchange the whole blocks by renaming
    and swap back the complement.
    """
    blocks = len(place)
    inblock: Dict[int, List[int]] = {}
    between: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for p, q in enumerate(sigma):
        if q <= p:
            continue
        bp, bq = p // k, q // k
        if bp == bq:
            inblock.setdefault(bp, list(range(k)))
            images = inblock[bp]
            images[p % k], images[q % k] = q % k, p % k
        else:
            between.setdefault((bp, bq), []).append((p % k, q % k))
    for role, images in sorted(inblock.items()):
        trace.relabel(place[role], BitMatrix.permutation(images))

    graph = nx.Graph()
    graph.add_nodes_from(range(blocks))
    graph.add_edges_from(between)
    colours = edge_colouring(graph)
    for c in sorted(set(colours.values())):
        moves: Dict[Tuple[int, int], Dict[int, int]] = {}
        exchanges: List[Tuple[int, int]] = []
        for (u, v), swaps in sorted(between.items()):
            if colours[(u, v)] != c:
                continue
            rho = {s: s for s in range(2 * k)}
            if len(swaps) <= k // 2:
                for i, j in swaps:
                    rho[i], rho[k + j] = k + j, i
            else:
                # role u moves into physical block place[v]: its untouched logicals cross, swapped ones stay
                for s in range(2 * k):
                    rho[s] = (s + k) % (2 * k)
                for i, j in swaps:
                    rho[i], rho[k + j] = j, k + i
                exchanges.append((u, v))
            moves[(place[u], place[v])] = rho
        _route_pairs(trace, moves)
        for u, v in exchanges:
            place[u], place[v] = place[v], place[u]


def residual_permutation(perm: Sequence[int], k: int,
                         witness: Optional[PhantomWitness] = None) -> PhysicalSchedule:
    """
    Realise a logical permutation over B blocks in transversal depth at most 8k + 8.

    The permutation is split into two involutions. In-block transpositions become
    relabellings; interblock ones are grouped per block pair, the block graph is edge
    coloured with at most k + 1 colours and every colour class runs one swap circuit.
    Whole-block exchanges are renamings and appear as a block-aligned residual.

    Args:
        perm: Logical qubit i moves to perm[i]
        k: Logical qubits per block
        witness: Optional phantom witness for relabel permutations

    Raises:
        ValueError: If perm is not a permutation of a multiple of k logicals

    Example:
        >>> residual_permutation([1, 0, 2, 3], 2).depth
        0
    """
    perm = [int(v) for v in perm]
    if k < 1 or len(perm) % k or sorted(perm) != list(range(len(perm))):
        raise ValueError(f"Expected a permutation of a multiple of k={k} logicals")
    blocks = len(perm) // k
    trace = _Trace(k)
    place = list(range(blocks))
    for sigma in involution_factors(perm):
        _involution_layer(trace, sigma, k, place)

    # role b ended up in physical block place[b]; the residual renames it back
    residual = [0] * (blocks * k)
    for role, physical in enumerate(place):
        for i in range(k):
            residual[physical * k + i] = role * k + i
    schedule = PhysicalSchedule(blocks, k, trace.layers(witness), residual)
    logger.debug(f"Routed logical permutation over {blocks} blocks: {schedule.summary()}")
    return schedule


def route_residual(schedule: PhysicalSchedule, witness: Optional[PhantomWitness] = None) -> PhysicalSchedule:
    """
    Append the routing of a schedule's residual so only whole-block renamings remain.

    The combined schedule implements the same target; its transversal depth grows by
    at most 8k + 8.
    """
    if not schedule.has_residual:
        return schedule
    routed = residual_permutation(schedule.residual, schedule.k, witness)
    return PhysicalSchedule(schedule.blocks, schedule.k, schedule.layers + routed.layers, routed.residual)


# ==================== Verification ====================

def _block_copies(code: CssCode, blocks: int, witness: PhantomWitness) -> CssCode:
    eye = np.eye(blocks, dtype=np.uint8)
    return CssCode(np.kron(eye, code.hx.data), np.kron(eye, code.hz.data),
                   np.kron(eye, witness.lx.data), np.kron(eye, witness.lz.data),
                   name=f"{blocks} x {code.name}".strip())


def physical_circuit(schedule: PhysicalSchedule, n: int, witness: Optional[PhantomWitness] = None) -> Circuit:
    """
    Physical circuit on B·n qubits: block b holds qubits b·n .. b·n+n-1.

    Raises:
        ValueError: If a relabelling has no permutation and no witness is given
    """
    circuit = Circuit()
    total = schedule.blocks * n
    for layer in schedule.layers:
        if layer.kind is LayerKind.TRANSVERSAL:
            for control, target in layer.pairs:
                for q in range(n):
                    circuit.cnot(control * n + q, target * n + q)
            continue
        perm = layer.permutation
        if perm is None:
            if witness is None:
                raise ValueError(f"Relabel of block {layer.block} has no permutation; pass a witness")
            perm = relabel_permutation(layer.matrix, witness)
        images = list(range(total))
        for q in range(n):
            images[layer.block * n + q] = layer.block * n + perm[q]
        circuit.perm(images)
    return circuit


def verify_schedule(schedule: PhysicalSchedule, target: Union[BitMatrix, LogicalCnotCircuit],
                    code: Optional[CssCode] = None, witness: Optional[PhantomWitness] = None) -> bool:
    """
    Check that a schedule implements a target logical CNOT map.

    The layers are propagated symbolically and compared with the target up to the
    declared residual. With a code, the physical circuit on B copies is additionally
    simulated on the stabilizer tableau and its logical action compared.

    Args:
        schedule: Compiled schedule
        target: GL(Bk) matrix or the source circuit
        code: Optional CSS code of every block
        witness: Phantom witness of the code, required with code unless the
            relabellings carry permutations

    Example:
        >>> c = LogicalCnotCircuit(2, 2).cnot((0, 1), (1, 0))
        >>> verify_schedule(compile_multiblock(c), c)
        True
    """
    if isinstance(target, LogicalCnotCircuit):
        target = target.to_matrix()
    size = schedule.blocks * schedule.k
    if target.shape != (size, size):
        logger.warning(f"Target shape {target.shape} does not match schedule size {size}")
        return False
    if schedule.matrix() != target:
        logger.debug("Schedule action differs from target")
        return False
    if code is None:
        return True

    if witness is None and any(l.kind is LayerKind.RELABEL and l.permutation is None for l in schedule.layers):
        raise ValueError("Tableau verification needs a witness or permuted relabellings")
    basis = witness or PhantomWitness({}, code.lx, code.lz)
    stacked = _block_copies(code, schedule.blocks, basis)
    action = logical_action(stacked, physical_circuit(schedule, code.n, witness))
    core = schedule.matrix(include_residual=False)
    expected = _block_diag(core, inverse(core).T)
    ok = action.preserved and action.f == expected
    if not ok:
        logger.warning("Tableau simulation disagrees with the symbolic schedule action")
    return ok
