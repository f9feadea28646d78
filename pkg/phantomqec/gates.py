"""
Phantom QEC Toolkit - Gates Module

Logical gate search beyond permutation CNOTs:
- automorphism Cliffords (qubit permutations with single-qubit Cliffords) from the
  extended three-block check matrix
- diagonal gates from single-qubit Z rotations, via phase polynomials and kernels
  over Z_{2^l} in Howell form
- depth-one S/CZ fold gates, via the embedded code
"""

from mylogger import logger
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union
import numpy as np

from .codes import CssCode, PauliOp, StabilizerCode
from .config import QecConfig, default_config
from .construct import FoldCircuit, fold_involution, punctured_fold
from .enums import FoldKind, LocalClifford
from .f2linalg import BitMatrix, row_basis, row_span_equal, solve_in_span
from .phantom import _span_words
from .tableau import Circuit, conjugate_pauli, logical_action
from .utils import QecUtils


logger.info("Loading gates module")

MAX_LEVEL = 4

# Images of X and Z as (x, z) bits under each local Clifford, modulo Paulis.
_LOCAL_ACTION: Dict[LocalClifford, Tuple[Tuple[int, int], Tuple[int, int]]] = {
    LocalClifford.I: ((1, 0), (0, 1)),
    LocalClifford.H: ((0, 1), (1, 0)),
    LocalClifford.S: ((1, 1), (0, 1)),
    LocalClifford.HS: ((1, 1), (1, 0)),
    LocalClifford.SH: ((0, 1), (1, 1)),
    LocalClifford.HSH: ((1, 0), (1, 1)),
}

# Slot of the linear functional (coefficient of x, coefficient of z) in a qubit triple.
_SLOT = {(1, 0): 0, (0, 1): 1, (1, 1): 2}


# ==================== Extended check matrix ====================

@dataclass
class ExtendedCheckMatrix:
    """
    Three-block check matrix H_E = [H_x | H_z | H_x ⊕ H_z].

    Columns q, n+q and 2n+q form the triple of qubit q. H and S act on a triple as
    transpositions of its slots, SWAP as a simultaneous move of two triples.

    Example:
        >>> ext = ExtendedCheckMatrix.from_code(CssCode(["11"], ["11"]))
        >>> ext.data.to_strings()
        ['110011', '001111']
    """
    hx: BitMatrix
    hz: BitMatrix

    def __post_init__(self):
        if self.hx.shape != self.hz.shape:
            raise ValueError("X and Z blocks must have the same shape")

    @classmethod
    def from_code(cls, code: Union[CssCode, StabilizerCode]) -> 'ExtendedCheckMatrix':
        stab = code if isinstance(code, StabilizerCode) else StabilizerCode.from_css(code)
        n = stab.n
        h = row_basis(stab.h) if stab.h.rows else BitMatrix.zeros(0, 2 * n)
        return cls(BitMatrix(h.data[:, :n], cols=n), BitMatrix(h.data[:, n:], cols=n))

    @property
    def n(self) -> int:
        return self.hx.cols

    @property
    def data(self) -> BitMatrix:
        return BitMatrix.hstack(self.hx, self.hz, self.hx + self.hz)

    def column_permutation(self, perm: Sequence[int], local: Sequence[LocalClifford]) -> List[int]:
        """
        The 3n-column permutation of a qubit permutation with local Cliffords.

        Column c moves to position result[c]; local[q] acts before qubit q moves to perm[q].
        """
        n = self.n
        out = [0] * (3 * n)
        for q in range(n):
            (ax, az), (bx, bz) = _LOCAL_ACTION[LocalClifford(local[q])]
            functionals = [(ax, bx), (az, bz), (ax ^ az, bx ^ bz)]
            for new_slot, functional in enumerate(functionals):
                out[_SLOT[functional] * n + q] = new_slot * n + perm[q]
        return out

    def permute(self, perm: Sequence[int], local: Sequence[LocalClifford]) -> 'ExtendedCheckMatrix':
        moved = self.data.permute_columns(self.column_permutation(perm, local))
        n = self.n
        return ExtendedCheckMatrix(BitMatrix(moved.data[:, :n], cols=n), BitMatrix(moved.data[:, n:2 * n], cols=n))

    def preserves(self, perm: Sequence[int], local: Sequence[LocalClifford]) -> bool:
        """True iff the column permutation maps the row span of H_E onto itself."""
        return row_span_equal(self.data, self.permute(perm, local).data)


# ==================== Automorphism gates ====================

class AutomorphismGate(NamedTuple):
    """
    Logical Clifford from a qubit permutation and local Cliffords.

    permutation: qubit q moves to permutation[q]
    local: single-qubit Clifford applied to each qubit before the move
    f: 2k×2k logical symplectic action
    pauli_fix: physical Pauli restoring every stabilizer sign to +
    signs: logical sign frame after the fix
    circuit: local gates, the permutation, then the Pauli fix
    """
    permutation: Tuple[int, ...]
    local: Tuple[LocalClifford, ...]
    f: BitMatrix
    pauli_fix: PauliOp
    signs: Tuple[int, ...]
    circuit: Circuit

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "automorphism",
            "physical": {
                "permutation": list(self.permutation),
                "cycles": QecUtils.format_permutation(self.permutation),
                "local": [c.name for c in self.local],
                "pauli_fix": str(self.pauli_fix),
                "circuit": self.circuit.to_list(),
            },
            "logical": {"f": self.f.to_strings(), "signs": list(self.signs)},
        }


@dataclass
class AutomorphismSearch:
    """Automorphism gates found; complete is False when the search stopped at its limit."""
    gates: List[AutomorphismGate] = field(default_factory=list)
    complete: bool = True

    @property
    def generators_only(self) -> bool:
        return not self.complete

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def _word_image(word: int, perm: Sequence[int], local: Sequence[LocalClifford], n: int) -> int:
    out = 0
    support = (word | word >> n) & ((1 << n) - 1)
    while support:
        low = support & -support
        q = low.bit_length() - 1
        support ^= low
        xb, zb = word >> q & 1, word >> (n + q) & 1
        (ax, az), (bx, bz) = _LOCAL_ACTION[local[q]]
        nx = xb & ax ^ zb & bx
        nz = xb & az ^ zb & bz
        out |= nx << perm[q] | nz << (n + perm[q])
    return out


def _group_product(generators: Sequence[PauliOp], indices: Sequence[int], n: int) -> PauliOp:
    out = PauliOp.identity(n)
    for i in indices:
        out = out * generators[i]
    return out


def _packed(p: PauliOp) -> int:
    return BitMatrix(p.to_symplectic()).row_ints()[0]


def pauli_fix(code: Union[CssCode, StabilizerCode], circuit: Circuit) -> PauliOp:
    """
    Physical Pauli P such that P·U maps every stabilizer generator to a + element.

    U must map the stabilizer group onto itself up to signs.

    Raises:
        ValueError: If U does not preserve the stabilizer group
    """
    stab = code if isinstance(code, StabilizerCode) else StabilizerCode.from_css(code)
    n = stab.n
    gens = stab.stabilizer_generators()
    rows = [_packed(g) for g in gens]
    flips, images = 0, []
    for i, g in enumerate(gens):
        image = conjugate_pauli(g, circuit)
        combo = solve_in_span(_packed(image), rows)
        if combo is None:
            raise ValueError("Circuit does not preserve the stabilizer group")
        if (image.phase - _group_product(gens, combo, n).phase) % 4 == 2:
            flips |= 1 << i
        images.append(image)
    if not flips:
        return PauliOp.identity(n)
    # ⟨p, s⟩ = p_x·s_z + p_z·s_x: column j of the system is coordinate j of p.
    columns = []
    for j in range(2 * n):
        source = j + n if j < n else j - n
        columns.append(sum((int(img.to_symplectic()[source]) << i) for i, img in enumerate(images)))
    chosen = solve_in_span(flips, columns)
    if chosen is None:
        raise ValueError("No Pauli restores the stabilizer signs")
    vector = np.zeros(2 * n, dtype=np.uint8)
    vector[chosen] = 1
    return PauliOp.hermitian(vector)


def _automorphism_circuit(perm: Sequence[int], local: Sequence[LocalClifford]) -> Circuit:
    circuit = Circuit()
    for q, clifford in enumerate(local):
        for name in clifford.gates:
            circuit.append(name, q)
    if list(perm) != list(range(len(perm))):
        circuit.perm(perm)
    return circuit


def automorphism_gates(code: Union[CssCode, StabilizerCode], limit: int = 10_000,
                       candidates: Optional[Sequence[Sequence[int]]] = None,
                       identity_permutation: bool = False, uniform: bool = False,
                       config: Optional[QecConfig] = None) -> AutomorphismSearch:
    """
    Enumerate Aut(⟨H_E⟩) ∩ Aut(⟨B⟩) as physical circuits with their logical action.

    Backtracking assigns each qubit an image and a local Clifford; every stabilizer
    word whose support is fully assigned must map into the stabilizer group. Each
    survivor gets a Pauli fix so all stabilizer signs are +, and its logical action is
    read off the tableau.

    Args:
        code: Code to search
        limit: Stop after this many gates (the result is then flagged incomplete)
        candidates: Only these qubit permutations are tried (local Cliffords still searched)
        identity_permutation: Fix every qubit in place
        uniform: Use the same local Clifford on every qubit
        config: Settings (automorphism_max_n bounds n for the open search)

    Returns:
        AutomorphismSearch with gates in lexicographic (permutation, local) order

    Raises:
        CutoffExceeded: If n is over budget and no candidates restrict the search

    Example:
        >>> search = automorphism_gates(CssCode(["1111"], ["1111"]))
        >>> len(search), search.complete
        (144, True)
    """
    config = config or default_config
    stab = code if isinstance(code, StabilizerCode) else StabilizerCode.from_css(code)
    n = stab.n
    if candidates is None and not identity_permutation:
        config.check_limit("automorphism gate search", n, "automorphism_max_n")

    rows = row_basis(stab.h).row_ints() if stab.h.rows else []
    words = _span_words(rows)
    mask = (1 << n) - 1
    counts = [[0] * (n + 1) for _ in range(n)]
    closing: List[List[int]] = [[] for _ in range(n)]
    for w in words:
        support = (w | w >> n) & mask
        if not support:
            continue
        closing[support.bit_length() - 1].append(w)
        weight = bin(support).count("1")
        for q in range(n):
            if support >> q & 1:
                counts[q][weight] += 1
    sig = [tuple(c) for c in counts]

    raw: List[Tuple[Tuple[int, ...], Tuple[LocalClifford, ...]]] = []
    cliffords = list(LocalClifford)

    def search(fixed: Optional[Sequence[int]]) -> bool:
        perm = [-1] * n
        local: List[LocalClifford] = [LocalClifford.I] * n
        used = [False] * n

        def extend(i: int) -> bool:
            if i == n:
                raw.append((tuple(perm), tuple(local)))
                return len(raw) >= limit
            if fixed is not None:
                images = [fixed[i]]
            elif identity_permutation:
                images = [i]
            else:
                images = [j for j in range(n) if not used[j] and sig[j] == sig[i]]
            choices = [local[0]] if uniform and i else cliffords
            for image in images:
                if used[image]:
                    continue
                perm[i] = image
                used[image] = True
                for clifford in choices:
                    local[i] = clifford
                    if all(_word_image(w, perm, local, n) in words for w in closing[i]):
                        if extend(i + 1):
                            return True
                used[image] = False
                perm[i] = -1
            return False

        return extend(0)

    truncated = False
    if candidates is not None:
        for cand in candidates:
            cand = [int(c) for c in cand]
            if sorted(cand) != list(range(n)):
                raise ValueError(f"Candidate is not a permutation of {n} qubits: {cand}")
            if search(cand):
                truncated = True
                break
    else:
        truncated = search(None)

    result = AutomorphismSearch(complete=not truncated)
    for perm, local in sorted(raw):
        circuit = _automorphism_circuit(perm, local)
        fix = pauli_fix(stab, circuit)
        for q in range(n):
            if fix.x[q]:
                circuit.x(q)
            if fix.z[q]:
                circuit.z(q)
        action = logical_action(stab, circuit)
        if not action.preserved:
            logger.error(f"Automorphism {perm} with {[c.name for c in local]} failed the tableau check")
            continue
        result.gates.append(AutomorphismGate(perm, local, action.f, fix.sign_free(), action.signs, circuit))
    if truncated:
        logger.warning(f"Automorphism gate search stopped at {limit} gates")
    logger.debug(f"Found {len(result)} automorphism gates on {n} qubits")
    return result


# ==================== Linear algebra mod 2^l ====================

def _valuation(value: int) -> int:
    return (value & -value).bit_length() - 1


def howell_form(matrix: Any, modulus: int) -> np.ndarray:
    """
    Howell normal form of a matrix over Z_modulus, modulus a power of two.

    Pivots are powers of two, entries above a pivot are reduced below it, and the
    row span of the rows with zeros in the first j columns equals the submodule of
    the span with that property.

    Example:
        >>> howell_form([[2, 2]], 4).tolist()
        [[2, 2]]
        >>> howell_form([[2, 1]], 4).tolist()
        [[2, 1], [0, 2]]
    """
    if modulus < 2 or modulus & (modulus - 1):
        raise ValueError(f"Modulus must be a power of two, got {modulus}")
    a = np.array(matrix, dtype=np.int64) % modulus
    if a.ndim != 2:
        raise ValueError("Howell form needs a 2-D matrix")
    cols = a.shape[1]
    top = 0
    for c in range(cols):
        best, best_v = None, None
        for i in range(top, a.shape[0]):
            value = int(a[i, c])
            if value:
                v = _valuation(value)
                if best is None or v < best_v:
                    best, best_v = i, v
        if best is None:
            continue
        a[[top, best]] = a[[best, top]]
        unit = int(a[top, c]) >> best_v
        a[top] = a[top] * pow(unit, -1, modulus) % modulus
        pivot = 1 << best_v
        for i in range(a.shape[0]):
            if i != top and a[i, c]:
                a[i] = (a[i] - (int(a[i, c]) // pivot) * a[top]) % modulus
        if best_v:
            extra = a[top] * (modulus >> best_v) % modulus
            if extra.any():
                a = np.vstack([a, extra])
        top += 1
    return a[:top]


def kernel_mod(matrix: Any, modulus: int, ncols: Optional[int] = None) -> np.ndarray:
    """
    Generators of {x : A x ≡ 0 mod modulus}, as rows in Howell form.

    Args:
        matrix: R×n matrix (R may be 0 when ncols is given)
        modulus: Power of two
        ncols: Column count for an empty matrix

    Example:
        >>> kernel_mod([[1, 1]], 4).tolist()
        [[1, 3]]
    """
    a = np.array(matrix, dtype=np.int64) % modulus
    if a.size == 0:
        n = ncols if ncols is not None else (a.shape[1] if a.ndim == 2 else 0)
        return np.eye(n, dtype=np.int64)
    r, n = a.shape
    augmented = np.hstack([a.T, np.eye(n, dtype=np.int64)])
    h = howell_form(augmented, modulus)
    keep = [row[r:] for row in h if not row[:r].any()]
    return np.array(keep, dtype=np.int64).reshape(len(keep), n)


def solve_mod(matrix: Any, rhs: Any, modulus: int, ncols: Optional[int] = None) -> Optional[np.ndarray]:
    """
    One solution of A x ≡ b mod modulus, or None.

    Solved as a kernel element (t, x) of [−b | A] with t = 1.

    Example:
        >>> solve_mod([[2]], [2], 4).tolist()
        [1]
        >>> solve_mod([[2]], [1], 4) is None
        True
    """
    a = np.array(matrix, dtype=np.int64) % modulus
    b = np.array(rhs, dtype=np.int64).ravel() % modulus
    n = ncols if ncols is not None else (a.shape[1] if a.ndim == 2 and a.size else 0)
    if a.size == 0:
        return np.zeros(n, dtype=np.int64) if not b.any() else None
    augmented = np.hstack([(-b % modulus).reshape(-1, 1), a])
    kernel = kernel_mod(augmented, modulus)
    if not len(kernel):
        return None
    h = howell_form(kernel, modulus)
    if len(h) and h[0, 0] == 1:
        return h[0, 1:] % modulus
    return None


# ==================== Phase polynomials ====================

def _expansion_coefficient(size: int, modulus: int) -> int:
    return (-2) ** (size - 1) % modulus


def parity_expansion(values: Sequence[int], modulus: int) -> int:
    """
    Σ_S (−2)^{|S|-1} ∏_{j∈S} a_j over non-empty subsets S, mod modulus.

    For binary a_j this equals a_1 ⊕ ... ⊕ a_t.

    Example:
        >>> parity_expansion([1, 1, 1], 8)
        1
    """
    total = 0
    for size in range(1, len(values) + 1):
        coeff = _expansion_coefficient(size, modulus)
        if not coeff:
            break
        for subset in combinations(values, size):
            total += coeff * int(np.prod(subset))
    return total % modulus


@dataclass
class RotationAssignment:
    """
    Per-qubit Z-rotation powers Γ: qubit i gets diag(1, e^{2πiΓ_i/N}), N = 2^level.

    Raises:
        ValueError: On a level outside 1..4 or entries outside [0, N)
    """
    gamma: Tuple[int, ...]
    level: int

    def __post_init__(self):
        if not 1 <= self.level <= MAX_LEVEL:
            raise ValueError(f"Level must be in 1..{MAX_LEVEL}, got {self.level}")
        self.gamma = tuple(int(g) for g in self.gamma)
        if any(not 0 <= g < self.modulus for g in self.gamma):
            raise ValueError(f"Rotation powers must lie in [0, {self.modulus})")

    @classmethod
    def from_vector(cls, vector: Sequence[int], level: int) -> 'RotationAssignment':
        return cls(tuple(int(v) % (1 << level) for v in vector), level)

    @property
    def modulus(self) -> int:
        return 1 << self.level

    @property
    def n(self) -> int:
        return len(self.gamma)

    def weight(self, word: int) -> int:
        """wt_Γ of a packed binary vector."""
        return sum(g for i, g in enumerate(self.gamma) if word >> i & 1) % self.modulus

    def to_circuit(self) -> Circuit:
        """
        Clifford circuit of the rotations (levels 1 and 2 only).

        Raises:
            ValueError: Above level 2
        """
        if self.level > 2:
            raise ValueError("Rotations above level 2 are not Clifford")
        circuit = Circuit()
        for q, g in enumerate(self.gamma):
            power = g << (2 - self.level)
            if power == 1:
                circuit.s(q)
            elif power == 2:
                circuit.z(q)
            elif power == 3:
                circuit.sdg(q)
        return circuit

    def to_dict(self) -> Dict[str, Any]:
        return {"gamma": list(self.gamma), "level": self.level}


@dataclass
class PhasePolynomial:
    """
    f(x) = Σ_S c_S ∏_{j∈S} x_j mod N over logical labels (0-based tuples).

    Example:
        >>> str(PhasePolynomial(8, {(0, 1, 2): 12, (1,): 8}))
        '4x1x2x3 (mod 8)'
    """
    modulus: int
    coefficients: Dict[Tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        reduced = {}
        for key, value in self.coefficients.items():
            value = int(value) % self.modulus
            if value:
                reduced[tuple(sorted(key))] = value
        self.coefficients = dict(sorted(reduced.items(), key=lambda kv: (len(kv[0]), kv[0])))

    @property
    def degree(self) -> int:
        return max((len(key) for key in self.coefficients), default=0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def evaluate(self, x: Sequence[int]) -> int:
        total = 0
        for key, value in self.coefficients.items():
            if all(x[j] for j in key):
                total += value
        return total % self.modulus

    def clifford_class(self) -> Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]:
        """(linear terms mod 2, quadratic terms) of a level-2 polynomial, i.e. its action up to Pauli."""
        linear = tuple(sorted(key[0] for key, v in self.coefficients.items() if len(key) == 1 and v % 2))
        quadratic = tuple(sorted(key for key in self.coefficients if len(key) == 2))
        return linear, quadratic

    def __str__(self) -> str:
        if not self.coefficients:
            return f"0 (mod {self.modulus})"
        terms = []
        for key, value in self.coefficients.items():
            label = "".join(f"x{j + 1}" for j in key)
            terms.append(f"{value if value != 1 else ''}{label}")
        return " + ".join(terms) + f" (mod {self.modulus})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "modulus": self.modulus,
            "terms": {"".join(f"x{j + 1}" for j in key): value for key, value in self.coefficients.items()},
        }


class DiagonalGate(NamedTuple):
    """Kernel generator Γ and its logical phase polynomial."""
    rotation: RotationAssignment
    polynomial: PhasePolynomial

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "diagonal", "physical": self.rotation.to_dict(), "logical": self.polynomial.to_dict()}


def _require_css(code: Any) -> CssCode:
    if not isinstance(code, CssCode):
        raise ValueError("Diagonal gate search needs a CSS code")
    return code


def _generator_stack(code: CssCode) -> Tuple[np.ndarray, int]:
    """Rows g^1..g^m: the X-logicals, then a basis of the X stabilizers."""
    n, k = code.n, code.k
    blocks = [code.lx.data] if k else []
    if code.hx.rows:
        blocks.append(row_basis(code.hx).data)
    g = np.vstack(blocks).astype(np.int64) if blocks else np.zeros((0, n), dtype=np.int64)
    return g, k


def phase_matrix(code: CssCode, level: int, config: Optional[QecConfig] = None) -> np.ndarray:
    """
    Matrix M over Z_{2^level} whose kernel is the set of codespace-preserving Γ.

    Rows are (−2)^{|S|-1}·∧_{j∈S} g^j for every index set S of size ≤ level that is
    not made only of logical rows; zero rows are skipped.

    Raises:
        CutoffExceeded: If the row count exceeds diagonal_max_terms
    """
    config = config or default_config
    modulus = 1 << level
    g, k = _generator_stack(code)
    m = g.shape[0]
    estimate = sum(comb(m, s) - comb(k, s) for s in range(1, level + 1))
    config.check_limit("phase polynomial rows", estimate, "diagonal_max_terms")
    rows = []
    for size in range(1, level + 1):
        coeff = _expansion_coefficient(size, modulus)
        for subset in combinations(range(m), size):
            if subset[-1] < k:
                continue
            wedge = np.bitwise_and.reduce(g[list(subset)], axis=0)
            if wedge.any():
                rows.append(coeff * wedge % modulus)
    if not rows:
        return np.zeros((0, code.n), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def _monomial_matrix(code: CssCode, level: int) -> Tuple[List[Tuple[int, ...]], np.ndarray]:
    """Monomials of the logical phase polynomial, highest degree first, and the matrix P with f = P Γ."""
    modulus = 1 << level
    g, k = _generator_stack(code)
    monomials, rows = [], []
    for size in range(min(level, k), 0, -1):
        coeff = _expansion_coefficient(size, modulus)
        for subset in combinations(range(k), size):
            monomials.append(subset)
            rows.append(coeff * np.bitwise_and.reduce(g[list(subset)], axis=0) % modulus)
    p = np.array(rows, dtype=np.int64) if rows else np.zeros((0, code.n), dtype=np.int64)
    return monomials, p


def is_diagonal_logical(code: CssCode, gamma: Sequence[int], level: int,
                        config: Optional[QecConfig] = None) -> bool:
    """True iff the rotations Γ preserve the codespace."""
    m = phase_matrix(_require_css(code), level, config)
    if not len(m):
        return True
    return not (m @ np.asarray(gamma, dtype=np.int64) % (1 << level)).any()


def logical_phase_poly(gamma: Union[RotationAssignment, Sequence[int]], code: CssCode, level: int,
                       check: bool = True, config: Optional[QecConfig] = None) -> PhasePolynomial:
    """
    Logical phase polynomial f of rotations Γ: |x̄⟩ ↦ e^{2πi f(x)/N} |x̄⟩.

    Coefficients are (−2)^{|S|-1} wt_Γ(∧_{j∈S} g^j) over sets S of X-logical rows.

    Args:
        gamma: Rotation powers (entries reduced mod N)
        code: CSS code with logicals
        level: Clifford hierarchy level, N = 2^level
        check: Reject Γ outside the kernel

    Raises:
        ValueError: If check is on and Γ does not preserve the codespace

    Example:
        >>> str(logical_phase_poly([1, 3, 3, 1], CssCode(["1111"], ["1111"]), 2))
        '2x1 + 2x1x2 (mod 4)'
    """
    code = _require_css(code)
    rotation = gamma if isinstance(gamma, RotationAssignment) else RotationAssignment.from_vector(gamma, level)
    if rotation.n != code.n:
        raise ValueError(f"Need {code.n} rotation powers, got {rotation.n}")
    if check and not is_diagonal_logical(code, rotation.gamma, level, config):
        raise ValueError("Rotation assignment does not preserve the codespace")
    modulus = 1 << level
    monomials, p = _monomial_matrix(code, level)
    values = p @ np.array(rotation.gamma, dtype=np.int64) if monomials else []
    return PhasePolynomial(modulus, {key: int(v) for key, v in zip(monomials, values)})


def diagonal_gates(code: CssCode, level: int = 3, config: Optional[QecConfig] = None) -> List[DiagonalGate]:
    """
    Generators of all transversal Z-rotation logical gates at a hierarchy level.

    Args:
        code: CSS code
        level: 1..4 (Z, S, T, √T powers)
        config: Settings (diagonal_max_terms bounds the matrix)

    Returns:
        One DiagonalGate per generator, reduced jointly with the logical coefficients
        (highest degree first) so a monomial reachable on its own gets its own generator

    Raises:
        ValueError: On a non-CSS code or a level outside 1..4
        CutoffExceeded: If M would be too large
    """
    code = _require_css(code)
    if not 1 <= level <= MAX_LEVEL:
        raise ValueError(f"Level must be in 1..{MAX_LEVEL}, got {level}")
    modulus = 1 << level
    m = phase_matrix(code, level, config)
    kernel = kernel_mod(m, modulus, ncols=code.n)
    monomials, p = _monomial_matrix(code, level)
    rows = [row for row in kernel if row.any()]
    if rows and monomials:
        kernel = np.array(rows, dtype=np.int64)
        action = p @ kernel.T % modulus
        reduced = howell_form(np.hstack([kernel @ p.T % modulus, kernel]), modulus)
        rows = []
        for row in reduced:
            head = row[:len(monomials)]
            if head.any():
                pivot = int(np.flatnonzero(head)[0])
                target = np.zeros(len(monomials), dtype=np.int64)
                target[pivot] = head[pivot]
                combination = solve_mod(action, target, modulus)
                if combination is not None:
                    rows.append(combination @ kernel % modulus)
                    continue
            rows.append(row[len(monomials):])
    gates = []
    for row in rows:
        if not row.any():
            continue
        rotation = RotationAssignment.from_vector(row, level)
        gates.append(DiagonalGate(rotation, logical_phase_poly(rotation, code, level, check=False)))
    logger.debug(f"{code.parameters()} level {level}: {len(gates)} diagonal generators from {len(m)} rows")
    return gates


def phase_invariance_check(code: CssCode, gamma: Sequence[int], level: int, samples: int = 64,
                           seed: Optional[int] = None) -> bool:
    """
    Sample logical x and two stabilizer shifts y, y'; wt_Γ must agree on both coset words.
    """
    code = _require_css(code)
    rng = np.random.default_rng(seed)
    rotation = RotationAssignment.from_vector(gamma, level)
    lx = code.lx.row_ints() if code.k else []
    hx = row_basis(code.hx).row_ints() if code.hx.rows else []

    def combine(rows: List[int], bits: np.ndarray) -> int:
        word = 0
        for row, bit in zip(rows, bits):
            if bit:
                word ^= row
        return word

    for _ in range(samples):
        base = combine(lx, rng.integers(0, 2, len(lx)))
        w1 = base ^ combine(hx, rng.integers(0, 2, len(hx)))
        w2 = base ^ combine(hx, rng.integers(0, 2, len(hx)))
        if rotation.weight(w1) != rotation.weight(w2):
            return False
    return True


def statevector_diagonal_check(code: CssCode, gamma: Sequence[int], poly: PhasePolynomial, level: int,
                               config: Optional[QecConfig] = None) -> bool:
    """
    Apply Γ to every encoded basis state |x̄⟩ as a dense statevector and compare with
    e^{2πi f(x)/N} |x̄⟩.

    Raises:
        CutoffExceeded: If n exceeds statevector_max_n
    """
    code = _require_css(code)
    config = config or default_config
    n = code.n
    config.check_limit("statevector check", n, "statevector_max_n")
    modulus = 1 << level
    rotation = RotationAssignment.from_vector(gamma, level)
    index = np.arange(1 << n, dtype=np.int64)
    bits = (index[:, None] >> np.arange(n)) & 1
    diagonal = np.exp(2j * np.pi * (bits @ np.array(rotation.gamma, dtype=np.int64) % modulus) / modulus)
    stabilizers = sorted(_span_words(row_basis(code.hx).row_ints() if code.hx.rows else []))
    lx = code.lx.row_ints() if code.k else []
    for x in product((0, 1), repeat=code.k):
        offset = 0
        for row, bit in zip(lx, x):
            if bit:
                offset ^= row
        state = np.zeros(1 << n, dtype=complex)
        state[[offset ^ s for s in stabilizers]] = 1 / np.sqrt(len(stabilizers))
        expected = np.exp(2j * np.pi * poly.evaluate(x) / modulus) * state
        if not np.allclose(diagonal * state, expected):
            return False
    return True


# ==================== Embedded code and folds ====================

def embedded_code(code: CssCode, pairs: Optional[Sequence[Tuple[int, int]]] = None) -> CssCode:
    """
    Embed a CSS code with one ancilla per qubit pair, holding q_i ⊕ q_j.

    X stabilizers and X-logicals are extended by their pair parities; Z stabilizers
    gain Z_x Z_i Z_j per ancilla; Z-logicals are unchanged. S on ancilla (i, j) then
    acts on the data as S_i S_j CZ_ij.

    Args:
        code: CSS code on n qubits
        pairs: Pairs to embed (default all C(n, 2))

    Returns:
        [[n + #pairs, k]] CSS code

    Example:
        >>> embedded_code(CssCode(["1111"], ["1111"])).parameters()
        '[[10,2]]'
    """
    code = _require_css(code)
    n = code.n
    if pairs is None:
        pairs = list(combinations(range(n), 2))
    pairs = [tuple(sorted((int(a), int(b)))) for a, b in pairs]
    if len(set(pairs)) != len(pairs) or any(a == b or not 0 <= a < n or not 0 <= b < n for a, b in pairs):
        raise ValueError(f"Invalid qubit pairs for n={n}: {pairs}")
    count = len(pairs)
    incidence = np.zeros((n, count), dtype=np.uint8)
    for p, (a, b) in enumerate(pairs):
        incidence[a, p] = incidence[b, p] = 1

    def extend(m: BitMatrix) -> BitMatrix:
        if not m.rows:
            return BitMatrix.zeros(0, n + count)
        data = m.data.astype(np.int64)
        return BitMatrix(np.hstack([data, data @ incidence % 2]).astype(np.uint8))

    ancilla_checks = BitMatrix(np.hstack([incidence.T, np.eye(count, dtype=np.uint8)])) if count \
        else BitMatrix.zeros(0, n)
    hz = BitMatrix.hstack(code.hz, BitMatrix.zeros(code.hz.rows, count)) if code.hz.rows \
        else BitMatrix.zeros(0, n + count)
    hz = BitMatrix.vstack(hz, ancilla_checks) if count else hz
    lx, lz = None, None
    if code.k:
        lx = extend(code.lx)
        lz = BitMatrix.hstack(code.lz, BitMatrix.zeros(code.k, count))
    return CssCode(extend(code.hx), hz, lx, lz, name=f"emb({code.name or code.parameters()})",
                   metadata={"family": "embedded", "base_n": n, "pairs": [list(p) for p in pairs]})


def _matchings(points: Sequence[int]) -> Iterator[List[Tuple[int, int]]]:
    """All partial matchings, the unmatched-first branch first."""
    if not points:
        yield []
        return
    first, rest = points[0], list(points[1:])
    yield from _matchings(rest)
    for idx, other in enumerate(rest):
        for tail in _matchings(rest[:idx] + rest[idx + 1:]):
            yield [(first, other)] + tail


def _fold_sources(code: CssCode, candidates: Optional[Sequence[Any]],
                  config: QecConfig) -> Iterator[Tuple[List[Tuple[int, int]], Optional[Dict[int, int]]]]:
    if candidates is not None:
        for cand in candidates:
            if isinstance(cand, FoldCircuit):
                yield list(cand.cz_pairs), dict(zip(cand.s_qubits, cand.s_powers))
            else:
                yield [tuple(p) for p in cand], None
        return
    if code.n <= config.fold_max_n:
        yield from ((pairs, None) for pairs in _matchings(list(range(code.n))))
        return
    family = code.metadata.get("family")
    builder = {"phantom_qrm": fold_involution, "hypercube": fold_involution,
               "punctured_hypercube": punctured_fold}.get(family)
    if builder is None:
        config.check_limit("fold gate search", code.n, "fold_max_n")
    for kind in FoldKind:
        try:
            fold = builder(code, kind)
        except ValueError as e:
            logger.debug(f"No {kind} fold candidate: {e}")
            continue
        yield list(fold.cz_pairs), dict(zip(fold.s_qubits, fold.s_powers))


def _matching_solutions(code: CssCode, pairs: List[Tuple[int, int]], preferred: Optional[Dict[int, int]],
                        config: QecConfig) -> Iterator[Tuple[Dict[int, int], PhasePolynomial]]:
    """S powers on unpaired qubits making CZ-on-pairs a logical gate, with the logical polynomial."""
    modulus = 4
    n = code.n
    emb = embedded_code(code, pairs)
    m = phase_matrix(emb, 2, config)
    paired = {q for pair in pairs for q in pair}
    free = [q for q in range(n) if q not in paired]
    fixed = np.zeros(n + len(pairs), dtype=np.int64)
    fixed[sorted(paired)] = 3
    fixed[n:] = 1
    rhs = -(m @ fixed) % modulus if len(m) else np.zeros(0, dtype=np.int64)
    a = m[:, free] if len(m) else np.zeros((0, len(free)), dtype=np.int64)

    def emit(p: np.ndarray) -> Tuple[Dict[int, int], PhasePolynomial]:
        gamma = fixed.copy()
        gamma[free] = p
        poly = logical_phase_poly(gamma, emb, 2, check=False)
        return {q: int(v) for q, v in zip(free, p) if v % modulus}, poly

    if preferred is not None:
        p = np.array([preferred.get(q, 0) for q in free], dtype=np.int64)
        if not len(a) or not ((a @ p - rhs) % modulus).any():
            yield emit(p)
    base = solve_mod(a, rhs, modulus, ncols=len(free))
    if base is None:
        return
    kernel = kernel_mod(a, modulus, ncols=len(free))
    if modulus ** len(kernel) <= 256:
        combos = product(range(modulus), repeat=len(kernel))
    else:
        combos = [tuple(int(i == j) for i in range(len(kernel))) for j in range(-1, len(kernel))]
    for coeffs in combos:
        p = base.copy()
        if len(kernel):
            p = (p + np.array(coeffs, dtype=np.int64) @ kernel) % modulus
        yield emit(p)


def fold_gates(code: CssCode, level: int = 2, candidates: Optional[Sequence[Any]] = None,
               config: Optional[QecConfig] = None) -> List[FoldCircuit]:
    """
    Depth-one S/CZ logical gates found through the embedded code.

    For each candidate matching, CZ on its pairs corresponds to S on the pair ancillas
    with S† on the paired data qubits; the remaining S powers solve a linear system over
    Z_4 on the embedded code. One fold is kept per logical action up to Paulis, and
    each is verified on the tableau.

    Args:
        code: CSS code
        level: Must be 2 (S and CZ)
        candidates: FoldCircuits or pair lists to try; by default every matching when
            n ≤ fold_max_n, else the algebraic qRM folds
        config: Settings

    Returns:
        Verified folds with a non-Pauli logical action, logical set; may be empty

    Raises:
        ValueError: If level is not 2 or the code is not CSS
        CutoffExceeded: If n is too large and no candidates are known
    """
    code = _require_css(code)
    if level != 2:
        raise ValueError("Fold circuits are built from S and CZ, level 2 only")
    config = config or default_config
    k = code.k
    if not k:
        return []
    max_classes = 2 ** (k + k * (k - 1) // 2) - 1
    seen: Dict[Any, FoldCircuit] = {}
    for pairs, preferred in _fold_sources(code, candidates, config):
        for powers, poly in _matching_solutions(code, pairs, preferred, config):
            key = poly.clifford_class()
            if key == ((), ()) or key in seen:
                continue
            fold = FoldCircuit.from_pairs(code.n, pairs, powers)
            action = logical_action(code, fold.to_circuit())
            if not action.preserved:
                logger.error(f"Fold with pairs {pairs} failed the tableau check")
                continue
            fold.logical = action.f
            seen[key] = fold
        if len(seen) >= max_classes:
            break
    logger.debug(f"{code.parameters()}: {len(seen)} fold gates")
    return list(seen.values())


def gate_report(gate: Union[AutomorphismGate, DiagonalGate, FoldCircuit]) -> Dict[str, Any]:
    """JSON report {"kind", "physical", "logical"} for any gate type."""
    if isinstance(gate, FoldCircuit):
        physical = gate.to_dict()
        logical = physical.pop("logical")
        return {"kind": "fold", "physical": physical, "logical": {"f": logical}}
    return gate.to_dict()
