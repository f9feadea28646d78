"""
Phantom QEC Toolkit - SAT Module

CNF construction kit over F2 (Tseitin XOR chains, AND/OR gates, matrix products,
permutation and GL matrices), the phantomness and code-discovery instances built from
it, DIMACS I/O, and the minimal-n sweep.

Bits are either signed integer literals or Python bool constants; every gadget folds
constants before emitting clauses.
"""

from mylogger import logger
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union
import numpy as np
import pandas as pd

from .codes import CssCode, StabilizerCode, distance_css, distance_stabilizer
from .config import CutoffExceeded, QecConfig, default_config
from .enums import SolveStatus
from .f2linalg import BitMatrix
from .solver import CdclSolver, SolveResult, SolverHandle, dimacs_text


logger.info("Loading sat module")


Bit = Union[int, bool]
BitGrid = List[List[Bit]]


def _is_const(bit: Bit) -> bool:
    return isinstance(bit, (bool, np.bool_))


def negate(bit: Bit) -> Bit:
    return (not bit) if _is_const(bit) else -bit


# =============================================================================
# FORMULA
# =============================================================================

class CnfFormula:
    """
    Clause database with fresh-variable allocation and named variable groups.

    Example:
        >>> f = CnfFormula()
        >>> x = f.new_var()
        >>> f.add_clause([x])
        >>> f.num_vars, len(f.clauses)
        (1, 1)
    """

    def __init__(self):
        self.num_vars: int = 0
        self.clauses: List[List[int]] = []
        self.groups: Dict[str, np.ndarray] = {}

    def new_var(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def new_vector(self, size: int, name: Optional[str] = None) -> List[int]:
        vars_ = [self.new_var() for _ in range(size)]
        if name:
            self.groups[name] = np.array(vars_, dtype=np.int64)
        return vars_

    def new_matrix(self, rows: int, cols: int, name: Optional[str] = None) -> List[List[int]]:
        """rows×cols fresh variables, registered under name when given."""
        grid = [[self.new_var() for _ in range(cols)] for _ in range(rows)]
        if name:
            self.groups[name] = np.array(grid, dtype=np.int64).reshape(rows, cols)
        return grid

    def add_clause(self, clause: Sequence[Bit]) -> None:
        """
        Add a clause; constant-true members satisfy it, constant-false members drop out.

        Raises:
            ValueError: On a zero literal or one beyond the variable counter
        """
        lits: List[int] = []
        for lit in clause:
            if _is_const(lit):
                if lit:
                    return
                continue
            lit = int(lit)
            if lit == 0 or abs(lit) > self.num_vars:
                raise ValueError(f"Literal {lit} outside 1..{self.num_vars}")
            lits.append(lit)
        self.clauses.append(lits)

    def extend(self, clauses: Sequence[Sequence[int]]) -> None:
        for clause in clauses:
            self.add_clause(clause)

    def __repr__(self) -> str:
        return f"CnfFormula(vars={self.num_vars}, clauses={len(self.clauses)})"


# =============================================================================
# GADGETS
# =============================================================================

def _xor_small(f: CnfFormula, lits: Sequence[int], parity: int) -> None:
    """Direct encoding: forbid every assignment of the wrong parity."""
    m = len(lits)
    for values in product((0, 1), repeat=m):
        if sum(values) % 2 != parity:
            f.add_clause([-lit if v else lit for lit, v in zip(lits, values)])


def _split_constants(bits: Sequence[Bit]) -> Tuple[List[int], int]:
    lits: List[int] = []
    flip = 0
    for bit in bits:
        if _is_const(bit):
            flip ^= int(bool(bit))
        else:
            lits.append(int(bit))
    return lits, flip


def xor_clause(f: CnfFormula, literals: Sequence[Bit], parity: int) -> None:
    """
    Constrain the XOR of literals to equal parity.

    Long chains are cut with auxiliary variables so every emitted clause has at most
    three literals.

    Example:
        >>> f = CnfFormula(); x, y = f.new_var(), f.new_var()
        >>> xor_clause(f, [x, y], 0); f.clauses
        [[1, -2], [-1, 2]]
    """
    lits, flip = _split_constants(literals)
    parity = (parity ^ flip) & 1
    if not lits:
        if parity:
            f.add_clause([])
        return
    while len(lits) > 3:
        t = f.new_var()
        _xor_small(f, [lits[0], lits[1], t], 0)
        lits = [t] + lits[2:]
    _xor_small(f, lits, parity)


def xor_gate(f: CnfFormula, bits: Sequence[Bit]) -> Bit:
    """Bit equal to the XOR of bits (constant when all inputs are)."""
    lits, flip = _split_constants(bits)
    if not lits:
        return bool(flip)
    acc = lits[0]
    for lit in lits[1:]:
        t = f.new_var()
        _xor_small(f, [acc, lit, t], 0)
        acc = t
    return -acc if flip else acc


def and_gate(f: CnfFormula, a: Bit, b: Bit) -> Bit:
    """Bit equal to a AND b."""
    if _is_const(a):
        return b if a else False
    if _is_const(b):
        return a if b else False
    if a == b:
        return a
    if a == -b:
        return False
    t = f.new_var()
    f.add_clause([-t, a])
    f.add_clause([-t, b])
    f.add_clause([t, -a, -b])
    return t


def or_gate(f: CnfFormula, bits: Sequence[Bit]) -> Bit:
    """Bit equal to the OR of bits."""
    lits: List[int] = []
    for bit in bits:
        if _is_const(bit):
            if bit:
                return True
            continue
        lits.append(int(bit))
    if not lits:
        return False
    if len(lits) == 1:
        return lits[0]
    t = f.new_var()
    f.add_clause([-t] + lits)
    for lit in lits:
        f.add_clause([t, -lit])
    return t


def constant_grid(m: Union[BitMatrix, Sequence[Sequence[int]]]) -> BitGrid:
    rows = m.to_list() if isinstance(m, BitMatrix) else m
    return [[bool(v) for v in row] for row in rows]


def transpose(grid: BitGrid, cols: Optional[int] = None) -> BitGrid:
    if not grid:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*grid)]


def _shape(grid: BitGrid, cols: Optional[int] = None) -> Tuple[int, int]:
    return len(grid), (len(grid[0]) if grid else (cols or 0))


def _product_terms(f: CnfFormula, a: BitGrid, b: BitGrid, i: int, j: int) -> List[Bit]:
    return [and_gate(f, a[i][t], b[t][j]) for t in range(len(b))]


def matrix_product(f: CnfFormula, a: BitGrid, b: BitGrid) -> BitGrid:
    """Grid of bits equal to A·B over F2."""
    if a and len(a[0]) != len(b):
        raise ValueError(f"Shape mismatch: {len(a)}×{len(a[0])} times {len(b)} rows")
    cols = len(b[0]) if b else 0
    return [[xor_gate(f, _product_terms(f, a, b, i, j)) for j in range(cols)] for i in range(len(a))]


def matrix_sum_product_constraint(f: CnfFormula, pairs: Sequence[Tuple[BitGrid, BitGrid]],
                                  c: Union[BitGrid, BitMatrix, None]) -> None:
    """
    Assert Σ A_i·B_i = C over F2 (C = None means zero).

    Raises:
        ValueError: On shape mismatches
    """
    m = len(pairs[0][0])
    p = len(pairs[0][1][0]) if pairs[0][1] else 0
    for a, b in pairs:
        if len(a) != m or (a and len(a[0]) != len(b)) or (b and len(b[0]) != p):
            raise ValueError("Shape mismatch in matrix product constraint")
    if isinstance(c, BitMatrix):
        c = constant_grid(c)
    if c is not None and (len(c) != m or (m and len(c[0]) != p)):
        raise ValueError(f"Right-hand side is not {m}×{p}")
    for i in range(m):
        for j in range(p):
            terms: List[Bit] = []
            for a, b in pairs:
                terms.extend(_product_terms(f, a, b, i, j))
            rhs = c[i][j] if c is not None else False
            xor_clause(f, terms + [rhs], 0)


def matrix_product_constraint(f: CnfFormula, a: BitGrid, b: BitGrid, c: Union[BitGrid, BitMatrix, None]) -> None:
    """
    Assert A·B = C over F2: AND gates per term and an XOR per entry.

    Raises:
        ValueError: On shape mismatch
    """
    matrix_sum_product_constraint(f, [(a, b)], c)


def exactly_one(f: CnfFormula, lits: Sequence[int]) -> None:
    """At-least-one clause plus pairwise exclusions."""
    f.add_clause(list(lits))
    for a, b in combinations(lits, 2):
        f.add_clause([-a, -b])


def permutation_var(f: CnfFormula, n: int, involution: bool = False, name: Optional[str] = None) -> List[List[int]]:
    """
    n×n permutation-matrix variables.

    Args:
        f: Formula
        n: Size
        involution: Share P[i][j] and P[j][i] so that P = Pᵀ (period-two permutations)
        name: Group name

    Example:
        >>> f = CnfFormula(); p = permutation_var(f, 1); f.clauses
        [[1], [1]]
    """
    if involution:
        grid = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                grid[i][j] = grid[j][i] = f.new_var()
        if name:
            f.groups[name] = np.array(grid, dtype=np.int64).reshape(n, n)
    else:
        grid = f.new_matrix(n, n, name)
    for i in range(n):
        exactly_one(f, grid[i])
        exactly_one(f, [grid[j][i] for j in range(n)])
    return grid


def gl_pair(f: CnfFormula, k: int, name: Optional[str] = None) -> Tuple[List[List[int]], List[List[int]]]:
    """Invertible k×k variables A with a witness inverse A′ (A·A′ = I)."""
    a = f.new_matrix(k, k, name)
    a_inv = f.new_matrix(k, k, f"{name}_inv" if name else None)
    matrix_product_constraint(f, a, a_inv, BitMatrix.identity(k))
    return a, a_inv


def symplectic_var(f: CnfFormula, k: int, name: Optional[str] = None) -> List[List[int]]:
    """2k×2k variables R with R·J·Rᵀ = J."""
    r = f.new_matrix(2 * k, 2 * k, name)
    rj = [row[k:] + row[:k] for row in r]
    matrix_product_constraint(f, rj, transpose(r), BitMatrix.block(
        [[BitMatrix.zeros(k, k), BitMatrix.identity(k)], [BitMatrix.identity(k), BitMatrix.zeros(k, k)]]))
    return r


# =============================================================================
# DIMACS AND SOLVING
# =============================================================================

def to_dimacs(f: CnfFormula) -> str:
    """DIMACS CNF text: 'p cnf V C' header and zero-terminated clauses."""
    return dimacs_text(f.num_vars, f.clauses)


def write_dimacs(f: CnfFormula, path: str) -> None:
    with open(path, "w") as handle:
        handle.write(to_dimacs(f))
    logger.debug(f"Wrote {len(f.clauses)} clauses to {path}")


def parse_dimacs(text: str) -> CnfFormula:
    """
    Parse DIMACS CNF text.

    Raises:
        ValueError: If the header is missing or a literal exceeds the declared count
    """
    f = CnfFormula()
    declared: Optional[int] = None
    current: List[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"Bad DIMACS header: {line!r}")
            declared = int(parts[2])
            f.num_vars = declared
            continue
        if declared is None:
            raise ValueError("DIMACS clause before the 'p cnf' header")
        for token in line.split():
            lit = int(token)
            if lit == 0:
                f.add_clause(current)
                current = []
            else:
                current.append(lit)
    if current:
        f.add_clause(current)
    if declared is None:
        raise ValueError("Missing DIMACS header")
    return f


def solve(f: CnfFormula, handle: Optional[SolverHandle] = None) -> SolveResult:
    """
    Solve a formula.

    Args:
        f: Formula
        handle: Backend (internal engine when None)

    Returns:
        SolveResult; a timeout is reported as status TIMEOUT

    Example:
        >>> f = CnfFormula(); x = f.new_var(); f.add_clause([x]); f.add_clause([-x])
        >>> solve(f).status
        SolveStatus.UNSAT
    """
    handle = handle or SolverHandle.from_config()
    return handle.solve(f.num_vars, f.clauses)


def bit_value(result: SolveResult, bit: Bit) -> bool:
    """Value of a bit under a model."""
    if _is_const(bit):
        return bool(bit)
    value = result.value(abs(int(bit)))
    return value if bit > 0 else not value


def grid_value(result: SolveResult, grid: BitGrid, cols: Optional[int] = None) -> BitMatrix:
    rows, width = _shape(grid, cols)
    if not rows:
        return BitMatrix.zeros(0, width)
    return BitMatrix([[int(bit_value(result, b)) for b in row] for row in grid])


def count_models(f: CnfFormula, variables: Optional[Sequence[int]] = None, limit: int = 1 << 16) -> int:
    """
    Number of distinct assignments to variables (all when None) extendable to a model.

    Uses blocking clauses with the built-in engine; intended for small formulas.
    """
    variables = list(variables) if variables is not None else list(range(1, f.num_vars + 1))
    clauses = [list(c) for c in f.clauses]
    count = 0
    while count < limit:
        engine = CdclSolver(f.num_vars, clauses)
        if not engine.solve():
            break
        count += 1
        model = engine.model()
        if not variables:
            break
        clauses.append([-model[v - 1] for v in variables])
    return count


# =============================================================================
# PHANTOMNESS INSTANCE
# =============================================================================

def _bilinear_xor(f: CnfFormula, p: List[List[int]], u: Sequence[int], v: Sequence[int], parity: int) -> None:
    """XOR over j∈supp(u), l∈supp(v) of P[j][l] equals parity (u·P·vᵀ)."""
    lits = [p[j][l] for j in np.flatnonzero(u) for l in np.flatnonzero(v)]
    xor_clause(f, lits, parity)


def _css_preserving_conditions(f: CnfFormula, code: CssCode, p: List[List[int]]) -> None:
    """P maps both stabilizer spaces onto themselves."""
    hx, hz = code.hx.data, code.hz.data
    lx, lz = code.lx.data, code.lz.data
    for left, right in ((hx, hz), (hz, hx), (hx, lz), (hz, lx), (lx, hz), (lz, hx)):
        for a in range(left.shape[0]):
            for b in range(right.shape[0]):
                _bilinear_xor(f, p, left[a], right[b], 0)


def _css_perm_conditions(f: CnfFormula, code: CssCode, p: List[List[int]], fxx: np.ndarray, fzz: np.ndarray) -> None:
    _css_preserving_conditions(f, code, p)
    lx, lz = code.lx.data, code.lz.data
    for left, right, target in ((lx, lz, fxx), (lz, lx, fzz)):
        for a in range(left.shape[0]):
            for b in range(right.shape[0]):
                _bilinear_xor(f, p, left[a], right[b], int(target[a, b]))


def _decode_perm(result: SolveResult, p: List[List[int]]) -> List[int]:
    n = len(p)
    return [next(j for j in range(n) if bit_value(result, p[i][j])) for i in range(n)]


def phantom_instance(code: CssCode, involutions_only: bool = False) -> Tuple[CnfFormula, Callable[[SolveResult], Any]]:
    """
    CNF asserting that permutations implement the minimal CNOT gate set of a CSS code.

    One permutation matrix per target (CNOT from qubit 0 to 1, then each adjacent SWAP);
    every CSS condition is linear in the permutation entries once the code is fixed.

    Args:
        code: CSS code with k >= 2
        involutions_only: Restrict to period-two permutations

    Returns:
        (formula, decoder mapping a SAT result to a PhantomWitness)

    Raises:
        ValueError: If k < 2
    """
    from .phantom import PhantomWitness, compose_cnot_witness, minimal_gateset

    gates = minimal_gateset(code.k)
    k, n = code.k, code.n
    f = CnfFormula()
    perms = []
    for index, gate in enumerate(gates):
        p = permutation_var(f, n, involution=involutions_only, name=f"P{index}_{gate.name}")
        data = gate.f.data
        _css_perm_conditions(f, code, p, data[:k, :k], data[k:, k:])
        perms.append(p)

    def decode(result: SolveResult) -> PhantomWitness:
        found = [_decode_perm(result, p) for p in perms]
        composed = compose_cnot_witness(k, found[0], found[1:])
        return PhantomWitness(composed, code.lx, code.lz)

    logger.debug(f"Phantom instance for {code.parameters()}: {f}")
    return f, decode


def weak_phantom_instance(code: CssCode, p: int,
                          involutions_only: bool = False) -> Tuple[CnfFormula, Callable[[SolveResult], Any]]:
    """
    CNF asserting that, in some rotated logical basis, permutations implement every CNOT
    among the first p logical qubits and act trivially on the rest.

    The rotation is a free pair A, A′ ∈ GL(k) with A·A′ = I; the rotated basis is
    (A·Lx, A′ᵀ·Lz). For each gate G of the p-qubit minimal set the permutation's logical
    X action M = Lx·P·Lzᵀ must satisfy A·M = G·A. For p = 1 the set is CNOT_01 alone,
    which asks for any permutation acting as a transvection.

    Args:
        code: CSS code with k >= 2
        p: Level, 1 <= p <= k
        involutions_only: Restrict to period-two permutations

    Returns:
        (formula, decoder mapping a SAT result to a PhantomWitness over the rotated basis)

    Raises:
        ValueError: If k < 2 or p is out of range
    """
    from .phantom import PhantomWitness, compose_cnot_witness
    from .tableau import gate_symplectic

    k, n = code.k, code.n
    if k < 2:
        raise ValueError(f"Logical CNOT gate sets need k >= 2, got k={k}")
    if not 1 <= p <= k:
        raise ValueError(f"Weak-phantom level must lie in 1..{k}, got {p}")
    targets = [gate_symplectic(k, "CNOT", 0, 1)]
    targets += [gate_symplectic(k, "SWAP", i, i + 1) for i in range(p - 1)]
    lx, lz = code.lx.data, code.lz.data
    f = CnfFormula()
    a, a_inv = gl_pair(f, k, "R")
    perms = []
    for index, target in enumerate(targets):
        perm = permutation_var(f, n, involution=involutions_only, name=f"P{index}")
        _css_preserving_conditions(f, code, perm)
        action = [[xor_gate(f, [perm[j][l] for j in np.flatnonzero(lx[r]) for l in np.flatnonzero(lz[c])])
                   for c in range(k)] for r in range(k)]
        matrix_sum_product_constraint(f, [(a, action), (constant_grid(target.data[:k, :k]), a)], None)
        perms.append(perm)

    def decode(result: SolveResult) -> PhantomWitness:
        rotation = grid_value(result, a)
        rotation_inv = grid_value(result, a_inv)
        found = [_decode_perm(result, perm) for perm in perms]
        pairs = {(0, 1): found[0]} if p == 1 else compose_cnot_witness(p, found[0], found[1:])
        return PhantomWitness(pairs, rotation @ code.lx, rotation_inv.T @ code.lz)

    logger.debug(f"Weak-phantom instance p={p} for {code.parameters()}: {f}")
    return f, decode


# =============================================================================
# DISCOVERY INSTANCE
# =============================================================================

@dataclass
class DiscoverySpec:
    """
    Target parameters for code discovery.

    Attributes:
        n, k: Block length and logical qubits
        r: Rank of the X block of the standard form (r_x for CSS codes)
        dx, dz: CSS distances; general codes use dx as the single distance d
        css: Search CSS codes (B = C = 0)
        phantom: Also require permutation CNOTs for every logical pair
        exact_distance: Require the distances exactly; False makes them lower bounds

    Raises:
        ValueError: If k < 1, r is outside 0..n-k, a distance is below 1, or phantom with k < 2
    """
    n: int
    r: int
    k: int
    dx: int
    dz: int
    css: bool = True
    phantom: bool = False
    exact_distance: bool = True

    def __post_init__(self):
        if self.k < 1 or self.n < self.k:
            raise ValueError(f"Invalid (n, k) = ({self.n}, {self.k})")
        if not 0 <= self.r <= self.n - self.k:
            raise ValueError(f"r={self.r} outside 0..{self.n - self.k}")
        if self.dx < 1 or self.dz < 1:
            raise ValueError("Distances must be at least 1")
        if self.phantom and self.k < 2:
            raise ValueError("Phantom discovery needs k >= 2")

    @property
    def t(self) -> int:
        return self.n - self.k - self.r

    @property
    def d(self) -> int:
        return self.dx


def estimate_distance_clauses(spec: DiscoverySpec) -> int:
    """Rough clause count of the distance constraints."""
    rows = spec.n - spec.k
    total = 0
    sectors = ((spec.dx, 1), (spec.dz, 1)) if spec.css else ((spec.d, 3),)
    for d, mult in sectors:
        for w in range(1, d + 1):
            total += comb(spec.n, w) * mult ** w * (rows + spec.k) * (4 * w + 2)
    return total


def _standard_form_grids(f: CnfFormula, spec: DiscoverySpec) -> Dict[str, BitGrid]:
    r, t, k = spec.r, spec.t, spec.k
    grids = {
        "A1": f.new_matrix(r, t, "A1"),
        "A2": f.new_matrix(r, k, "A2"),
        "D": f.new_matrix(t, r, "D"),
        "E": f.new_matrix(t, k, "E"),
    }
    if spec.css:
        grids["B"] = [[False] * r for _ in range(r)]
        grids["C"] = [[False] * k for _ in range(r)]
    else:
        grids["B"] = f.new_matrix(r, r, "B")
        grids["C"] = f.new_matrix(r, k, "C")
    return grids


def _eye(size: int) -> BitGrid:
    return [[i == j for j in range(size)] for i in range(size)]


def _zero(rows: int, cols: int) -> BitGrid:
    return [[False] * cols for _ in range(rows)]


def _hcat(*blocks: BitGrid) -> BitGrid:
    rows = max((len(b) for b in blocks), default=0)
    return [sum((b[i] if b else [] for b in blocks), []) for i in range(rows)]


def _assemble(spec: DiscoverySpec, g: Dict[str, BitGrid]) -> Tuple[BitGrid, BitGrid, BitGrid, BitGrid]:
    """(Hx-part, Hz-part, Lx-part, Lz-part) as n-column grids over r+t rows and k rows."""
    r, t, k = spec.r, spec.t, spec.k
    a1, a2, b, c, d, e = g["A1"], g["A2"], g["B"], g["C"], g["D"], g["E"]
    top_x = _hcat(_eye(r), a1, a2) if r else []
    top_z = _hcat(b, _zero(r, t), c) if r else []
    bottom_x = _zero(t, spec.n) if t else []
    bottom_z = _hcat(d, _eye(t), e) if t else []
    lx_x = _hcat(_zero(k, r), transpose(e, k) if t else _zero(k, 0), _eye(k))
    lx_z = _hcat(transpose(c, k) if r else _zero(k, 0), _zero(k, t), _zero(k, k))
    lz_z = _hcat(transpose(a2, k) if r else _zero(k, 0), _zero(k, t), _eye(k))
    hx = top_x + bottom_x
    hz = top_z + bottom_z
    return hx, hz, (lx_x, lx_z), (_zero(k, spec.n), lz_z)


def _syndrome_bits(f: CnfFormula, rows: BitGrid, support: Sequence[int]) -> List[Bit]:
    return [xor_gate(f, [row[j] for j in support]) for row in rows]


def _css_distance_constraints(f: CnfFormula, checks: BitGrid, logicals: BitGrid, n: int, d: int,
                              exact: bool = True) -> None:
    """No undetected logical of weight < d and, when exact, one of weight exactly d."""
    for w in range(1, d):
        for support in combinations(range(n), w):
            detected = _syndrome_bits(f, checks, support)
            logical = _syndrome_bits(f, logicals, support)
            f.add_clause(detected + [negate(or_gate(f, logical))])
    if not exact:
        return
    witnesses: List[Bit] = []
    for support in combinations(range(n), d):
        y = f.new_var()
        for s in _syndrome_bits(f, checks, support):
            f.add_clause([-y, negate(s)])
        f.add_clause([-y] + _syndrome_bits(f, logicals, support))
        witnesses.append(y)
    f.add_clause(witnesses)


def _pauli_syndrome(f: CnfFormula, x_part: BitGrid, z_part: BitGrid, ex: Sequence[int], ez: Sequence[int]) -> List[Bit]:
    """Symplectic products of rows (x|z) with the error (ex|ez): x·ez + z·ex."""
    return [xor_gate(f, [x_part[i][j] for j in ez] + [z_part[i][j] for j in ex]) for i in range(len(x_part))]


def _iter_paulis(n: int, w: int):
    for support in combinations(range(n), w):
        for kinds in product((1, 2, 3), repeat=w):
            ex = [q for q, kind in zip(support, kinds) if kind & 1]
            ez = [q for q, kind in zip(support, kinds) if kind & 2]
            yield ex, ez


def _stabilizer_distance_constraints(f: CnfFormula, hx: BitGrid, hz: BitGrid, qx: BitGrid, qz: BitGrid, n: int, d: int,
                                     exact: bool = True) -> None:
    for w in range(1, d):
        for ex, ez in _iter_paulis(n, w):
            detected = _pauli_syndrome(f, hx, hz, ex, ez)
            logical = _pauli_syndrome(f, qx, qz, ex, ez)
            f.add_clause(detected + [negate(or_gate(f, logical))])
    if not exact:
        return
    witnesses: List[Bit] = []
    for ex, ez in _iter_paulis(n, d):
        y = f.new_var()
        for s in _pauli_syndrome(f, hx, hz, ex, ez):
            f.add_clause([-y, negate(s)])
        f.add_clause([-y] + _pauli_syndrome(f, qx, qz, ex, ez))
        witnesses.append(y)
    f.add_clause(witnesses)


def _css_phantom_constraints(f: CnfFormula, hx: BitGrid, hz: BitGrid, lx: BitGrid, lz: BitGrid, n: int, k: int) -> List[List[List[int]]]:
    from .phantom import minimal_gateset

    perms = []
    for index, gate in enumerate(minimal_gateset(k)):
        p = permutation_var(f, n, name=f"P{index}_{gate.name}")
        data = gate.f.data
        fxx, fzz = BitMatrix(data[:k, :k]), BitMatrix(data[k:, k:])
        hxp, hzp = matrix_product(f, hx, p), matrix_product(f, hz, p)
        lxp, lzp = matrix_product(f, lx, p), matrix_product(f, lz, p)
        hx_t, hz_t = transpose(hx, n), transpose(hz, n)
        lx_t, lz_t = transpose(lx, n), transpose(lz, n)
        for left, right, target in ((hxp, hz_t, None), (hzp, hx_t, None), (hxp, lz_t, None),
                                    (hzp, lx_t, None), (lxp, hz_t, None), (lzp, hx_t, None),
                                    (lxp, lz_t, fxx), (lzp, lx_t, fzz)):
            if left and right and right[0]:
                matrix_product_constraint(f, left, right, target)
        perms.append(p)
    return perms


def _stabilizer_phantom_constraints(f: CnfFormula, hx: BitGrid, hz: BitGrid, qx: BitGrid, qz: BitGrid,
                                    n: int, k: int) -> List[List[List[int]]]:
    """Permutations with R·M = F·R for a shared symplectic basis rotation R."""
    from .phantom import minimal_gateset

    rot = symplectic_var(f, k, "R")
    perms = []
    for index, gate in enumerate(minimal_gateset(k)):
        p = permutation_var(f, n, name=f"P{index}_{gate.name}")
        hxp, hzp = matrix_product(f, hx, p), matrix_product(f, hz, p)
        qxp, qzp = matrix_product(f, qx, p), matrix_product(f, qz, p)
        hx_t, hz_t, qx_t, qz_t = (transpose(m, n) for m in (hx, hz, qx, qz))
        if hx:
            matrix_sum_product_constraint(f, [(hxp, hz_t), (hzp, hx_t)], None)
            matrix_sum_product_constraint(f, [(hxp, qz_t), (hzp, qx_t)], None)
            matrix_sum_product_constraint(f, [(qxp, hz_t), (qzp, hx_t)], None)
        coords = [[xor_gate(f, [and_gate(f, qxp[i][t], qz[j][t]) for t in range(n)]
                            + [and_gate(f, qzp[i][t], qx[j][t]) for t in range(n)])
                   for j in range(2 * k)] for i in range(2 * k)]
        induced = [row[k:] + row[:k] for row in coords]
        matrix_sum_product_constraint(f, [(rot, induced), (constant_grid(gate.f), rot)], None)
        perms.append(p)
    return perms


def discovery_instance(spec: DiscoverySpec, config: Optional[QecConfig] = None) -> Tuple[CnfFormula, Callable[[SolveResult], Any]]:
    """
    CNF whose models are codes in standard form with the requested parameters.

    Standard-form submatrices are free variables (B = C = 0 for CSS); rows must commute,
    every error below the target distance must be detected or trivial, and (with
    exact_distance) some error of exactly the target distance must be an undetected logical.

    Args:
        spec: Target parameters
        config: Settings (clause_limit guards the distance constraints)

    Returns:
        (formula, decoder mapping a SAT result to a CssCode or StabilizerCode)

    Raises:
        CutoffExceeded: If the estimated clause count is over clause_limit
    """
    config = config or default_config
    estimate = estimate_distance_clauses(spec)
    if estimate > config.clause_limit:
        logger.error(f"Discovery instance for {spec} needs ~{estimate} clauses")
        raise CutoffExceeded("discovery instance clauses", estimate, config.clause_limit)

    n, k = spec.n, spec.k
    f = CnfFormula()
    grids = _standard_form_grids(f, spec)
    hx, hz, (lx_x, lx_z), (lz_x, lz_z) = _assemble(spec, grids)
    r, t = spec.r, spec.t

    if spec.css:
        x_rows, z_rows = hx[:r], hz[r:]
        if x_rows and z_rows:
            matrix_product_constraint(f, x_rows, transpose(z_rows, n), None)
        _css_distance_constraints(f, z_rows, lz_z, n, spec.dx, spec.exact_distance)
        _css_distance_constraints(f, x_rows, lx_x, n, spec.dz, spec.exact_distance)
        perms = _css_phantom_constraints(f, x_rows, z_rows, lx_x, lz_z, n, k) if spec.phantom else []
    else:
        if hx:
            matrix_sum_product_constraint(f, [(hx, transpose(hz, n)), (hz, transpose(hx, n))], None)
        qx, qz = lx_x + lz_x, lx_z + lz_z
        _stabilizer_distance_constraints(f, hx, hz, qx, qz, n, spec.d, spec.exact_distance)
        perms = _stabilizer_phantom_constraints(f, hx, hz, qx, qz, n, k) if spec.phantom else []

    def decode(result: SolveResult) -> Union[CssCode, StabilizerCode]:
        hx_m, hz_m = grid_value(result, hx, n), grid_value(result, hz, n)
        lxx, lxz = grid_value(result, lx_x, n), grid_value(result, lx_z, n)
        lzz = grid_value(result, lz_z, n)
        metadata: Dict[str, Any] = {"family": "discovered", "r": r}
        if perms:
            metadata["perms"] = [_decode_perm(result, p) for p in perms]
        if spec.css:
            code = CssCode(hx_m[:r] if r else BitMatrix.zeros(0, n), hz_m[r:] if t else BitMatrix.zeros(0, n),
                           lxx, lzz, metadata=metadata)
            dx, dz = (spec.dx, spec.dz) if spec.exact_distance else distance_css(code, config=config)
            code.metadata.update(dx=dx, dz=dz)
            code.name = f"[[{n},{k},({dx},{dz})]]"
            return code
        h = BitMatrix.hstack(hx_m, hz_m)
        q = BitMatrix.vstack(BitMatrix.hstack(lxx, lxz), BitMatrix.hstack(BitMatrix.zeros(k, n), lzz))
        code = StabilizerCode(h, q, metadata=metadata)
        d = spec.d if spec.exact_distance else distance_stabilizer(code, config=config)
        code.metadata.update(d=d)
        code.name = f"[[{n},{k},{d}]]"
        return code

    logger.debug(f"Discovery instance {spec}: {f}")
    return f, decode


# =============================================================================
# MINIMAL-N SWEEP
# =============================================================================

class SweepRow(NamedTuple):
    """Verdict for one block length: SAT if any r works, UNSAT only if all r are refuted."""
    n: int
    status: SolveStatus
    r: Optional[int]


def _solve_spec(args: Tuple[DiscoverySpec, SolverHandle, QecConfig]) -> Tuple[int, SolveStatus]:
    spec, handle, config = args
    try:
        formula, decode = discovery_instance(spec, config)
    except CutoffExceeded:
        return spec.r, SolveStatus.UNKNOWN
    result = solve(formula, handle)
    if result.status == SolveStatus.SAT:
        code = decode(result)
        found = (code.metadata["dx"], code.metadata["dz"]) if spec.css else (code.metadata["d"],) * 2
        if found[0] < spec.dx or found[1] < spec.dz:
            logger.error(f"Decoded {code.name} misses the target distance ({spec.dx},{spec.dz})")
            raise RuntimeError("Discovered code failed distance re-verification")
    return spec.r, result.status


def minimal_n(k: int, dx: int, dz: Optional[int] = None, phantom: bool = False, n_max: int = 12,
              css: bool = True, handle: Optional[SolverHandle] = None,
              config: Optional[QecConfig] = None) -> List[SweepRow]:
    """
    Scan n upward until some standard-form rank gives a SAT discovery instance.

    Distances are lower bounds, so a [[7,3,(2,3)]] code meets d = 2. Each SAT model is
    decoded and its distances recomputed by enumeration. For CSS sweeps with dx = dz
    only r_x <= r_z is tried, since Hadamard duality swaps the two. Timeouts and refused instances make a length UNKNOWN rather than UNSAT.

    Args:
        k: Logical qubits
        dx, dz: Target distances (dz defaults to dx)
        phantom: Require phantomness
        n_max: Largest n tried
        css: CSS or general stabilizer codes
        handle: Solver backend
        config: Settings (jobs > 1 runs the r values of each n in a process pool)

    Returns:
        One SweepRow per n tried, ending at the first SAT

    Raises:
        RuntimeError: If a decoded code falls short of the target distances
    """
    config = config or default_config
    handle = handle or SolverHandle.from_config(config)
    dz = dx if dz is None else dz
    rows: List[SweepRow] = []
    logger.info(f"Minimal-n sweep: k={k}, d=({dx},{dz}), phantom={phantom}, n<={n_max}")
    for n in range(k + 1, n_max + 1):
        specs = []
        for r in range(0, n - k + 1):
            if css and dx == dz and r > n - k - r:
                continue
            specs.append(DiscoverySpec(n=n, r=r, k=k, dx=dx, dz=dz, css=css, phantom=phantom,
                                       exact_distance=False))
        jobs = [(spec, handle, config) for spec in specs]
        if config.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=config.jobs) as pool:
                outcomes = list(pool.map(_solve_spec, jobs))
        else:
            outcomes = [_solve_spec(job) for job in jobs]
        sat_r = next((r for r, status in outcomes if status == SolveStatus.SAT), None)
        if sat_r is not None:
            rows.append(SweepRow(n, SolveStatus.SAT, sat_r))
            logger.success(f"Smallest n found: {n} (r={sat_r})")
            break
        definitive = all(status == SolveStatus.UNSAT for _, status in outcomes)
        rows.append(SweepRow(n, SolveStatus.UNSAT if definitive else SolveStatus.UNKNOWN, None))
        logger.debug(f"n={n}: {rows[-1].status}")
    return rows


def sweep_frame(rows: Sequence[SweepRow]) -> pd.DataFrame:
    """Sweep rows as a DataFrame with columns n, status, r."""
    return pd.DataFrame([{"n": row.n, "status": row.status.value, "r": row.r} for row in rows],
                        columns=["n", "status", "r"])
