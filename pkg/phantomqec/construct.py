"""
Phantom QEC Toolkit - Construct Module

Constructive code families: GF(4) machinery and quadratic-residue qudit codes,
binarize-and-concatenate with [[4,2,2]], quantum Reed-Muller codes in the polynomial
formalism (hypercube, punctured hypercube, phantom and balanced variants), glued
[[4,2,2]] tubes, hypergraph products, simple concatenation, dual connection, non-CSS
doubling, the qRM fold involutions, and a registry of named presets.

Coordinate convention for Reed-Muller codes: coordinate c in 0..2^m-1 is the point
whose variable x_i equals bit (i-1) of c, so coordinates run lexicographically from
0...0 to 1...1 with x_1 the lowest bit.
"""

from mylogger import logger
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union
import galois
import networkx as nx
import numpy as np

from .codes import (
    CssCode,
    StabilizerCode,
    _pack_words,
    _popcount_rows,
    _span_table,
    distance_css,
)
from .config import QecConfig, default_config
from .enums import FoldKind
from .f2linalg import BitMatrix, insert_into_basis, inverse, kernel, row_basis
from .tableau import Circuit, circuit_symplectic


logger.info("Loading construct module")


# ==================== GF(4) ====================

GF4 = galois.GF(4)
"""GF(4) = F2[z]/(z^2+z+1) with 0, 1, ω = 2, ω² = 3."""

OMEGA = 2
OMEGA2 = 3

_GF4_OPS = ("add", "mul", "conj", "trace")


def gf4_arith(a: int, b: int = 0, op: str = "mul") -> int:
    """
    Scalar GF(4) arithmetic on the integer encoding 0, 1, ω=2, ω²=3.

    Args:
        a: First operand
        b: Second operand (ignored by conj and trace)
        op: 'add', 'mul', 'conj' (x²) or 'trace' (x + x², returned as 0/1)

    Raises:
        ValueError: On an unknown op or an operand outside 0..3

    Example:
        >>> gf4_arith(OMEGA, OMEGA, "mul")
        3
        >>> gf4_arith(OMEGA, op="trace")
        1
    """
    if op not in _GF4_OPS:
        raise ValueError(f"Unknown GF(4) operation {op!r}; expected one of {_GF4_OPS}")
    if not (0 <= a < 4 and 0 <= b < 4):
        raise ValueError(f"GF(4) operands must be in 0..3, got {a}, {b}")
    x, y = GF4(a), GF4(b)
    if op == "add":
        return int(x + y)
    if op == "mul":
        return int(x * y)
    if op == "conj":
        return int(x ** 2)
    return int(x + x ** 2)


def _gf4_trace(values: galois.FieldArray) -> np.ndarray:
    return (values + values ** 2).view(np.ndarray).astype(np.uint8)


def _gf4_bits(values: galois.FieldArray) -> Tuple[np.ndarray, np.ndarray]:
    """Coordinates (α1, α2) in the self-dual normal basis {ω, ω²}: αi = tr(α·basis_i)."""
    return _gf4_trace(values * GF4(OMEGA)), _gf4_trace(values * GF4(OMEGA2))


@dataclass
class Gf4Code:
    """
    GF(4)-linear CSS code: X and Z stabilizer row spans over GF(4) and an optional
    X-logical vector.

    Commutation across sectors is the plain bilinear condition Σ γ_j η_j = 0.

    Raises:
        ValueError: If the sectors do not commute or the logical is not a valid X-logical
    """
    hx4: galois.FieldArray
    hz4: galois.FieldArray
    lx4: Optional[galois.FieldArray] = None
    name: str = ""

    def __post_init__(self):
        self.hx4 = GF4(np.atleast_2d(np.asarray(self.hx4, dtype=int)))
        self.hz4 = GF4(np.atleast_2d(np.asarray(self.hz4, dtype=int)))
        if self.hx4.shape[1] != self.hz4.shape[1]:
            raise ValueError("Hx4 and Hz4 have different lengths")
        if np.any(self.hx4 @ self.hz4.T):
            raise ValueError("GF(4) stabilizers do not commute (Σ γ_j η_j ≠ 0)")
        if self.lx4 is not None:
            self.lx4 = GF4(np.asarray(self.lx4, dtype=int).reshape(-1))
            if self.lx4.shape[0] != self.n:
                raise ValueError("Logical length does not match n")
            if np.any(self.hz4 @ self.lx4):
                raise ValueError("X-logical does not commute with the Z stabilizers")
            stacked = np.vstack([self.hx4, self.lx4.reshape(1, -1)])
            if np.linalg.matrix_rank(stacked) == np.linalg.matrix_rank(self.hx4):
                raise ValueError("X-logical lies in the X stabilizer span")

    @property
    def n(self) -> int:
        return int(self.hx4.shape[1])

    @property
    def k(self) -> int:
        return self.n - int(np.linalg.matrix_rank(self.hx4)) - int(np.linalg.matrix_rank(self.hz4))

    def conjugate(self) -> 'Gf4Code':
        """Entrywise Frobenius image."""
        lx = self.lx4 ** 2 if self.lx4 is not None else None
        return Gf4Code(self.hx4 ** 2, self.hz4 ** 2, lx, self.name)

    def __repr__(self) -> str:
        return f"Gf4Code([[{self.n},{self.k}]]_4 {self.name})"


def _binary_rows(rows: galois.FieldArray) -> List[np.ndarray]:
    """Binary images of ω·row and ω²·row for each GF(4) row, interleaved (α1, α2) per qudit."""
    out = []
    for row in rows:
        for scalar in (OMEGA, OMEGA2):
            a1, a2 = _gf4_bits(row * GF4(scalar))
            word = np.empty(2 * row.shape[0], dtype=np.uint8)
            word[0::2], word[1::2] = a1, a2
            out.append(word)
    return out


def _independent(rows: Sequence[np.ndarray], n: int) -> BitMatrix:
    """Keep rows in order, dropping any in the span of the earlier ones."""
    basis: Dict[int, int] = {}
    kept = []
    for row in rows:
        packed = BitMatrix(row.reshape(1, -1)).row_ints()[0]
        if insert_into_basis(packed, basis):
            kept.append(row)
    return BitMatrix(np.array(kept, dtype=np.uint8)) if kept else BitMatrix.zeros(0, n)


def binarize(code4: Gf4Code) -> CssCode:
    """
    Binary [[2n, 2k]] CSS image of a GF(4)-linear CSS code.

    Each qudit j becomes qubits (2j, 2j+1) carrying the normal-basis coordinates
    (tr(αω), tr(αω²)), so ω ↦ 10, ω² ↦ 01 and 1 ↦ 11. Every generator contributes its
    ω and ω² multiples; independent rows are retained in order.

    Example:
        >>> code = binarize(Gf4Code([[1, OMEGA, OMEGA2]], [[1, OMEGA, OMEGA2]]))
        >>> code.hx.to_strings()
        ['100111', '011110']
    """
    n = 2 * code4.n
    hx = _independent(_binary_rows(code4.hx4), n)
    hz = _independent(_binary_rows(code4.hz4), n)
    metadata = {"family": "binarized", "qudit_n": code4.n}
    code = CssCode(hx, hz, name=f"bin({code4.name})" if code4.name else "", metadata=metadata)
    logger.debug(f"Binarized {code4!r} into {code!r}")
    return code


# ==================== Concatenation with [[4,2,2]] ====================

# Per-pair [[4,2,2]] encodings: bit (a1, a2) of a binary pair to a 4-qubit word.
_ENC_X = ((1, 1, 0, 0), (1, 0, 1, 0))
_ENC_Z = ((0, 1, 0, 1), (0, 0, 1, 1))


def _encode_pairs(m: BitMatrix, pairs: Sequence[Tuple[int, int]], table) -> np.ndarray:
    data = m.data
    out = np.zeros((m.rows, 4 * len(pairs)), dtype=np.uint8)
    for block, (a, b) in enumerate(pairs):
        cols = slice(4 * block, 4 * block + 4)
        out[:, cols] ^= np.outer(data[:, a], table[0]).astype(np.uint8)
        out[:, cols] ^= np.outer(data[:, b], table[1]).astype(np.uint8)
    return out


def concat_422(code: CssCode, pairs: Optional[Sequence[Tuple[int, int]]] = None) -> CssCode:
    """
    Encode every qubit pair of a binary code into a [[4,2,2]] block.

    With the pair (a, b) encoding one GF(4) qudit: X on a ↦ XXII, X on b ↦ XIXI,
    Z on a ↦ IZIZ, Z on b ↦ IIZZ (so X¹ ↦ IXXI and Z¹ ↦ IZZI). Each block adds
    XXXX and ZZZZ. Logical pairings are preserved.

    Args:
        code: CSS code on an even number of qubits
        pairs: Qubit pairs, one per block (default (0,1), (2,3), ...)

    Raises:
        ValueError: On odd n or pairs that do not partition the qubits

    Example:
        >>> concat_422(CssCode(BitMatrix.zeros(0, 2), BitMatrix.zeros(0, 2))).parameters()
        '[[4,2]]'
    """
    n = code.n
    if n % 2:
        raise ValueError(f"concat_422 needs an even number of qubits, got {n}")
    pairs = [tuple(p) for p in pairs] if pairs is not None else [(2 * j, 2 * j + 1) for j in range(n // 2)]
    if sorted(q for p in pairs for q in p) != list(range(n)):
        raise ValueError("Pairs must partition the qubits")

    blocks = len(pairs)
    block_x = np.zeros((blocks, 4 * blocks), dtype=np.uint8)
    for j in range(blocks):
        block_x[j, 4 * j:4 * j + 4] = 1
    hx = np.vstack([_encode_pairs(code.hx, pairs, _ENC_X), block_x])
    hz = np.vstack([_encode_pairs(code.hz, pairs, _ENC_Z), block_x])
    lx = _encode_pairs(code.lx, pairs, _ENC_X) if code.k else None
    lz = _encode_pairs(code.lz, pairs, _ENC_Z) if code.k else None
    metadata = {"family": "concat_422", "blocks": blocks}
    out = CssCode(hx, hz, lx, lz, name=f"{code.name}∘[[4,2,2]]" if code.name else "", metadata=metadata)
    logger.debug(f"Concatenated {code!r} with [[4,2,2]] into {out!r}")
    return out


# ==================== Quadratic-residue codes over GF(4) ====================

def _splitting_degree(p: int) -> int:
    m = 1
    while (4 ** m - 1) % p:
        m += 1
    return m


def _cyclic_rows(coeffs: Sequence[int], n: int) -> np.ndarray:
    """Generator matrix of the cyclic code with ascending generator coefficients."""
    deg = len(coeffs) - 1
    rows = np.zeros((n - deg, n), dtype=int)
    for i in range(n - deg):
        rows[i, i:i + deg + 1] = coeffs
    return rows


def qr_gf4(p: int) -> Gf4Code:
    """
    Quantum quadratic-residue [[p, 1]]_4 code for a prime p ≡ 3, 5, 7 (mod 8).

    The splitting field GF(4^m) of x^p − 1 supplies a primitive p-th root ξ. X
    stabilizers are the dual QR code generated by ∏_{i ∈ −N ∪ {0}} (x − ξ^i), N the
    nonresidues. Z stabilizers are the same code for p ≡ 3 (mod 8) and its conjugate
    for p ≡ 5, 7 (mod 8). The X-logical is ∏_{i ∈ −N} (x − ξ^i).

    Raises:
        ValueError: If p is not an admissible odd prime

    Example:
        >>> qr_gf4(3).hx4.tolist()
        [[2, 3, 1]]
    """
    if p < 3 or not galois.is_prime(p) or p % 8 not in (3, 5, 7):
        raise ValueError(f"p must be an odd prime ≡ 3, 5, 7 (mod 8), got {p}")
    m = _splitting_degree(p)
    field = galois.GF(2 ** (2 * m))
    g = field.primitive_element
    xi = g ** ((4 ** m - 1) // p)
    omega = g ** ((4 ** m - 1) // 3)
    to_gf4 = {0: 0, 1: 1, int(omega): OMEGA, int(omega ** 2): OMEGA2}

    residues = {(j * j) % p for j in range(1, p)}
    nonresidues = set(range(1, p)) - residues
    neg_n = sorted((-i) % p for i in nonresidues)

    def poly_coeffs(exponents: Iterable[int]) -> List[int]:
        roots = field([int(xi ** e) for e in exponents])
        coeffs = galois.Poly.Roots(roots).coeffs[::-1]
        try:
            return [to_gf4[int(c)] for c in coeffs]
        except KeyError as e:
            raise RuntimeError(f"Generator coefficient {e} outside GF(4)") from e

    hx = _cyclic_rows(poly_coeffs([0] + neg_n), p)
    lx = np.zeros(p, dtype=int)
    lx_coeffs = poly_coeffs(neg_n)
    lx[:len(lx_coeffs)] = lx_coeffs
    hx4 = GF4(hx)
    hz4 = hx4 if p % 8 == 3 else hx4 ** 2
    code = Gf4Code(hx4, hz4, GF4(lx), name=f"QR{p}")
    logger.debug(f"Built {code!r} in GF(4^{m})")
    return code


def bc_code(p: int) -> CssCode:
    """
    Binarize-and-concatenate code [[4p, 2, ≥ 2d]] from the quadratic-residue qudit code.

    Example:
        >>> bc_code(3).parameters()
        '[[12,2]]'
    """
    code = concat_422(binarize(qr_gf4(p)))
    code.name = f"B&C(QR{p})"
    code.metadata.update({"family": "bc", "p": p})
    return code


# ==================== Polynomial formalism ====================

Monomial = FrozenSet[int]


@dataclass(frozen=True)
class PolyF2:
    """
    Square-free polynomial over F2 in x_1..x_m, stored as a set of monomials.

    Example:
        >>> x1 = PolyF2.variable(3, 1)
        >>> (x1 * x1 + PolyF2.constant(3)).degree
        1
    """
    m: int
    terms: FrozenSet[Monomial] = frozenset()

    def __post_init__(self):
        for term in self.terms:
            if any(not 1 <= v <= self.m for v in term):
                raise ValueError(f"Monomial {sorted(term)} uses variables outside x_1..x_{self.m}")

    @classmethod
    def constant(cls, m: int, value: int = 1) -> 'PolyF2':
        return cls(m, frozenset([frozenset()]) if value & 1 else frozenset())

    @classmethod
    def variable(cls, m: int, i: int) -> 'PolyF2':
        return cls(m, frozenset([frozenset([i])]))

    @classmethod
    def monomial(cls, m: int, variables: Iterable[int]) -> 'PolyF2':
        return cls(m, frozenset([frozenset(variables)]))

    @classmethod
    def negated_complement(cls, m: int, variables: Iterable[int]) -> 'PolyF2':
        """∏ (1 + x_j) over the variables j not in the given set."""
        out = cls.constant(m)
        chosen = set(variables)
        for j in range(1, m + 1):
            if j not in chosen:
                out = out * (cls.constant(m) + cls.variable(m, j))
        return out

    def __add__(self, other: 'PolyF2') -> 'PolyF2':
        self._check(other)
        return PolyF2(self.m, self.terms ^ other.terms)

    def __mul__(self, other: 'PolyF2') -> 'PolyF2':
        self._check(other)
        out: set = set()
        for a in self.terms:
            for b in other.terms:
                out ^= {a | b}
        return PolyF2(self.m, frozenset(out))

    def _check(self, other: 'PolyF2') -> None:
        if self.m != other.m:
            raise ValueError(f"Polynomials in {self.m} and {other.m} variables")

    @property
    def degree(self) -> int:
        return max((len(t) for t in self.terms), default=-1)

    def top_terms(self, degree: int) -> List[Monomial]:
        return [t for t in self.terms if len(t) == degree]

    def evaluate(self) -> np.ndarray:
        """Evaluation vector of length 2^m in lexicographic coordinate order."""
        coords = np.arange(1 << self.m)
        out = np.zeros(1 << self.m, dtype=np.uint8)
        for term in self.terms:
            mask = sum(1 << (v - 1) for v in term)
            out ^= ((coords & mask) == mask).astype(np.uint8)
        return out

    def substitute(self, a: BitMatrix, b: Optional[Sequence[int]] = None) -> 'PolyF2':
        """f(Ax + b): x_i ↦ Σ_j A[i, j] x_j + b_i (0-based matrix indices)."""
        b = list(b) if b is not None else [0] * self.m
        images = []
        for i in range(self.m):
            image = PolyF2.constant(self.m, b[i])
            for j in range(self.m):
                if a.data[i, j]:
                    image = image + PolyF2.variable(self.m, j + 1)
            images.append(image)
        out = PolyF2(self.m)
        for term in self.terms:
            product = PolyF2.constant(self.m)
            for v in term:
                product = product * images[v - 1]
            out = out + product
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = sorted(("".join(f"x{v}" for v in sorted(t)) or "1") for t in self.terms)
        return " + ".join(names)


def monomials(m: int, degree: int) -> List[Tuple[int, ...]]:
    """Degree-d monomials in x_1..x_m as sorted variable tuples, lexicographic."""
    return list(combinations(range(1, m + 1), degree))


def _monomial_word(m: int, variables: Iterable[int]) -> np.ndarray:
    return PolyF2.monomial(m, variables).evaluate()


def _negated_word(m: int, variables: Iterable[int]) -> np.ndarray:
    """Evaluation of the negated complement: points whose bits outside the set are 0."""
    coords = np.arange(1 << m)
    outside = sum(1 << (j - 1) for j in range(1, m + 1) if j not in set(variables))
    return ((coords & outside) == 0).astype(np.uint8)


def rm_generator(r: int, m: int) -> BitMatrix:
    """
    Generator matrix of RM(r, m): evaluation rows of every monomial of degree ≤ r,
    ordered by degree and then lexicographically.

    Example:
        >>> rm_generator(0, 2).to_strings()
        ['1111']
        >>> rm_generator(1, 2).to_strings()
        ['1111', '0101', '0011']
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    rows = [_monomial_word(m, mono) for d in range(0, min(r, m) + 1) for mono in monomials(m, d)]
    if not rows:
        return BitMatrix.zeros(0, 1 << m)
    return BitMatrix(np.array(rows, dtype=np.uint8))


def affine_perm(a: BitMatrix, b: Optional[Sequence[int]] = None) -> List[int]:
    """
    Coordinate permutation σ with σ(T(c)) = c for the affine map T(x) = Ax + b.

    Moving coordinate i to σ[i] turns the evaluation vector of f into that of f(Ax + b).

    Raises:
        ValueError: If A is not an invertible m×m matrix or b has the wrong length

    Example:
        >>> affine_perm(BitMatrix(["110", "010", "001"]))
        [0, 1, 3, 2, 4, 5, 7, 6]
    """
    m = a.rows
    if a.cols != m:
        raise ValueError("A must be square")
    inverse(a)
    b_vec = np.array(list(b) if b is not None else [0] * m, dtype=np.uint8)
    if b_vec.shape[0] != m:
        raise ValueError(f"b needs {m} bits")
    coords = np.arange(1 << m)
    bits = ((coords[:, None] >> np.arange(m)) & 1).astype(np.uint8)
    image_bits = (bits @ a.data.T.astype(np.int64) + b_vec) % 2
    images = image_bits @ (1 << np.arange(m))
    perm = np.empty(1 << m, dtype=int)
    perm[images] = coords
    return [int(x) for x in perm]


# ==================== Quantum Reed-Muller codes ====================

def qrm(m: int, l: int) -> CssCode:
    """
    Quantum Reed-Muller code [[2^m, C(m,l), min(2^(m-l), 2^l)]].

    X stabilizers span RM(l-1, m) and Z stabilizers RM(m-l-1, m). The X-logicals are
    the degree-l monomials; each Z-logical is the negated complement of its partner.

    Raises:
        ValueError: Unless 0 < l < m

    Example:
        >>> qrm(3, 1).parameters()
        '[[8,3,(4,2)]]'
    """
    if not 0 < l < m:
        raise ValueError(f"qRM needs 0 < l < m, got m={m}, l={l}")
    logicals = monomials(m, l)
    lx = np.array([_monomial_word(m, mono) for mono in logicals], dtype=np.uint8)
    lz = np.array([_negated_word(m, mono) for mono in logicals], dtype=np.uint8)
    metadata = {"family": "qrm", "m": m, "l": l, "dx": 2 ** (m - l), "dz": 2 ** l,
                "logicals": [list(mono) for mono in logicals]}
    code = CssCode(rm_generator(l - 1, m), rm_generator(m - l - 1, m), lx, lz,
                   name=f"qRM({m},{l})", metadata=metadata)
    logger.debug(f"Built {code!r}")
    return code


def hypercube(D: int) -> CssCode:
    """
    Hypercube code [[2^D, D, (2^(D-1), 2)]], the l = 1 quantum Reed-Muller code.

    Example:
        >>> hypercube(2).parameters()
        '[[4,2,2]]'
    """
    if D < 2:
        raise ValueError(f"Hypercube dimension must be at least 2, got {D}")
    code = qrm(D, 1)
    code.name = f"hypercube({D})"
    code.metadata["family"] = "hypercube"
    return code


def punctured_hypercube(D: int) -> CssCode:
    """
    Hypercube code with coordinate 0...0 deleted: [[2^D − 1, D, (2^(D-1) − 1, 2)]].

    One X stabilizer on every qubit; X-logicals x_i; Z-logicals the complement
    monomials ∏_{j≠i} x_j (no negation); Z stabilizers complete the orthogonal space.

    Example:
        >>> code = punctured_hypercube(3)
        >>> code.parameters(), code.rx
        ('[[7,3,(3,2)]]', 1)
    """
    if D < 2:
        raise ValueError(f"Hypercube dimension must be at least 2, got {D}")
    n = (1 << D) - 1
    hx = BitMatrix(np.ones((1, n), dtype=np.uint8))
    lx = np.array([_monomial_word(D, (i,))[1:] for i in range(1, D + 1)], dtype=np.uint8)
    lz = np.array([_monomial_word(D, [j for j in range(1, D + 1) if j != i])[1:]
                   for i in range(1, D + 1)], dtype=np.uint8)
    hz = kernel(BitMatrix.vstack(hx, BitMatrix(lx)))
    metadata = {"family": "punctured_hypercube", "m": D, "l": 1,
                "dx": 2 ** (D - 1) - 1, "dz": 2}
    return CssCode(hx, hz, lx, lz, name=f"punctured_hypercube({D})", metadata=metadata)


def qrm_orbits(m: int, l: int) -> List[List[Tuple[int, ...]]]:
    """
    Orbits of the degree-l monomials under GL(m−l+1) acting on x_l..x_m with
    x_1..x_{l-1} fixed, modulo lower-degree terms.

    Computed as connected components of the graph joining f to every top-degree
    monomial of its image under a generating transvection x_i ↦ x_i + x_j. The first
    orbit is the retained one (monomials containing x_1..x_{l-1}).

    Example:
        >>> [len(o) for o in qrm_orbits(6, 3)]
        [4, 6, 6, 4]
    """
    graph = nx.Graph()
    nodes = monomials(m, l)
    graph.add_nodes_from(nodes)
    free = range(l, m + 1)
    for i in free:
        for j in free:
            if i == j:
                continue
            a = BitMatrix.identity(m).data.copy()
            a[i - 1, j - 1] = 1
            transvection = BitMatrix(a)
            for mono in nodes:
                image = PolyF2.monomial(m, mono).substitute(transvection)
                for term in image.top_terms(l):
                    graph.add_edge(mono, tuple(sorted(term)))
    fixed = set(range(1, l))
    orbits = [sorted(component) for component in nx.connected_components(graph)]
    orbits.sort(key=lambda orbit: (not fixed <= set(orbit[0]), orbit[0]))
    return orbits


def phantom_qrm(m: int, l: int, promote_x: Optional[Iterable[Sequence[int]]] = None) -> CssCode:
    """
    Phantom quantum Reed-Muller code [[2^m, m−l+1, min(2^(m-l), 2^l)]].

    Retains the X-logicals x_1···x_{l-1}x_j (j = l..m). Every other degree-l monomial is
    promoted: to an X stabilizer when listed in promote_x, otherwise its negated
    complement becomes a Z stabilizer. Promotions must respect the orbits.

    Args:
        m: Number of variables
        l: Logical degree, 1 ≤ l ≤ m/2
        promote_x: Monomials (variable tuples) promoted to X stabilizers

    Raises:
        ValueError: On l out of range, or promote_x splitting an orbit or touching
            the retained logicals

    Example:
        >>> phantom_qrm(4, 2).parameters()
        '[[16,3,4]]'
    """
    if not 1 <= l <= m // 2:
        raise ValueError(f"Phantom qRM needs 1 ≤ l ≤ m/2, got m={m}, l={l}")
    orbits = qrm_orbits(m, l)
    retained, others = orbits[0], orbits[1:]
    to_x = {tuple(sorted(mono)) for mono in (promote_x or [])}
    if to_x & set(retained):
        raise ValueError("Retained logical monomials cannot be promoted")
    unknown = to_x - {mono for orbit in others for mono in orbit}
    if unknown:
        raise ValueError(f"Not degree-{l} monomials: {sorted(unknown)}")
    for orbit in others:
        hit = to_x & set(orbit)
        if hit and len(hit) != len(orbit):
            raise ValueError(f"Promotion splits the orbit starting {orbit[0]}")

    x_rows = [_monomial_word(m, mono) for orbit in others for mono in orbit if mono in to_x]
    z_rows = [_negated_word(m, mono) for orbit in others for mono in orbit if mono not in to_x]
    hx = rm_generator(l - 1, m)
    hz = rm_generator(m - l - 1, m)
    if x_rows:
        hx = BitMatrix.vstack(hx, BitMatrix(np.array(x_rows, dtype=np.uint8)))
    if z_rows:
        hz = BitMatrix.vstack(hz, BitMatrix(np.array(z_rows, dtype=np.uint8)))
    lx = np.array([_monomial_word(m, mono) for mono in retained], dtype=np.uint8)
    lz = np.array([_negated_word(m, mono) for mono in retained], dtype=np.uint8)
    metadata = {"family": "phantom_qrm", "m": m, "l": l, "dx": 2 ** (m - l), "dz": 2 ** l,
                "logicals": [list(mono) for mono in retained],
                "promoted_x": [list(mono) for mono in sorted(to_x)]}
    code = CssCode(hx, hz, lx, lz, name=f"phantom_qRM({m},{l})", metadata=metadata)
    logger.debug(f"Built {code!r} with {len(x_rows)} X and {len(z_rows)} Z promotions")
    return code


def balanced_64_4_8() -> CssCode:
    """
    Balanced [[64,4,8]] phantom qRM code: the x1-orbit goes to Z, the x2-orbit and the
    x3..x6 orbit to X, giving 32 X-type and 28 Z-type stabilizers.

    Example:
        >>> code = balanced_64_4_8()
        >>> code.rx, code.rz
        (32, 28)
    """
    orbits = qrm_orbits(6, 3)
    code = phantom_qrm(6, 3, promote_x=orbits[2] + orbits[3])
    code.name = "balanced[[64,4,8]]"
    code.metadata["family"] = "balanced_64_4_8"
    return code


# ==================== Other families ====================

def glued_422(m: int, punctured: bool = False) -> CssCode:
    """
    m copies of [[4,2,2]] glued into a tube by X stabilizers: [[4m, 2, (2, 2m)]], or
    [[4m−1, 2, (2, 2m−1)]] with the last qubit removed.

    Blocks occupy qubits 4i..4i+3. Glue stabilizers X_{4i}X_{4i+1}X_{4i+4}X_{4i+5} and
    X_{4i+1}X_{4i+2}X_{4i+5}X_{4i+6} make X̄1 = X0X1 and X̄2 = X1X2 equivalent in every
    block; Z̄1 = ∏ Z_{4i+1}Z_{4i+2} and Z̄2 = ∏ Z_{4i}Z_{4i+1}. Puncturing drops the last
    block's XXXX and trims its ZZZZ to a triangle.

    Example:
        >>> glued_422(2).parameters()
        '[[8,2,(2,4)]]'
    """
    if m < 1:
        raise ValueError(f"Need at least one block, got m={m}")
    n = 4 * m - (1 if punctured else 0)

    def word(qubits: Iterable[int]) -> List[int]:
        row = [0] * n
        for q in qubits:
            row[q] = 1
        return row

    hx, hz = [], []
    for i in range(m):
        last = i == m - 1
        if not (last and punctured):
            hx.append(word(range(4 * i, 4 * i + 4)))
        hz.append(word(range(4 * i, 4 * i + (3 if last and punctured else 4))))
        if not last:
            hx.append(word([4 * i, 4 * i + 1, 4 * i + 4, 4 * i + 5]))
            hx.append(word([4 * i + 1, 4 * i + 2, 4 * i + 5, 4 * i + 6]))
    lx = [word([0, 1]), word([1, 2])]
    lz = [word(q for i in range(m) for q in (4 * i + 1, 4 * i + 2)),
          word(q for i in range(m) for q in (4 * i, 4 * i + 1))]
    dz = 2 * m - (1 if punctured else 0)
    metadata = {"family": "glued_422", "m": m, "punctured": punctured, "dx": 2, "dz": dz}
    label = "punctured_glued_422" if punctured else "glued_422"
    return CssCode(hx or BitMatrix.zeros(0, n), hz, lx, lz, name=f"{label}({m})", metadata=metadata)


def simplex_checks(k: int) -> BitMatrix:
    """
    Weight-3 checks of the [2^k − 1, k, 2^(k-1)] simplex code (column c is the vector c+1).

    Example:
        >>> simplex_checks(2).to_strings()
        ['111']
    """
    n1 = (1 << k) - 1
    rows = []
    for a in range(1, n1 + 1):
        for b in range(a + 1, n1 + 1):
            c = a ^ b
            if c > b:
                row = [0] * n1
                for v in (a, b, c):
                    row[v - 1] = 1
                rows.append(row)
    return BitMatrix(rows) if rows else BitMatrix.zeros(0, n1)


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (np.kron(a, b) % 2).astype(np.uint8)


def hgp_phantom(k: int) -> CssCode:
    """
    Hypergraph product of the simplex code (all weight-3 checks) with the length-2^(k-1)
    repetition code: [[n1·n2 + m1·m2, k, 2^(k-1)]].

    Hx = (H1 ⊗ I | I ⊗ H2ᵀ), Hz = (I ⊗ H2 | H1ᵀ ⊗ I). X-logicals are unit vectors
    of the simplex code tensored with the repetition codeword, Z-logicals the simplex
    generators tensored with e_0, both on the left sector.

    Example:
        >>> hgp_phantom(2).parameters()
        '[[7,2,2]]'
    """
    if k < 2:
        raise ValueError(f"hgp_phantom needs k ≥ 2, got {k}")
    h1 = simplex_checks(k).data
    m1, n1 = h1.shape
    n2 = 1 << (k - 1)
    h2 = np.zeros((n2 - 1, n2), dtype=np.uint8)
    for i in range(n2 - 1):
        h2[i, i] = h2[i, i + 1] = 1
    m2 = n2 - 1

    hx = np.hstack([_kron(h1, np.eye(n2, dtype=np.uint8)), _kron(np.eye(m1, dtype=np.uint8), h2.T)])
    hz = np.hstack([_kron(np.eye(n1, dtype=np.uint8), h2), _kron(h1.T, np.eye(m2, dtype=np.uint8))])

    g1 = np.array([[(c + 1) >> i & 1 for c in range(n1)] for i in range(k)], dtype=np.uint8)
    units = np.zeros((k, n1), dtype=np.uint8)
    for j in range(k):
        units[j, (1 << j) - 1] = 1
    g2 = np.ones((1, n2), dtype=np.uint8)
    eps = np.zeros((1, n2), dtype=np.uint8)
    eps[0, 0] = 1
    right = np.zeros((k, m1 * m2), dtype=np.uint8)
    lx = np.hstack([_kron(units, g2), right])
    lz = np.hstack([_kron(g1, eps), right])
    d = 1 << (k - 1)
    metadata = {"family": "hgp_phantom", "k": k, "dx": d, "dz": d}
    return CssCode(hx, hz, lx, lz, name=f"hgp_phantom({k})", metadata=metadata)


def concat_simple(outer: CssCode, inner: CssCode) -> CssCode:
    """
    Replace every outer qubit by a block of a k = 1 inner code.

    Outer stabilizers and logicals are lifted through the inner logicals; each block
    keeps the inner stabilizers. Permutation witnesses of the outer code lift
    blockwise, so phantom outer codes stay phantom.

    Raises:
        ValueError: If the inner code does not encode exactly one qubit

    Example:
        >>> concat_simple(four_two_two(), trivial(1)).parameters()
        '[[4,2]]'
    """
    if inner.k != 1:
        raise ValueError(f"Inner code must have k = 1, got k = {inner.k}")
    n_out, n_in = outer.n, inner.n
    eye = np.eye(n_out, dtype=np.uint8)
    hx = np.vstack([_kron(outer.hx.data, inner.lx.data), _kron(eye, inner.hx.data)])
    hz = np.vstack([_kron(outer.hz.data, inner.lz.data), _kron(eye, inner.hz.data)])
    lx = _kron(outer.lx.data, inner.lx.data)
    lz = _kron(outer.lz.data, inner.lz.data)
    metadata: Dict[str, Any] = {"family": "concat_simple", "blocks": n_out, "block_size": n_in}
    if all(key in c.metadata for c in (outer, inner) for key in ("dx", "dz")):
        metadata["distance_lower_bound"] = [outer.metadata["dx"] * inner.metadata["dx"],
                                            outer.metadata["dz"] * inner.metadata["dz"]]
    return CssCode(hx, hz, lx, lz, name=f"{outer.name}∘{inner.name}", metadata=metadata)


def connect_dual(primal: CssCode) -> CssCode:
    """
    Join a CSS code and its Hadamard dual by transversal CNOTs from the primal block.

    Hx' = [[Hx, Hx], [0, Hz]], Hz' = [[Hz, 0], [Hx, Hx]]; logical basis
    X̄'_i = (lx_i, lx_i), X̄'_{k+i} = (0, lz_i), Z̄'_i = (lz_i, 0), Z̄'_{k+i} = (lx_i, lx_i).
    A permutation π implementing CNOT_ij on the primal gives π ⊕ π implementing
    CNOT_ij·CNOT_{j+k, i+k}.

    Example:
        >>> connect_dual(hypercube(3).hadamard_dual()).parameters()
        '[[16,6]]'
    """
    n = primal.n
    hx, hz = primal.hx.data, primal.hz.data
    pad = np.zeros_like(hz)
    hx2 = np.vstack([np.hstack([hx, hx]), np.hstack([pad, hz])])
    hz2 = np.vstack([np.hstack([hz, pad]), np.hstack([hx, hx])])
    lx, lz = primal.lx.data, primal.lz.data
    zeros = np.zeros_like(lx)
    lx2 = np.vstack([np.hstack([lx, lx]), np.hstack([zeros, lz])])
    lz2 = np.vstack([np.hstack([lz, zeros]), np.hstack([lx, lx])])
    metadata = {"family": "connect_dual", "primal": primal.name}
    return CssCode(hx2, hz2, lx2, lz2, name=f"connect_dual({primal.name})", metadata=metadata)


def connected_distance(primal: CssCode, config: Optional[QecConfig] = None) -> int:
    """
    Distance of connect_dual(primal) from the primal alone:
    min(d_z, min |l| + |l ⊕ g|) over X-logicals l and g ∈ ker(Hx).

    |l| + |l ⊕ g| equals 2|l| + |g| − 2|l ∩ g|.

    Raises:
        CutoffExceeded: If n + k is above distance_span_cutoff
    """
    config = config or default_config
    n, k = primal.n, primal.k
    config.check_limit("connected-distance walk", n + k, "distance_span_cutoff")
    dz = distance_css(primal, config=config)[1]
    g_table = _span_table(_pack_words(kernel(primal.hx).row_ints(), n))
    s_rows = row_basis(primal.hx).row_ints() if primal.hx.rows else []
    s_table = _span_table(_pack_words(s_rows, n))
    logical = primal.lx.row_ints()

    best = dz
    for combo in range(1, 1 << k):
        word = 0
        for i in range(k):
            if combo >> i & 1:
                word ^= logical[i]
        l_words = s_table ^ _pack_words([word], n)[0]
        l_weights = _popcount_rows(l_words)
        for l_word, l_weight in zip(l_words, l_weights):
            if l_weight >= best:
                continue
            w = int(l_weight) + int(_popcount_rows(g_table ^ l_word).min())
            best = min(best, w)
    logger.debug(f"Connected distance of {primal!r}: {best}")
    return best


def double_noncss(code: Union[StabilizerCode, CssCode]) -> CssCode:
    """
    CSS doubling of a stabilizer code with check matrix (A|B): [[2n, 2k, d']], d ≤ d' ≤ 2d.

    Hx = (A B), Hz = (B A). From X̄_i = (u|v) and Z̄_i = (s|t): X̄'_i = (u, v),
    X̄'_{i+k} = (s, t), Z̄'_i = (t, s), Z̄'_{i+k} = (v, u).

    Example:
        >>> double_noncss(five_one_three()).parameters()
        '[[10,2]]'
    """
    if isinstance(code, CssCode):
        code = code.to_stabilizer()
    n, k = code.n, code.k
    a, b = code.h.data[:, :n], code.h.data[:, n:]
    q = code.q.data
    u, v = q[:k, :n], q[:k, n:]
    s, t = q[k:, :n], q[k:, n:]
    hx = np.hstack([a, b])
    hz = np.hstack([b, a])
    lx = np.vstack([np.hstack([u, v]), np.hstack([s, t])])
    lz = np.vstack([np.hstack([t, s]), np.hstack([v, u])])
    metadata: Dict[str, Any] = {"family": "double_noncss", "source": code.name}
    if "d" in code.metadata:
        metadata["distance_bounds"] = [code.metadata["d"], 2 * code.metadata["d"]]
    return CssCode(hx, hz, lx, lz, name=f"double({code.name})", metadata=metadata)


# ==================== Presets ====================

def four_two_two() -> CssCode:
    """[[4,2,2]] with the standard-form logical basis."""
    return CssCode(["1111"], ["1111"], name="[[4,2,2]]",
                   metadata={"family": "four_two_two", "dx": 2, "dz": 2})


def steane() -> CssCode:
    """[[7,1,3]] Steane code from the Hamming checks."""
    rows = ["1010101", "0110011", "0001111"]
    return CssCode(rows, rows, name="[[7,1,3]]", metadata={"family": "steane", "dx": 3, "dz": 3})


def five_one_three() -> StabilizerCode:
    """[[5,1,3]] perfect code, stabilizers the cyclic shifts of XZZXI."""
    x, z = [1, 0, 0, 1, 0], [0, 1, 1, 0, 0]
    rows = [x[-s:] + x[:-s] + z[-s:] + z[:-s] if s else x + z for s in range(4)]
    return StabilizerCode(rows, name="[[5,1,3]]", metadata={"family": "five_one_three", "d": 3})


def repetition(n: int, phase_flip: bool = True) -> CssCode:
    """
    [[n, 1]] repetition code. The phase-flip version has X_iX_{i+1} checks, X̄ = X_0
    and Z̄ = Z^{⊗n}, so (d_x, d_z) = (1, n); bit-flip is its Hadamard dual.
    """
    if n < 1:
        raise ValueError("Repetition code needs n ≥ 1")
    checks = np.zeros((n - 1, n), dtype=np.uint8)
    for i in range(n - 1):
        checks[i, i] = checks[i, i + 1] = 1
    single = np.zeros((1, n), dtype=np.uint8)
    single[0, 0] = 1
    code = CssCode(BitMatrix(checks, cols=n) if n > 1 else BitMatrix.zeros(0, n), BitMatrix.zeros(0, n),
                   single, np.ones((1, n), dtype=np.uint8), name=f"rep{n}",
                   metadata={"family": "repetition", "dx": 1, "dz": n})
    return code if phase_flip else code.hadamard_dual()


def trivial(n: int = 1) -> CssCode:
    """[[n, n, 1]] code with no stabilizers."""
    eye = BitMatrix.identity(n)
    return CssCode(BitMatrix.zeros(0, n), BitMatrix.zeros(0, n), eye, eye, name=f"trivial{n}",
                   metadata={"family": "trivial", "dx": 1, "dz": 1})


def binarized_qr(p: int) -> CssCode:
    """Binary [[2p, 2]] image of the quadratic-residue qudit code, before concatenation."""
    code = binarize(qr_gf4(p))
    code.name = f"bin(QR{p})"
    code.metadata["p"] = p
    return code


# ==================== Fold circuits ====================

@dataclass
class FoldCircuit:
    """
    Depth-one diagonal circuit attached to a coordinate involution τ: S powers on
    addressed fixed points, CZ on every pair (i, τ(i)).

    Attributes:
        n: Number of qubits
        involution: τ as a list of images (identity outside the addressed subcube)
        kind: Intended logical action, None for searched folds
        s_qubits: Qubits receiving an S power
        cz_pairs: Disjoint mirrored pairs
        s_powers: Power of S per entry of s_qubits (1..3), all 1 when omitted
        subcube: Addressed coordinates, None when the fold covers every qubit
        logical: Verified 2k×2k logical action, when known

    Raises:
        ValueError: If τ is not an involution or the supports overlap
    """
    n: int
    involution: List[int]
    kind: Optional[FoldKind] = None
    s_qubits: List[int] = field(default_factory=list)
    cz_pairs: List[Tuple[int, int]] = field(default_factory=list)
    s_powers: List[int] = field(default_factory=list)
    subcube: Optional[List[int]] = None
    logical: Optional[BitMatrix] = None

    def __post_init__(self):
        tau = self.involution
        if sorted(tau) != list(range(self.n)):
            raise ValueError("Fold map is not a permutation of the qubits")
        if any(tau[tau[i]] != i for i in range(self.n)):
            raise ValueError("Fold map is not an involution")
        used: set = set()
        for a, b in self.cz_pairs:
            if a == b or a in used or b in used:
                raise ValueError(f"CZ pair ({a}, {b}) overlaps another pair")
            used.update((a, b))
        if used & set(self.s_qubits) or len(set(self.s_qubits)) != len(self.s_qubits):
            raise ValueError("S and CZ supports overlap")
        if not self.s_powers:
            self.s_powers = [1] * len(self.s_qubits)
        if len(self.s_powers) != len(self.s_qubits):
            raise ValueError("One S power is needed per S qubit")
        if any(not 0 < p < 4 for p in self.s_powers):
            raise ValueError(f"S powers must be in 1..3, got {self.s_powers}")

    @classmethod
    def from_involution(cls, tau: Sequence[int], kind: Optional[FoldKind] = None,
                        active: Optional[Iterable[int]] = None, s_power: int = 1) -> 'FoldCircuit':
        """S^s_power on fixed points and CZ on 2-cycles of τ within the active coordinates."""
        tau = [int(t) for t in tau]
        coords = sorted(active) if active is not None else list(range(len(tau)))
        s_qubits = [c for c in coords if tau[c] == c]
        pairs = [(c, tau[c]) for c in coords if c < tau[c]]
        subcube = coords if active is not None else None
        return cls(len(tau), tau, kind, s_qubits, pairs, [s_power] * len(s_qubits), subcube)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Tuple[int, int]], powers: Optional[Dict[int, int]] = None,
                   kind: Optional[FoldKind] = None) -> 'FoldCircuit':
        """Fold with the given CZ pairs and S powers (zero powers dropped)."""
        pairs = [tuple(sorted((int(a), int(b)))) for a, b in pairs]
        tau = list(range(n))
        for a, b in pairs:
            tau[a], tau[b] = b, a
        items = sorted((q, p % 4) for q, p in (powers or {}).items() if p % 4)
        return cls(n, tau, kind, [q for q, _ in items], pairs, [p for _, p in items])

    @property
    def support(self) -> List[int]:
        return sorted(set(self.s_qubits) | {q for pair in self.cz_pairs for q in pair})

    def to_circuit(self) -> Circuit:
        circuit = Circuit()
        for q, power in zip(self.s_qubits, self.s_powers):
            if power == 1:
                circuit.s(q)
            elif power == 2:
                circuit.z(q)
            else:
                circuit.sdg(q)
        for a, b in self.cz_pairs:
            circuit.cz(a, b)
        return circuit

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": str(self.kind) if self.kind is not None else None,
            "n": self.n,
            "involution": list(self.involution),
            "s_qubits": list(self.s_qubits),
            "s_powers": list(self.s_powers),
            "cz_pairs": [list(p) for p in self.cz_pairs],
            "subcube": self.subcube,
            "logical": self.logical.to_strings() if self.logical is not None else None,
        }


def fold_target(kind: FoldKind, k: int, a: int = 0, b: int = 1) -> BitMatrix:
    """
    Logical symplectic of a fold: S̄_a S̄_b or CZ̄_ab.

    Example:
        >>> fold_target(FoldKind.CZ, 2).to_strings()
        ['1001', '0110', '0010', '0001']
    """
    circuit = Circuit().s(a).s(b) if kind is FoldKind.SS else Circuit().cz(a, b)
    return circuit_symplectic(circuit, k)


def fold_involution(code: CssCode, kind: Union[FoldKind, str] = FoldKind.SS) -> FoldCircuit:
    """
    Fold circuit on a phantom qRM (or hypercube) code acting on its first two logicals.

    τ_SS maps x_i to 1 + x_{2l+1-i} for i = 1..2l; τ_CZ does the same except
    x_l ↦ 1 + x_l and x_{l+1} ↦ 1 + x_{l+1}. When 2l < m the fold only addresses the
    subcube x_{2l+1} = ... = x_m = 0.

    Raises:
        ValueError: If the code carries no qRM (m, l) metadata or 2l > m

    Example:
        >>> fold = fold_involution(phantom_qrm(4, 2), FoldKind.SS)
        >>> fold.involution[0], len(fold.s_qubits)
        (15, 4)
    """
    kind = FoldKind(kind) if isinstance(kind, str) else kind
    family = code.metadata.get("family")
    if family not in ("phantom_qrm", "hypercube") or "m" not in code.metadata:
        raise ValueError(f"Fold involutions need a phantom qRM or hypercube code, got family {family!r}")
    m, l = int(code.metadata["m"]), int(code.metadata["l"])
    if 2 * l > m:
        raise ValueError(f"Fold needs 2l ≤ m, got m={m}, l={l}")
    width = 2 * l
    flip_self = {l, l + 1} if kind is FoldKind.CZ else set()

    def image(c: int) -> int:
        out = c & ~((1 << width) - 1)
        for i in range(1, width + 1):
            source = i if i in flip_self else width + 1 - i
            bit = 1 ^ (c >> (source - 1) & 1)
            out |= bit << (i - 1)
        return out

    n = 1 << m
    active = [c for c in range(n) if c >> width == 0]
    tau = list(range(n))
    for c in active:
        tau[c] = image(c)
    fold = FoldCircuit.from_involution(tau, kind, active if width < m else None)
    logger.debug(f"{kind} fold on {code!r}: {len(fold.s_qubits)} S, {len(fold.cz_pairs)} CZ")
    return fold


def punctured_fold(code: CssCode, kind: Union[FoldKind, str] = FoldKind.SS) -> FoldCircuit:
    """
    Fold on a punctured hypercube code addressing the x_3...x_m = 1 subcube.

    SS swaps x_1 and x_2 there (S on fixed points, CZ on the swapped pair); CZ applies
    S to every qubit of the subcube. Qubit q holds coordinate q + 1.

    Raises:
        ValueError: If the code is not a punctured hypercube code with m ≥ 3

    Example:
        >>> fold = punctured_fold(punctured_hypercube(3))
        >>> fold.s_qubits, fold.cz_pairs
        ([3, 6], [(4, 5)])
    """
    kind = FoldKind(kind) if isinstance(kind, str) else kind
    if code.metadata.get("family") != "punctured_hypercube" or "m" not in code.metadata:
        raise ValueError("Punctured fold needs a punctured hypercube code")
    m = int(code.metadata["m"])
    if m < 3:
        raise ValueError(f"Punctured fold needs m ≥ 3, got {m}")
    high = ((1 << m) - 1) & ~3
    active = [high | low for low in range(4)]
    tau = list(range(code.n))
    if kind is FoldKind.SS:
        tau[(high | 1) - 1], tau[(high | 2) - 1] = (high | 2) - 1, (high | 1) - 1
    return FoldCircuit.from_involution(tau, kind, [c - 1 for c in active])


# ==================== Registry ====================

FAMILIES: Dict[str, Callable[..., Union[CssCode, StabilizerCode]]] = {
    "four_two_two": four_two_two,
    "steane": steane,
    "five_one_three": five_one_three,
    "repetition": repetition,
    "trivial": trivial,
    "hypercube": hypercube,
    "punctured_hypercube": punctured_hypercube,
    "qrm": qrm,
    "phantom_qrm": phantom_qrm,
    "balanced_64_4_8": balanced_64_4_8,
    "glued_422": glued_422,
    "glued": glued_422,
    "hgp_phantom": hgp_phantom,
    "hgp": hgp_phantom,
    "bc": bc_code,
    "binarized_qr": binarized_qr,
}

TRANSFORMS: Dict[str, Callable[..., CssCode]] = {
    "concat_422": concat_422,
    "connect_dual": connect_dual,
    "double_noncss": double_noncss,
    "concat_simple": concat_simple,
}


def family_key(name: str) -> str:
    return name.strip().lower().replace("-", "_")


def build_family(name: str, **params: Any) -> Union[CssCode, StabilizerCode]:
    """
    Build a named family member.

    Args:
        name: Family name (hyphens and underscores are interchangeable)
        **params: Constructor parameters, e.g. D=3 or m=4, l=2

    Raises:
        ValueError: On an unknown family or bad parameters

    Example:
        >>> build_family("phantom-qrm", m=4, l=2).parameters()
        '[[16,3,4]]'
    """
    key = family_key(name)
    if key not in FAMILIES:
        raise ValueError(f"Unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}")
    try:
        code = FAMILIES[key](**params)
    except TypeError as e:
        raise ValueError(f"Bad parameters for {name}: {e}") from e
    logger.info(f"Constructed {code!r}")
    return code
