"""
Phantom QEC Toolkit - F2 Linear Algebra Module

Exact linear algebra over the binary field: the BitMatrix type, ranks, row-echelon
forms, kernels, inverses, the symplectic form, the stabilizer standard form, and the
block decompositions used by the CNOT compiler.

Row vectors are packed into Python integers for elimination (bit j is column j), so
every rank/rref/kernel call runs as word-parallel XOR.
"""

from mylogger import logger
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union
import numpy as np


logger.info("Loading f2linalg module")


MatrixLike = Union['BitMatrix', np.ndarray, Sequence[Sequence[int]], Sequence[str]]


class BitMatrix:
    """
    Immutable dense matrix over F2.

    Accepts nested lists of 0/1, numpy arrays, lists of '0'/'1' strings, or another
    BitMatrix. An empty row list needs ``cols`` to fix the width.

    Example:
        >>> m = BitMatrix(["110", "011"])
        >>> m.rank()
        2
        >>> (m @ m.T).to_strings()
        ['01', '10']
    """

    __slots__ = ("_data",)

    def __init__(self, data: MatrixLike = (), cols: Optional[int] = None):
        if isinstance(data, BitMatrix):
            array = data._data.copy()
        elif isinstance(data, np.ndarray):
            array = np.array(data, dtype=np.uint8)
            if array.ndim == 1:
                array = array.reshape(1, -1)
        else:
            rows = list(data)
            if not rows:
                array = np.zeros((0, cols or 0), dtype=np.uint8)
            elif isinstance(rows[0], str):
                array = np.array([[int(ch) for ch in row.strip()] for row in rows], dtype=np.uint8)
            else:
                array = np.array(rows, dtype=np.uint8)
                if array.ndim == 1:
                    array = array.reshape(1, -1)
        if array.ndim != 2:
            raise ValueError(f"BitMatrix needs 2-D data, got shape {array.shape}")
        if cols is not None and array.shape[0] and array.shape[1] != cols:
            raise ValueError(f"Expected {cols} columns, got {array.shape[1]}")
        array &= 1
        array.flags.writeable = False
        self._data = array

    # ==================== Construction ====================

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'BitMatrix':
        """All-zero matrix."""
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> 'BitMatrix':
        """n×n identity."""
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_ints(cls, rows: Iterable[int], cols: int) -> 'BitMatrix':
        """Build from packed rows (bit j of each integer is column j)."""
        rows = list(rows)
        array = np.zeros((len(rows), cols), dtype=np.uint8)
        for i, value in enumerate(rows):
            for j in range(cols):
                if value >> j & 1:
                    array[i, j] = 1
        return cls(array)

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> 'BitMatrix':
        """
        Permutation matrix P with P[i, perm[i]] = 1, so that a row vector v maps to vP
        and entry i of v lands at position perm[i].
        """
        n = len(perm)
        array = np.zeros((n, n), dtype=np.uint8)
        array[np.arange(n), list(perm)] = 1
        return cls(array)

    @classmethod
    def random(cls, rows: int, cols: int, rng: Optional[np.random.Generator] = None) -> 'BitMatrix':
        """Uniformly random matrix."""
        rng = rng or np.random.default_rng()
        return cls(rng.integers(0, 2, size=(rows, cols), dtype=np.uint8))

    @staticmethod
    def hstack(*blocks: 'BitMatrix') -> 'BitMatrix':
        """Horizontal concatenation."""
        return BitMatrix(np.hstack([b._data for b in blocks]))

    @staticmethod
    def vstack(*blocks: 'BitMatrix') -> 'BitMatrix':
        """Vertical concatenation (zero-row blocks allowed)."""
        cols = max((b.cols for b in blocks), default=0)
        parts = [b._data if b.rows else np.zeros((0, cols), dtype=np.uint8) for b in blocks]
        return BitMatrix(np.vstack(parts) if parts else np.zeros((0, 0), dtype=np.uint8))

    @staticmethod
    def block(grid: Sequence[Sequence['BitMatrix']]) -> 'BitMatrix':
        """Assemble a block matrix from a grid of conforming blocks."""
        return BitMatrix.vstack(*[BitMatrix.hstack(*row) for row in grid])

    # ==================== Properties ====================

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._data.shape

    @property
    def data(self) -> np.ndarray:
        """Read-only uint8 view of the entries."""
        return self._data

    @property
    def T(self) -> 'BitMatrix':
        return BitMatrix(self._data.T.copy())

    # ==================== Arithmetic ====================

    def __matmul__(self, other: Union['BitMatrix', np.ndarray]) -> Union['BitMatrix', np.ndarray]:
        if isinstance(other, BitMatrix):
            if self.cols != other.rows:
                raise ValueError(f"Shape mismatch for product: {self.shape} @ {other.shape}")
            product = self._data.astype(np.int64) @ other._data.astype(np.int64)
            return BitMatrix((product & 1).astype(np.uint8))
        vector = np.asarray(other, dtype=np.int64)
        return ((self._data.astype(np.int64) @ vector) & 1).astype(np.uint8)

    def __add__(self, other: 'BitMatrix') -> 'BitMatrix':
        if self.shape != other.shape:
            raise ValueError(f"Shape mismatch for sum: {self.shape} + {other.shape}")
        return BitMatrix(self._data ^ other._data)

    __xor__ = __add__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    def __hash__(self) -> int:
        return hash((self.shape, self._data.tobytes()))

    def __getitem__(self, key):
        item = self._data[key]
        if isinstance(item, np.ndarray) and item.ndim == 2:
            return BitMatrix(item.copy())
        if isinstance(item, np.ndarray):
            return item.copy()
        return int(item)

    def __len__(self) -> int:
        return self.rows

    def __repr__(self) -> str:
        return f"BitMatrix({self.to_strings()!r}, cols={self.cols})"

    def __str__(self) -> str:
        return "\n".join(self.to_strings())

    # ==================== Conversions ====================

    def row_ints(self) -> List[int]:
        """Rows packed as integers, bit j = column j."""
        weights = 1 << np.arange(self.cols, dtype=object)
        return [int(sum(weights[row.astype(bool)])) for row in self._data]

    def to_strings(self) -> List[str]:
        """Rows as '0'/'1' strings."""
        return ["".join(str(int(b)) for b in row) for row in self._data]

    def to_list(self) -> List[List[int]]:
        return self._data.astype(int).tolist()

    def copy(self) -> 'BitMatrix':
        return BitMatrix(self)

    # ==================== Queries ====================

    def is_zero(self) -> bool:
        return not self._data.any()

    def is_identity(self) -> bool:
        return self.rows == self.cols and bool(np.array_equal(self._data, np.eye(self.rows, dtype=np.uint8)))

    def row_weights(self) -> List[int]:
        return [int(w) for w in self._data.sum(axis=1)]

    def rank(self) -> int:
        return rank(self)

    def rref(self) -> Tuple['BitMatrix', List[int]]:
        return rref(self)

    def kernel(self) -> 'BitMatrix':
        return kernel(self)

    def inverse(self) -> 'BitMatrix':
        return inverse(self)

    def permute_columns(self, perm: Sequence[int]) -> 'BitMatrix':
        """Column i moves to position perm[i]."""
        out = np.zeros_like(self._data)
        out[:, list(perm)] = self._data
        return BitMatrix(out)


# ==================== Packed-row helpers ====================

def popcount(value: int) -> int:
    """Number of set bits."""
    return bin(value).count("1")


def reduce_against(value: int, basis: Dict[int, int]) -> int:
    """Reduce a packed vector against a basis keyed by leading (highest) bit."""
    while value:
        top = value.bit_length() - 1
        pivot = basis.get(top)
        if pivot is None:
            return value
        value ^= pivot
    return 0


def insert_into_basis(value: int, basis: Dict[int, int]) -> bool:
    """Add a vector to a leading-bit basis; False if it was already in the span."""
    value = reduce_against(value, basis)
    if not value:
        return False
    basis[value.bit_length() - 1] = value
    return True


def span_basis(rows: Iterable[int]) -> Dict[int, int]:
    """Leading-bit basis of the span of packed rows."""
    basis: Dict[int, int] = {}
    for row in rows:
        insert_into_basis(row, basis)
    return basis


def rank_ints(rows: Iterable[int]) -> int:
    return len(span_basis(rows))


def rref_ints(rows: Sequence[int], ncols: int) -> Tuple[List[int], List[int]]:
    """
    Reduced row-echelon form of packed rows.

    Pivots are taken leftmost column first, topmost available row first; zero rows are
    dropped.

    Returns:
        (reduced rows, pivot columns)
    """
    work = list(rows)
    pivots: List[int] = []
    top = 0
    for col in range(ncols):
        bit = 1 << col
        pivot_row = next((i for i in range(top, len(work)) if work[i] & bit), None)
        if pivot_row is None:
            continue
        work[top], work[pivot_row] = work[pivot_row], work[top]
        for i in range(len(work)):
            if i != top and work[i] & bit:
                work[i] ^= work[top]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def solve_in_span(target: int, rows: Sequence[int]) -> Optional[List[int]]:
    """
    Express a packed vector as a sum of the given rows.

    Returns:
        Indices of rows summing to target, or None if target is outside the span
    """
    basis: Dict[int, Tuple[int, int]] = {}
    for index, row in enumerate(rows):
        value, combo = row, 1 << index
        while value:
            top = value.bit_length() - 1
            if top not in basis:
                basis[top] = (value, combo)
                break
            value ^= basis[top][0]
            combo ^= basis[top][1]
    value, combo = target, 0
    while value:
        top = value.bit_length() - 1
        if top not in basis:
            return None
        value ^= basis[top][0]
        combo ^= basis[top][1]
    return [i for i in range(len(rows)) if combo >> i & 1]


# ==================== Core operations ====================

def rank(m: BitMatrix) -> int:
    """
    Dimension of the row space of m over F2.

    Example:
        >>> rank(BitMatrix([[1, 1], [1, 1]]))
        1
    """
    return rank_ints(m.row_ints())


def rref(m: BitMatrix) -> Tuple[BitMatrix, List[int]]:
    """
    Reduced row-echelon form with zero rows dropped.

    Returns:
        (BitMatrix, pivot column list), pivots strictly increasing
    """
    rows, pivots = rref_ints(m.row_ints(), m.cols)
    return BitMatrix.from_ints(rows, m.cols), pivots


def kernel(m: BitMatrix) -> BitMatrix:
    """
    Basis of {v : m·vᵀ = 0}, one free column per basis row.

    Example:
        >>> kernel(BitMatrix([[1, 1]])).to_strings()
        ['11']
    """
    rows, pivots = rref_ints(m.row_ints(), m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vector = 1 << free
        for row, pivot in zip(rows, pivots):
            if row >> free & 1:
                vector |= 1 << pivot
        basis.append(vector)
    return BitMatrix.from_ints(basis, m.cols)


def inverse(m: BitMatrix) -> BitMatrix:
    """
    Inverse of a square invertible matrix.

    Raises:
        ValueError: If m is not square or singular
    """
    n = m.rows
    if m.cols != n:
        raise ValueError(f"Cannot invert non-square matrix of shape {m.shape}")
    augmented = [row | (1 << (n + i)) for i, row in enumerate(m.row_ints())]
    rows, pivots = rref_ints(augmented, 2 * n)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ValueError("Matrix is singular")
    return BitMatrix.from_ints([row >> n for row in rows], n)


def is_invertible(m: BitMatrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def row_basis(m: BitMatrix) -> BitMatrix:
    """Independent rows spanning the row space (in rref)."""
    return rref(m)[0]


def row_span_equal(a: BitMatrix, b: BitMatrix) -> bool:
    """True iff a and b have the same row space."""
    if a.cols != b.cols:
        return False
    ra, rb = rank(a), rank(b)
    return ra == rb and rank(BitMatrix.vstack(a, b)) == ra


def in_row_span(v: Union[np.ndarray, Sequence[int]], m: BitMatrix) -> bool:
    """True iff vector v lies in the row space of m."""
    packed = BitMatrix(np.asarray(v, dtype=np.uint8).reshape(1, -1)).row_ints()[0]
    return reduce_against(packed, span_basis(m.row_ints())) == 0


# ==================== Symplectic structure ====================

def symplectic_form(n: int) -> BitMatrix:
    """The 2n×2n form Ω = [[0, I], [I, 0]]."""
    zero, eye = BitMatrix.zeros(n, n), BitMatrix.identity(n)
    return BitMatrix.block([[zero, eye], [eye, zero]])


def symplectic_product(u: Sequence[int], v: Sequence[int]) -> int:
    """
    x_u·z_v + x_v·z_u mod 2; 0 iff the Pauli operators commute.

    Raises:
        ValueError: If lengths differ or are odd
    """
    u = np.asarray(u, dtype=np.int64).ravel()
    v = np.asarray(v, dtype=np.int64).ravel()
    if u.shape != v.shape or u.size % 2:
        raise ValueError(f"Symplectic vectors need equal even lengths, got {u.size} and {v.size}")
    n = u.size // 2
    return int((u[:n] @ v[n:] + v[:n] @ u[n:]) & 1)


def symplectic_gram(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix of pairwise symplectic products a Ω bᵀ."""
    n = a.cols // 2
    return a @ symplectic_form(n) @ b.T


def is_symplectic(f: BitMatrix) -> bool:
    """True iff Fᵀ Ω F = Ω."""
    if f.rows != f.cols or f.rows % 2:
        return False
    omega = symplectic_form(f.rows // 2)
    return f.T @ omega @ f == omega


# ==================== Standard form ====================

@dataclass(frozen=True)
class StandardForm:
    """
    Stabilizer standard form in permuted coordinates.

    H = [[I A1 A2 | B 0 C], [0 0 0 | D I E]] where the first block has r rows and the
    second t rows. Column j of the permuted layout is original qubit perm[j].
    """
    n: int
    r: int
    t: int
    a1: BitMatrix
    a2: BitMatrix
    b: BitMatrix
    c: BitMatrix
    d: BitMatrix
    e: BitMatrix
    perm: Tuple[int, ...]

    @property
    def k(self) -> int:
        return self.n - self.r - self.t

    def _unpermute(self, m: BitMatrix) -> BitMatrix:
        n = self.n
        x, z = m.data[:, :n], m.data[:, n:]
        out = np.zeros_like(m.data)
        out[:, list(self.perm)] = x
        out[:, [n + p for p in self.perm]] = z
        return BitMatrix(out)

    def stabilizer_matrix(self) -> BitMatrix:
        """Assembled standard-form H in original qubit order."""
        r, t, k = self.r, self.t, self.k
        top = BitMatrix.hstack(BitMatrix.identity(r), self.a1, self.a2,
                               self.b, BitMatrix.zeros(r, t), self.c)
        bottom = BitMatrix.hstack(BitMatrix.zeros(t, self.n),
                                  self.d, BitMatrix.identity(t), self.e)
        return self._unpermute(BitMatrix.vstack(top, bottom))

    def logicals(self) -> Tuple[BitMatrix, BitMatrix]:
        """
        Logical operators as k×2n symplectic rows, X̄ then Z̄.

        X̄ = (0 Eᵀ I | Cᵀ 0 0), Z̄ = (0 0 0 | A2ᵀ 0 I).
        """
        r, t, k = self.r, self.t, self.k
        lx = BitMatrix.hstack(BitMatrix.zeros(k, r), self.e.T, BitMatrix.identity(k),
                              self.c.T, BitMatrix.zeros(k, t), BitMatrix.zeros(k, k))
        lz = BitMatrix.hstack(BitMatrix.zeros(k, self.n),
                              self.a2.T, BitMatrix.zeros(k, t), BitMatrix.identity(k))
        return self._unpermute(lx), self._unpermute(lz)

    def css_logicals(self) -> Tuple[BitMatrix, BitMatrix]:
        """(Lx, Lz) as k×n matrices; only meaningful when B = C = 0."""
        lx, lz = self.logicals()
        return lx[:, :self.n], lz[:, self.n:]


def standard_form(h: BitMatrix, css: bool = False) -> StandardForm:
    """
    Gottesman standard form of a full-rank commuting stabilizer matrix.

    Args:
        h: r×2n stabilizer matrix (x|z)
        css: Require every row to be pure X or pure Z (then B = C = 0)

    Returns:
        StandardForm with the column permutation recorded

    Raises:
        ValueError: On rank deficiency, non-commuting rows, or mixed rows with css=True

    Example:
        >>> sf = standard_form(BitMatrix(["11110000", "00001111"]), css=True)
        >>> sf.r, sf.k
        (1, 2)
    """
    if h.cols % 2:
        raise ValueError(f"Stabilizer matrix needs an even column count, got {h.cols}")
    n = h.cols // 2
    rows = h.rows
    if rows and rank(h) < rows:
        raise ValueError("Stabilizer matrix is rank deficient")
    x = h.data[:, :n].astype(np.uint8).copy()
    z = h.data[:, n:].astype(np.uint8).copy()
    if css and rows and np.any(x.any(axis=1) & z.any(axis=1)):
        raise ValueError("CSS standard form requested for a matrix with mixed rows")
    perm = list(range(n))

    def swap_columns(i: int, j: int) -> None:
        if i != j:
            x[:, [i, j]] = x[:, [j, i]]
            z[:, [i, j]] = z[:, [j, i]]
            perm[i], perm[j] = perm[j], perm[i]

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            x[[i, j]] = x[[j, i]]
            z[[i, j]] = z[[j, i]]

    def pivot_on(block: np.ndarray, row_from: int, col_from: int) -> Optional[Tuple[int, int]]:
        for col in range(col_from, n):
            hits = np.nonzero(block[row_from:, col])[0]
            if hits.size:
                return row_from + int(hits[0]), col
        return None

    # X block: [I A1 A2]
    r = 0
    while r < rows:
        found = pivot_on(x, r, r)
        if found is None:
            break
        pr, pc = found
        swap_columns(r, pc)
        swap_rows(r, pr)
        for i in range(rows):
            if i != r and x[i, r]:
                x[i] ^= x[r]
                z[i] ^= z[r]
        r += 1

    # Z block of the X-free rows: [D I E], also clearing those columns in the top rows
    t = 0
    while r + t < rows:
        found = pivot_on(z, r + t, r + t)
        if found is None:
            raise ValueError("Stabilizer rows do not commute")
        pr, pc = found
        swap_columns(r + t, pc)
        swap_rows(r + t, pr)
        for i in range(rows):
            if i != r + t and z[i, r + t]:
                x[i] ^= x[r + t]
                z[i] ^= z[r + t]
        t += 1

    k = n - r - t
    sf = StandardForm(
        n=n, r=r, t=t,
        a1=BitMatrix(x[:r, r:r + t]) if r else BitMatrix.zeros(0, t),
        a2=BitMatrix(x[:r, r + t:]) if r else BitMatrix.zeros(0, k),
        b=BitMatrix(z[:r, :r]) if r else BitMatrix.zeros(0, 0),
        c=BitMatrix(z[:r, r + t:]) if r else BitMatrix.zeros(0, k),
        d=BitMatrix(z[r:, :r]) if t else BitMatrix.zeros(0, r),
        e=BitMatrix(z[r:, r + t:]) if t else BitMatrix.zeros(0, k),
        perm=tuple(perm),
    )
    logger.debug(f"Standard form: n={n}, r={r}, t={t}, k={k}")
    return sf


# ==================== Block decompositions ====================

class PLDU(NamedTuple):
    """Factors of X = P·[[I,0],[L,I]]·diag(C1,C2)·[[I,U],[0,I]]."""
    p: BitMatrix
    l: BitMatrix
    c1: BitMatrix
    c2: BitMatrix
    u: BitMatrix

    def product(self) -> BitMatrix:
        m = self.c1.rows
        eye, zero = BitMatrix.identity(m), BitMatrix.zeros(m, m)
        lower = BitMatrix.block([[eye, zero], [self.l, eye]])
        middle = BitMatrix.block([[self.c1, zero], [zero, self.c2]])
        upper = BitMatrix.block([[eye, self.u], [zero, eye]])
        return self.p @ lower @ middle @ upper


def block_pldu(x: BitMatrix, m: int) -> PLDU:
    """
    Block-PLDU decomposition of an invertible 2m×2m matrix.

    The row permutation brings the topmost rows whose leading-m parts are independent
    to the top, keeping the relative order of the rest.

    Raises:
        ValueError: If x is singular or not 2m×2m
    """
    if x.shape != (2 * m, 2 * m):
        raise ValueError(f"Expected a {2 * m}x{2 * m} matrix, got {x.shape}")
    if not is_invertible(x):
        raise ValueError("block_pldu needs an invertible matrix")

    leading = x[:, :m].row_ints() if m else [0] * (2 * m)
    basis: Dict[int, int] = {}
    chosen: List[int] = []
    for index, row in enumerate(leading):
        if len(chosen) == m:
            break
        if insert_into_basis(row, basis):
            chosen.append(index)
    rest = [i for i in range(2 * m) if i not in chosen]
    order = chosen + rest

    p_array = np.zeros((2 * m, 2 * m), dtype=np.uint8)
    for i, source in enumerate(order):
        p_array[source, i] = 1
    p = BitMatrix(p_array)
    y = BitMatrix(x.data[order])

    a, b = y[:m, :m], y[:m, m:]
    c, d = y[m:, :m], y[m:, m:]
    a_inv = inverse(a)
    l = c @ a_inv
    u = a_inv @ b
    schur = d + c @ a_inv @ b
    return PLDU(p=p, l=l, c1=a, c2=schur, u=u)


def _gl_rows_desc(k: int) -> List[int]:
    """Row bit patterns in descending row-major string order (column 0 most significant)."""
    def key(value: int) -> str:
        return "".join(str(value >> j & 1) for j in range(k))
    return sorted(range(1, 1 << k), key=key, reverse=True)


def gl_sum_split(u: BitMatrix) -> Tuple[BitMatrix, BitMatrix]:
    """
    Write U as a sum of two invertible matrices.

    The identity is tried first, then GL(k,F2) is scanned in descending row-major
    order, so the witness pair is reproducible.

    Raises:
        ValueError: If k = 1 and U = [1], or U is not square

    Example:
        >>> gl_sum_split(BitMatrix([[1, 0], [0, 0]]))[0].to_strings()
        ['11', '10']
    """
    k = u.rows
    if u.cols != k:
        raise ValueError(f"gl_sum_split needs a square matrix, got {u.shape}")
    eye = BitMatrix.identity(k)
    if k == 0:
        return eye, eye
    if is_invertible(u + eye):
        return eye, u + eye

    target = u.row_ints()
    candidates = _gl_rows_desc(k)

    def extend(depth: int, rows: List[int], basis1: Dict[int, int], basis2: Dict[int, int]):
        if depth == k:
            return list(rows)
        for row in candidates:
            if reduce_against(row, basis1) == 0:
                continue
            other = row ^ target[depth]
            if reduce_against(other, basis2) == 0:
                continue
            next1, next2 = dict(basis1), dict(basis2)
            insert_into_basis(row, next1)
            insert_into_basis(other, next2)
            rows.append(row)
            found = extend(depth + 1, rows, next1, next2)
            if found is not None:
                return found
            rows.pop()
        return None

    found = extend(0, [], {}, {})
    if found is None:
        raise ValueError("Matrix does not split as a sum of two invertible matrices")
    u1 = BitMatrix.from_ints(found, k)
    return u1, u1 + u


# ==================== Group helpers ====================

def iter_gl(k: int) -> Iterator[BitMatrix]:
    """All invertible k×k matrices, rows chosen in increasing packed order."""
    def extend(rows: List[int], basis: Dict[int, int]):
        if len(rows) == k:
            yield BitMatrix.from_ints(rows, k)
            return
        for row in range(1, 1 << k):
            if reduce_against(row, basis):
                next_basis = dict(basis)
                insert_into_basis(row, next_basis)
                rows.append(row)
                yield from extend(rows, next_basis)
                rows.pop()
    yield from extend([], {})


def gl_order(k: int) -> int:
    """|GL(k, F2)|."""
    order = 1
    for i in range(k):
        order *= (1 << k) - (1 << i)
    return order


def elementary(k: int, row: int, col: int) -> BitMatrix:
    """I + E_{row,col}."""
    array = np.eye(k, dtype=np.uint8)
    array[row, col] ^= 1
    return BitMatrix(array)


def random_invertible(k: int, rng: Optional[np.random.Generator] = None) -> BitMatrix:
    """Uniform element of GL(k, F2) by rejection sampling."""
    rng = rng or np.random.default_rng()
    while True:
        candidate = BitMatrix.random(k, k, rng)
        if is_invertible(candidate):
            return candidate
