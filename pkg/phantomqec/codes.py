"""
Phantom QEC Toolkit - Codes Module

Pauli operators, CSS and general stabilizer codes, logical bases, exact distances,
logical-class weight enumeration, and the phantom Hamming bound B(n, d).
"""

from mylogger import logger
from functools import lru_cache
from itertools import combinations, product
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union
import re
import numpy as np

from .config import CutoffExceeded, QecConfig, default_config
from .enums import Sector
from .f2linalg import (
    BitMatrix,
    insert_into_basis,
    rank,
    row_basis,
    standard_form,
    symplectic_form,
)


logger.info("Loading codes module")


# ==================== Pauli operators ====================

class WeightVector(NamedTuple):
    """Counts of pure X, pure Z and Y positions of a Pauli operator."""
    wx: int
    wz: int
    wy: int

    @property
    def total(self) -> int:
        return self.wx + self.wz + self.wy

    @property
    def key(self) -> str:
        """Report key 'wx,wz,wy'."""
        return f"{self.wx},{self.wz},{self.wy}"


class PauliOp:
    """
    n-qubit Pauli operator i^phase · X^x Z^z.

    With this ordering Y = iXZ, so a 'Y' in a string contributes one power of i.

    Example:
        >>> p = PauliOp.from_string("XYZI")
        >>> p.weight_vector()
        WeightVector(wx=1, wz=1, wy=1)
        >>> str(p * p)
        '+IIII'
    """

    __slots__ = ("x", "z", "phase")

    def __init__(self, x: Sequence[int], z: Sequence[int], phase: int = 0):
        self.x = np.asarray(x, dtype=np.uint8) & 1
        self.z = np.asarray(z, dtype=np.uint8) & 1
        if self.x.shape != self.z.shape:
            raise ValueError("x and z parts must have equal length")
        self.phase = int(phase) % 4

    @property
    def n(self) -> int:
        return int(self.x.size)

    @classmethod
    def identity(cls, n: int) -> 'PauliOp':
        return cls(np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8))

    @classmethod
    def from_string(cls, text: str) -> 'PauliOp':
        """
        Parse '+XYZ', '-iZZ', 'IX' style strings.

        Raises:
            ValueError: On unknown characters
        """
        match = re.fullmatch(r"\s*([+-]?)(i?)([IXYZ]*)\s*", text)
        if match is None:
            raise ValueError(f"Cannot parse Pauli string: {text!r}")
        sign, imag, body = match.groups()
        phase = (2 if sign == "-" else 0) + (1 if imag else 0)
        x = [1 if ch in "XY" else 0 for ch in body]
        z = [1 if ch in "ZY" else 0 for ch in body]
        phase += body.count("Y")
        return cls(x, z, phase)

    @classmethod
    def from_symplectic(cls, vector: Sequence[int], phase: int = 0) -> 'PauliOp':
        vector = np.asarray(vector, dtype=np.uint8).ravel()
        n = vector.size // 2
        return cls(vector[:n], vector[n:], phase)

    @classmethod
    def hermitian(cls, vector: Sequence[int]) -> 'PauliOp':
        """+1-signed Hermitian operator for a symplectic vector (each Y counts one power of i)."""
        vector = np.asarray(vector, dtype=np.uint8).ravel()
        n = vector.size // 2
        return cls(vector[:n], vector[n:], int(np.sum(vector[:n] & vector[n:])))

    def to_symplectic(self) -> np.ndarray:
        return np.concatenate([self.x, self.z])

    def __str__(self) -> str:
        ys = int(np.sum(self.x & self.z))
        shown = (self.phase - ys) % 4
        prefix = {0: "+", 1: "+i", 2: "-", 3: "-i"}[shown]
        letters = "".join("IXZY"[int(a) + 2 * int(b)] for a, b in zip(self.x, self.z))
        return prefix + letters

    def __repr__(self) -> str:
        return f"PauliOp({str(self)!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliOp):
            return NotImplemented
        return (self.phase == other.phase and np.array_equal(self.x, other.x)
                and np.array_equal(self.z, other.z))

    def __hash__(self) -> int:
        return hash((self.phase, self.x.tobytes(), self.z.tobytes()))

    def __mul__(self, other: 'PauliOp') -> 'PauliOp':
        if self.n != other.n:
            raise ValueError("Pauli operators act on different qubit counts")
        swap_sign = 2 * int(np.dot(self.z.astype(int), other.x.astype(int)) & 1)
        return PauliOp(self.x ^ other.x, self.z ^ other.z, self.phase + other.phase + swap_sign)

    def commutes_with(self, other: 'PauliOp') -> bool:
        anti = int(np.dot(self.x.astype(int), other.z.astype(int))
                   + np.dot(self.z.astype(int), other.x.astype(int))) & 1
        return anti == 0

    @property
    def weight(self) -> int:
        return int(np.sum(self.x | self.z))

    def weight_vector(self) -> WeightVector:
        return WeightVector(int(np.sum(self.x & (1 - self.z))),
                            int(np.sum(self.z & (1 - self.x))),
                            int(np.sum(self.x & self.z)))

    def sign_free(self) -> 'PauliOp':
        """The same operator with its displayed sign set to +."""
        return PauliOp(self.x, self.z, int(np.sum(self.x & self.z)))


# ==================== Code types ====================

def _as_matrix(value: Any, n: Optional[int]) -> Optional[BitMatrix]:
    if value is None:
        return None
    if isinstance(value, BitMatrix):
        return value
    return BitMatrix(value, cols=n)


class CssCode:
    """
    CSS stabilizer code given by X and Z check matrices and an optional logical basis.

    Args:
        hx: r_x×n X-stabilizer matrix
        hz: r_z×n Z-stabilizer matrix
        lx: optional k×n X-logicals
        lz: optional k×n Z-logicals, paired so that Lx·Lzᵀ = I
        name: Display name
        metadata: Free-form dict (family, parameters, distances, ...)

    Raises:
        ValueError: If the stabilizers do not commute or the logical basis is invalid

    Example:
        >>> code = CssCode(["1111"], ["1111"], name="[[4,2,2]]")
        >>> code.n, code.k
        (4, 2)
    """

    def __init__(self, hx: Any, hz: Any, lx: Any = None, lz: Any = None,
                 name: str = "", metadata: Optional[Dict[str, Any]] = None):
        hx_m = _as_matrix(hx, None)
        n = hx_m.cols if hx_m.rows or hx_m.cols else None
        hz_m = _as_matrix(hz, n)
        if n is None:
            n = hz_m.cols
        if hx_m.rows == 0:
            hx_m = BitMatrix.zeros(0, n)
        if hz_m.rows == 0:
            hz_m = BitMatrix.zeros(0, n)
        if hx_m.cols != hz_m.cols:
            raise ValueError(f"Hx has {hx_m.cols} columns but Hz has {hz_m.cols}")
        self.hx: BitMatrix = hx_m
        self.hz: BitMatrix = hz_m
        self.name: str = name
        self.metadata: Dict[str, Any] = dict(metadata or {})
        self._rx = rank(hx_m)
        self._rz = rank(hz_m)

        if not (hx_m @ hz_m.T).is_zero():
            raise ValueError("X and Z stabilizers do not commute (Hx·Hzᵀ ≠ 0)")

        self._lx: Optional[BitMatrix] = None
        self._lz: Optional[BitMatrix] = None
        if lx is not None or lz is not None:
            if lx is None or lz is None:
                raise ValueError("Both Lx and Lz must be given")
            self._set_logicals(_as_matrix(lx, n), _as_matrix(lz, n))

    def _set_logicals(self, lx: BitMatrix, lz: BitMatrix) -> None:
        k = self.k
        if lx.rows != k or lz.rows != k:
            raise ValueError(f"Logical basis has {lx.rows}/{lz.rows} rows, expected k={k}")
        if k:
            if lx.cols != self.n or lz.cols != self.n:
                raise ValueError("Logical basis width does not match n")
            if not (lx @ lz.T).is_identity():
                raise ValueError("Logical basis is not symplectic (Lx·Lzᵀ ≠ I)")
            if self.hz.rows and not (lx @ self.hz.T).is_zero():
                raise ValueError("X-logicals do not commute with Z-stabilizers")
            if self.hx.rows and not (lz @ self.hx.T).is_zero():
                raise ValueError("Z-logicals do not commute with X-stabilizers")
        self._lx, self._lz = lx, lz

    # ==================== Properties ====================

    @property
    def n(self) -> int:
        return self.hx.cols

    @property
    def rx(self) -> int:
        return self._rx

    @property
    def rz(self) -> int:
        return self._rz

    @property
    def k(self) -> int:
        return self.n - self._rx - self._rz

    @property
    def has_logicals(self) -> bool:
        return self._lx is not None

    @property
    def lx(self) -> BitMatrix:
        if self._lx is None:
            self._set_logicals(*logical_basis_css(self.hx, self.hz))
        return self._lx

    @property
    def lz(self) -> BitMatrix:
        if self._lz is None:
            self._set_logicals(*logical_basis_css(self.hx, self.hz))
        return self._lz

    def check_matrix(self, sector: Sector) -> BitMatrix:
        return self.hx if sector is Sector.X else self.hz

    def logical_matrix(self, sector: Sector) -> BitMatrix:
        return self.lx if sector is Sector.X else self.lz

    def parameters(self) -> str:
        """'[[n,k]]' or '[[n,k,(dx,dz)]]' when distances are recorded in metadata."""
        dx, dz = self.metadata.get("dx"), self.metadata.get("dz")
        if dx is None or dz is None:
            return f"[[{self.n},{self.k}]]"
        if dx == dz:
            return f"[[{self.n},{self.k},{dx}]]"
        return f"[[{self.n},{self.k},({dx},{dz})]]"

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"CssCode({self.parameters()}{label}, rx={self.rx}, rz={self.rz})"

    # ==================== Transformations ====================

    def with_logicals(self, lx: Optional[BitMatrix] = None, lz: Optional[BitMatrix] = None) -> 'CssCode':
        """Copy with the given (or the computed) logical basis."""
        if lx is None or lz is None:
            lx, lz = self.lx, self.lz
        return CssCode(self.hx, self.hz, lx, lz, self.name, self.metadata)

    def permute(self, perm: Sequence[int]) -> 'CssCode':
        """Qubit permutation: qubit i moves to perm[i]."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("Not a permutation of the qubits")
        lx = self._lx.permute_columns(perm) if self._lx is not None else None
        lz = self._lz.permute_columns(perm) if self._lz is not None else None
        return CssCode(self.hx.permute_columns(perm), self.hz.permute_columns(perm), lx, lz,
                       self.name, self.metadata)

    def hadamard_dual(self) -> 'CssCode':
        return hadamard_dual(self)

    def to_stabilizer(self) -> 'StabilizerCode':
        return StabilizerCode.from_css(self)

    def stabilizer_generators(self) -> List[PauliOp]:
        """Independent stabilizer generators as Pauli operators (X rows then Z rows)."""
        n = self.n
        zeros = np.zeros(n, dtype=np.uint8)
        gens = [PauliOp(row, zeros) for row in row_basis(self.hx).data]
        gens += [PauliOp(zeros, row) for row in row_basis(self.hz).data]
        return gens

    # ==================== Serialization ====================

    def to_dict(self, include_logicals: bool = True) -> Dict[str, Any]:
        """Code JSON object."""
        payload: Dict[str, Any] = {
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "hx": self.hx.to_strings(),
            "hz": self.hz.to_strings(),
            "metadata": dict(self.metadata),
        }
        if include_logicals and self.k:
            payload["lx"] = self.lx.to_strings()
            payload["lz"] = self.lz.to_strings()
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> 'CssCode':
        """
        Parse a code JSON object.

        Raises:
            ValueError: On missing fields, width or k mismatches, or commutation violations
        """
        if "hx" not in payload or "hz" not in payload:
            raise ValueError("Code JSON needs 'hx' and 'hz'")
        n = payload.get("n")
        hx = BitMatrix(payload["hx"], cols=n)
        hz = BitMatrix(payload["hz"], cols=n)
        if n is not None:
            hx = hx if hx.rows else BitMatrix.zeros(0, n)
            hz = hz if hz.rows else BitMatrix.zeros(0, n)
            if hx.cols != n or hz.cols != n:
                raise ValueError(f"Check matrices do not have n={n} columns")
        lx = payload.get("lx") or None
        lz = payload.get("lz") or None
        code = cls(hx, hz, lx, lz, payload.get("name", ""), payload.get("metadata"))
        if "k" in payload and payload["k"] != code.k:
            raise ValueError(f"Declared k={payload['k']} but matrices give k={code.k}")
        return code


class StabilizerCode:
    """
    General stabilizer code from an r×2n symplectic check matrix H = (H_X | H_Z).

    The optional logical basis Q is 2k×2n: k X̄ rows followed by the k paired Z̄ rows.

    Raises:
        ValueError: If stabilizers do not commute or Q is not a symplectic basis
    """

    def __init__(self, h: Any, q: Any = None, name: str = "",
                 metadata: Optional[Dict[str, Any]] = None):
        self.h: BitMatrix = _as_matrix(h, None)
        if self.h.cols % 2:
            raise ValueError("Stabilizer matrix needs 2n columns")
        self.name = name
        self.metadata: Dict[str, Any] = dict(metadata or {})
        self._r = rank(self.h)
        if self.h.rows and not (self.h @ symplectic_form(self.n) @ self.h.T).is_zero():
            raise ValueError("Stabilizers do not commute (HΩHᵀ ≠ 0)")
        self._q: Optional[BitMatrix] = None
        if q is not None:
            self._set_logicals(_as_matrix(q, 2 * self.n))

    def _set_logicals(self, q: BitMatrix) -> None:
        k = self.k
        if q.rows != 2 * k:
            raise ValueError(f"Logical basis needs {2 * k} rows, got {q.rows}")
        if k:
            omega = symplectic_form(self.n)
            if not (q @ omega @ q.T) == symplectic_form(k):
                raise ValueError("Logical basis is not symplectic")
            if self.h.rows and not (self.h @ omega @ q.T).is_zero():
                raise ValueError("Logical basis does not commute with the stabilizers")
        self._q = q

    @property
    def n(self) -> int:
        return self.h.cols // 2

    @property
    def k(self) -> int:
        return self.n - self._r

    @property
    def q(self) -> BitMatrix:
        if self._q is None:
            self._set_logicals(logical_basis_stabilizer(self.h))
        return self._q

    @classmethod
    def from_css(cls, code: CssCode) -> 'StabilizerCode':
        n = code.n
        h = BitMatrix.vstack(
            BitMatrix.hstack(row_basis(code.hx), BitMatrix.zeros(rank(code.hx), n)),
            BitMatrix.hstack(BitMatrix.zeros(rank(code.hz), n), row_basis(code.hz)),
        )
        q = None
        if code.k:
            k = code.k
            q = BitMatrix.vstack(
                BitMatrix.hstack(code.lx, BitMatrix.zeros(k, n)),
                BitMatrix.hstack(BitMatrix.zeros(k, n), code.lz),
            )
        return cls(h, q, code.name, code.metadata)

    def stabilizer_generators(self) -> List[PauliOp]:
        """Independent rows of h, in order, as +1-signed Hermitian Paulis."""
        basis: Dict[int, int] = {}
        rows = self.h.row_ints()
        return [PauliOp.hermitian(self.h.data[i]) for i, row in enumerate(rows) if insert_into_basis(row, basis)]

    def to_dict(self) -> Dict[str, Any]:
        payload = {"name": self.name, "n": self.n, "k": self.k,
                   "h": self.h.to_strings(), "metadata": dict(self.metadata)}
        if self.k:
            payload["q"] = self.q.to_strings()
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> 'StabilizerCode':
        if "h" not in payload:
            raise ValueError("Stabilizer code JSON needs 'h'")
        return cls(payload["h"], payload.get("q"), payload.get("name", ""), payload.get("metadata"))

    def __repr__(self) -> str:
        return f"StabilizerCode([[{self.n},{self.k}]] {self.name})"


# ==================== Logical bases ====================

def logical_basis_css(hx: BitMatrix, hz: BitMatrix) -> Tuple[BitMatrix, BitMatrix]:
    """
    CSS logical basis from the standard form.

    Returns:
        (Lx, Lz), k×n each with Lx·Lzᵀ = I

    Raises:
        ValueError: If Hx·Hzᵀ ≠ 0

    Example:
        >>> lx, lz = logical_basis_css(BitMatrix(["1111"]), BitMatrix(["1111"]))
        >>> lx.to_strings(), lz.to_strings()
        (['0110', '0101'], ['1010', '1001'])
    """
    n = hx.cols if hx.cols else hz.cols
    if hx.rows and hz.rows and not (hx @ hz.T).is_zero():
        raise ValueError("Inconsistent CSS pair: Hx·Hzᵀ ≠ 0")
    bx = row_basis(hx) if hx.rows else BitMatrix.zeros(0, n)
    bz = row_basis(hz) if hz.rows else BitMatrix.zeros(0, n)
    h = BitMatrix.vstack(
        BitMatrix.hstack(bx, BitMatrix.zeros(bx.rows, n)),
        BitMatrix.hstack(BitMatrix.zeros(bz.rows, n), bz),
    ) if bx.rows + bz.rows else BitMatrix.zeros(0, 2 * n)
    return standard_form(h, css=True).css_logicals()


def logical_basis_stabilizer(h: BitMatrix) -> BitMatrix:
    """2k×2n logical basis (X̄ rows then Z̄ rows) from the general standard form."""
    basis = row_basis(h) if h.rows else BitMatrix.zeros(0, h.cols)
    lx, lz = standard_form(basis).logicals()
    return BitMatrix.vstack(lx, lz)


def hadamard_dual(code: CssCode) -> CssCode:
    """
    Global-Hadamard image: Hx ↔ Hz and Lx ↔ Lz, recorded distances exchanged.
    """
    metadata = dict(code.metadata)
    if "dx" in metadata or "dz" in metadata:
        metadata["dx"], metadata["dz"] = code.metadata.get("dz"), code.metadata.get("dx")
    lx = code._lz
    lz = code._lx
    return CssCode(code.hz, code.hx, lx, lz, code.name, metadata)


# ==================== Vectorised span walks ====================

_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint16)


def _pack_words(rows: Sequence[int], nbits: int) -> np.ndarray:
    """Packed integers to an (len, W) uint64 array."""
    words = max(1, (nbits + 63) // 64)
    out = np.zeros((len(rows), words), dtype=np.uint64)
    mask = (1 << 64) - 1
    for i, value in enumerate(rows):
        for w in range(words):
            out[i, w] = (value >> (64 * w)) & mask
    return out


def _popcount_rows(words: np.ndarray) -> np.ndarray:
    """Popcount of each row of a (N, W) uint64 array."""
    flat = np.ascontiguousarray(words).view(np.uint8).reshape(words.shape[0], -1)
    return _POP8[flat].sum(axis=1)


def _span_table(gens: np.ndarray) -> np.ndarray:
    table = np.zeros((1, gens.shape[1]), dtype=np.uint64)
    for g in gens:
        table = np.concatenate([table, table ^ g])
    return table


def _min_weight_walk(stab_x: List[int], stab_z: List[int], log_x: List[int], log_z: List[int],
                     n: int, low_bits: int = 16) -> int:
    """
    Minimum weight of s·L over the stabilizer span and nonzero logical combinations.

    Stabilizer and logical generators are given as packed x and z parts.
    """
    sx, sz = _pack_words(stab_x, n), _pack_words(stab_z, n)
    lxw, lzw = _pack_words(log_x, n), _pack_words(log_z, n)
    split = min(low_bits, len(stab_x))
    table_x, table_z = _span_table(sx[:split]), _span_table(sz[:split])
    high_x = np.concatenate([sx[split:], lxw])
    high_z = np.concatenate([sz[split:], lzw])
    h = len(stab_x) - split
    total = h + len(log_x)

    best = n + 1
    cur_x = np.zeros(table_x.shape[1], dtype=np.uint64)
    cur_z = np.zeros(table_x.shape[1], dtype=np.uint64)
    for i in range(1, 1 << total):
        flip = (i & -i).bit_length() - 1
        cur_x = cur_x ^ high_x[flip]
        cur_z = cur_z ^ high_z[flip]
        gray = i ^ (i >> 1)
        if not gray >> h:
            continue
        weights = _popcount_rows((table_x ^ cur_x) | (table_z ^ cur_z))
        best = min(best, int(weights.min()))
        if best == 1:
            break
    return best


# ==================== Distances ====================

class DistanceBound(NamedTuple):
    """Weight-limited distance result: exact when certified, otherwise a lower bound."""
    dx: int
    dz: int
    exact_x: bool
    exact_z: bool


def _sector_distance(stab: BitMatrix, logical: BitMatrix, n: int) -> int:
    stab_rows = row_basis(stab).row_ints() if stab.rows else []
    log_rows = logical.row_ints()
    return _min_weight_walk(stab_rows, [0] * len(stab_rows), log_rows, [0] * len(log_rows), n)


def distance_css(code: CssCode, cutoff: Optional[int] = None, allow_bound: bool = False,
                 max_weight: int = 8,
                 config: Optional[QecConfig] = None) -> Union[Tuple[int, int], DistanceBound]:
    """
    X and Z distances of a CSS code.

    d_x is the minimum weight over rowspan(Hx ∪ Lx) with nonzero logical part, d_z
    likewise. Exhaustive when r + k is within the cutoff; otherwise a weight-limited
    bound is returned if allow_bound is set.

    Args:
        code: CSS code with k ≥ 1
        cutoff: Max generator count per walk (defaults to config.distance_span_cutoff)
        allow_bound: Fall back to distance_bound_css instead of raising
        max_weight: Weight limit for the fallback

    Returns:
        (dx, dz), or a DistanceBound in fallback mode

    Raises:
        ValueError: If k = 0
        CutoffExceeded: If the walk is too large and allow_bound is False

    Example:
        >>> distance_css(CssCode(["1111"], ["1111"]))
        (2, 2)
    """
    config = config or default_config
    cutoff = config.distance_span_cutoff if cutoff is None else cutoff
    if code.k == 0:
        raise ValueError("Distance is undefined for k = 0")
    size = max(code.rx, code.rz) + code.k
    if size > cutoff:
        if allow_bound:
            return distance_bound_css(code, max_weight)
        raise CutoffExceeded("distance span walk", size, cutoff)
    logger.debug(f"Distance walk for {code.parameters()} over 2^{size} words")
    dx = _sector_distance(code.hx, code.lx, code.n)
    dz = _sector_distance(code.hz, code.lz, code.n)
    return dx, dz


def _ascending_search(check: BitMatrix, logical: BitMatrix, n: int, max_weight: int) -> Tuple[int, bool]:
    """Smallest w ≤ max_weight with a word in ker(check) anticommuting with some logical."""
    r = check.rows
    signatures = []
    for j in range(n):
        sig = 0
        for i in range(r):
            if check.data[i, j]:
                sig |= 1 << i
        for i in range(logical.rows):
            if logical.data[i, j]:
                sig |= 1 << (r + i)
        signatures.append(sig)
    low_mask = (1 << r) - 1
    for w in range(1, max_weight + 1):
        for support in combinations(range(n), w):
            acc = 0
            for j in support:
                acc ^= signatures[j]
            if not acc & low_mask and acc >> r:
                return w, True
    return max_weight + 1, False


def distance_bound_css(code: CssCode, max_weight: int) -> DistanceBound:
    """
    Ascending weight search up to max_weight in each sector.

    An X-logical is a word in ker(Hz) with nonzero overlap parity against some Z-logical.
    """
    dx, ex = _ascending_search(code.hz, code.lz, code.n, max_weight)
    dz, ez = _ascending_search(code.hx, code.lx, code.n, max_weight)
    return DistanceBound(dx, dz, ex, ez)


def distance_stabilizer(code: StabilizerCode, cutoff: Optional[int] = None,
                        config: Optional[QecConfig] = None) -> int:
    """
    Minimum weight over all nontrivial logical cosets s·P̄.

    Raises:
        ValueError: If k = 0
        CutoffExceeded: If r + 2k exceeds the cutoff
    """
    config = config or default_config
    cutoff = config.distance_span_cutoff if cutoff is None else cutoff
    if code.k == 0:
        raise ValueError("Distance is undefined for k = 0")
    n = code.n
    basis = row_basis(code.h)
    size = basis.rows + 2 * code.k
    if size > cutoff:
        raise CutoffExceeded("stabilizer distance walk", size, cutoff)
    sx, sz = basis[:, :n].row_ints(), basis[:, n:].row_ints()
    q = code.q
    lx, lz = q[:, :n].row_ints(), q[:, n:].row_ints()
    return _min_weight_walk(sx, sz, lx, lz, n)


# ==================== Logical classes ====================

def _symplectic_logicals(code: Union[CssCode, StabilizerCode]) -> Tuple[BitMatrix, BitMatrix, BitMatrix]:
    """(stabilizer basis, X̄ rows, Z̄ rows), all as symplectic rows."""
    if isinstance(code, CssCode):
        code = StabilizerCode.from_css(code)
    k = code.k
    q = code.q
    basis = row_basis(code.h) if code.h.rows else BitMatrix.zeros(0, 2 * code.n)
    return basis, q[:k], q[k:]


def parse_logical_label(label: Union[str, Sequence[int]], k: int) -> Tuple[List[int], List[int]]:
    """
    Logical Pauli label to (a, b) exponent vectors of X̄ and Z̄.

    Accepts a compact string of length k ('XI', 'YZ'), an indexed string ('X1', 'Y1Y2',
    'I' for identity), or a 2k-bit symplectic vector.

    Raises:
        ValueError: On malformed labels
    """
    if not isinstance(label, str):
        vector = [int(v) & 1 for v in label]
        if len(vector) != 2 * k:
            raise ValueError(f"Logical vector needs {2 * k} bits")
        return vector[:k], vector[k:]
    text = label.strip().replace("_", "")
    a, b = [0] * k, [0] * k
    if text in ("", "I"):
        return a, b
    indexed = re.findall(r"([IXYZ])(\d+)", text)
    if indexed and "".join(f"{p}{i}" for p, i in indexed) == text:
        for letter, index in indexed:
            i = int(index) - 1
            if not 0 <= i < k:
                raise ValueError(f"Logical index {index} out of range for k={k}")
            a[i] ^= letter in "XY"
            b[i] ^= letter in "ZY"
        return a, b
    if len(text) == k and set(text) <= set("IXYZ"):
        for i, letter in enumerate(text):
            a[i] = int(letter in "XY")
            b[i] = int(letter in "ZY")
        return a, b
    raise ValueError(f"Cannot parse logical label {label!r} for k={k}")


def logical_class_weights(code: Union[CssCode, StabilizerCode], label: Union[str, Sequence[int]],
                          config: Optional[QecConfig] = None) -> Dict[WeightVector, int]:
    """
    Weight-vector distribution of the logical class 𝒫_P̄.

    Every physical Pauli implementing P̄ is a fixed representative times a stabilizer;
    the map counts them by (w_x, w_z, w_y).

    Raises:
        CutoffExceeded: If n − k exceeds config.class_enum_cutoff

    Example:
        >>> code = CssCode(["1111"], ["1111"], lx=["1001", "1100"], lz=["1100", "1001"])
        >>> logical_class_weights(code, "X1")
        {WeightVector(wx=2, wz=0, wy=0): 2, WeightVector(wx=0, wz=2, wy=2): 2}
    """
    config = config or default_config
    basis, xbar, zbar = _symplectic_logicals(code)
    n = code.n
    config.check_limit("logical class enumeration", basis.rows, "class_enum_cutoff")
    a, b = parse_logical_label(label, code.k)
    representative = 0
    for i in range(code.k):
        if a[i]:
            representative ^= xbar.row_ints()[i]
        if b[i]:
            representative ^= zbar.row_ints()[i]
    return _class_distribution(basis.row_ints(), representative, n)


def _class_distribution(stab_rows: List[int], representative: int, n: int) -> Dict[WeightVector, int]:
    mask = (1 << n) - 1
    sx = _pack_words([row & mask for row in stab_rows], n)
    sz = _pack_words([row >> n for row in stab_rows], n)
    tx, tz = _span_table(sx), _span_table(sz)
    rx = _pack_words([representative & mask], n)[0]
    rz = _pack_words([representative >> n], n)[0]
    tx, tz = tx ^ rx, tz ^ rz
    wx = _popcount_rows(tx & ~tz)
    wz = _popcount_rows(tz & ~tx)
    wy = _popcount_rows(tx & tz)
    triples, counts = np.unique(np.stack([wx, wz, wy], axis=1), axis=0, return_counts=True)
    result = {WeightVector(int(t[0]), int(t[1]), int(t[2])): int(c) for t, c in zip(triples, counts)}
    return dict(sorted(result.items(), key=lambda item: (item[0].total, item[0])))


def logical_class_table(code: Union[CssCode, StabilizerCode],
                        config: Optional[QecConfig] = None) -> Dict[str, Dict[WeightVector, int]]:
    """Distributions for all 4^k − 1 nontrivial logical classes, keyed by compact label."""
    table = {}
    for letters in product("IXZY", repeat=code.k):
        label = "".join(letters)
        if set(label) == {"I"}:
            continue
        table[label] = logical_class_weights(code, label, config)
    return table


def uniform_weight_check(code: CssCode, config: Optional[QecConfig] = None) -> bool:
    """
    True iff every weight vector has the same count across all nontrivial X-type classes,
    and likewise across all Z-type classes.
    """
    for letter in "XZ":
        seen = None
        for bits in product((0, 1), repeat=code.k):
            if not any(bits):
                continue
            label = "".join(letter if bit else "I" for bit in bits)
            dist = logical_class_weights(code, label, config)
            if seen is None:
                seen = dist
            elif dist != seen:
                logger.debug(f"Non-uniform {letter}-type class {label}")
                return False
    return True


# ==================== Hamming bound ====================

def johnson_bound(n: int, delta: int, w: int) -> int:
    """Johnson upper bound on constant-weight codes with pairwise overlap ≤ w − delta."""
    if w < delta or n <= 0:
        return 1
    if w == delta:
        return max(1, n // w)
    return max(1, (n * johnson_bound(n - 1, delta, w - 1)) // w)


def _max_clique(adjacency: List[int], candidates: int, lower: int, upper: int) -> int:
    """Largest clique size within the candidate set, with greedy-colouring bounds."""
    best = lower

    def colour_order(pool: int) -> Tuple[List[int], List[int]]:
        order, colours = [], []
        colour = 0
        uncoloured = pool
        while uncoloured:
            colour += 1
            available = uncoloured
            while available:
                v = (available & -available).bit_length() - 1
                available &= ~(1 << v)
                available &= ~adjacency[v]
                uncoloured &= ~(1 << v)
                order.append(v)
                colours.append(colour)
        return order, colours

    def expand(size: int, pool: int) -> bool:
        nonlocal best
        order, colours = colour_order(pool)
        for i in range(len(order) - 1, -1, -1):
            if size + colours[i] <= best:
                return False
            v = order[i]
            inner = pool & adjacency[v]
            if inner:
                if expand(size + 1, inner):
                    return True
            elif size + 1 > best:
                best = size + 1
                if best >= upper:
                    return True
            pool &= ~(1 << v)
        return False

    expand(0, candidates)
    return best


def _subsets(mask: int, size: int) -> List[int]:
    bits = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    return [sum(c) for c in combinations(bits, size)]


def _climb_packing(n: int, w: int, t: int, target: int, rng: np.random.Generator, steps: int) -> int:
    """
    Hill climbing for a packing of w-sets with pairwise overlap ≤ t.

    An uncovered (t+1)-set is extended by random points to a block; blocks sharing a
    (t+1)-set with it are dropped. Returns the largest packing seen.
    """
    tuples = _subsets((1 << n) - 1, t + 1)
    cover: Dict[int, int] = {}
    size = best = 0
    for _ in range(steps):
        if best >= target:
            break
        seed = tuples[int(rng.integers(len(tuples)))]
        if seed in cover:
            continue
        rest = [i for i in range(n) if not seed >> i & 1]
        block = seed
        for i in rng.choice(rest, size=w - t - 1, replace=False):
            block |= 1 << int(i)
        for sub in _subsets(block, t + 1):
            old = cover.get(sub)
            if old is not None:
                for s in _subsets(old, t + 1):
                    del cover[s]
                size -= 1
        for sub in _subsets(block, t + 1):
            cover[sub] = block
        size += 1
        best = max(best, size)
    return best


def hamming_B(n: int, d: int, config: Optional[QecConfig] = None) -> int:
    """
    B(n, d): the maximum number of weight-d length-n bit strings whose pairwise sums
    all have weight ≥ d.

    A seeded hill climb first looks for a packing meeting the Johnson bound (which
    settles the value); otherwise an exact branch-and-bound runs from its best size,
    with the first word fixed by symmetry and the second fixed per overlap class.

    Raises:
        ValueError: For d < 1 or d > n
        CutoffExceeded: If n exceeds config.hamming_max_n

    Example:
        >>> hamming_B(8, 4)
        14
    """
    if d < 1 or d > n:
        raise ValueError(f"Need 1 ≤ d ≤ n, got n={n}, d={d}")
    config = config or default_config
    config.check_limit("B(n,d) search", n, "hamming_max_n")
    return _hamming_B(n, d, config.seed)


@lru_cache(maxsize=None)
def _hamming_B(n: int, d: int, seed: int) -> int:
    delta = (d + 1) // 2
    max_overlap = d - delta
    upper = min(johnson_bound(n, delta, d), johnson_bound(n, delta, n - d))
    best = _climb_packing(n, d, max_overlap, upper, np.random.default_rng(seed), 200_000)
    if best >= upper:
        logger.debug(f"B({n},{d}) = {best}, Johnson bound met")
        return best

    words = [sum(1 << i for i in c) for c in combinations(range(n), d)]
    count = len(words)
    adjacency = [0] * count
    for i in range(count):
        for j in range(i + 1, count):
            if bin(words[i] & words[j]).count("1") <= max_overlap:
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    first = words[0]
    neighbours = adjacency[0]
    for overlap in range(max_overlap, -1, -1):
        pool = [j for j in range(count) if neighbours >> j & 1
                and bin(words[j] & first).count("1") >= overlap]
        exact = [j for j in pool if bin(words[j] & first).count("1") == overlap]
        if not exact:
            continue
        second = exact[0]
        candidates = 0
        for j in pool:
            if j != second and adjacency[second] >> j & 1:
                candidates |= 1 << j
        if 2 + bin(candidates).count("1") <= best:
            continue
        size = 2 + _max_clique(adjacency, candidates, max(0, best - 2), upper - 2)
        best = max(best, size)
        if best >= upper:
            break
    logger.debug(f"B({n},{d}) = {best} (Johnson bound {upper})")
    return best


def check_hamming_bound(code: CssCode, eta: Optional[int] = None,
                        sector: Sector = Sector.X, config: Optional[QecConfig] = None) -> bool:
    """
    Phantom Hamming bound η(2^k − 1) ≤ B(n, d_μ).

    Args:
        code: CSS code
        eta: Number of weight-d μ-type operators in one logical class; defaults to the
             count for X̄₁ (Z̄₁ for the Z sector), and to 1 if that class has none
        sector: μ

    Returns:
        bool: True if the bound holds (always True for k = 0)
    """
    if code.k == 0:
        return True
    dx, dz = distance_css(code, config=config)
    d = dx if sector is Sector.X else dz
    if eta is None:
        label = ("X" if sector is Sector.X else "Z") + "1"
        dist = logical_class_weights(code, label, config)
        key = WeightVector(d, 0, 0) if sector is Sector.X else WeightVector(0, d, 0)
        eta = max(1, dist.get(key, 0))
    lhs = eta * ((1 << code.k) - 1)
    rhs = hamming_B(code.n, d, config)
    logger.debug(f"Hamming bound: {lhs} ≤ B({code.n},{d}) = {rhs}")
    return lhs <= rhs
