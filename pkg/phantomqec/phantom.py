"""
Phantom QEC Toolkit - Phantom Module

Decision procedures for permutation-implemented logical CNOT gate sets: checking a
claimed (permutation, logical map) set, brute-force and SAT phantomness searches,
permutation automorphisms of a code and the weak-phantom level they induce.
"""

from mylogger import logger
from dataclasses import dataclass, field
from itertools import islice, permutations
from math import factorial, gcd
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple, Union
import numpy as np

from .codes import CssCode, StabilizerCode
from .config import CutoffExceeded, QecConfig, default_config
from .enums import SolveStatus
from .f2linalg import BitMatrix, is_symplectic, span_basis, symplectic_form
from .tableau import gate_symplectic
from .utils import QecUtils


logger.info("Loading phantom module")


Permutation = List[int]


# ==================== Types ====================

@dataclass
class GateSetClaim:
    """
    Claimed implementation of logical gates by qubit permutations.

    Attributes:
        pairs: (permutation, 2k×2k logical symplectic map) entries; qubit i moves to perm[i]

    Raises:
        ValueError: If a permutation is not a bijection or a map is not symplectic
    """
    pairs: List[Tuple[Permutation, BitMatrix]] = field(default_factory=list)

    def __post_init__(self):
        for perm, f in self.pairs:
            if sorted(perm) != list(range(len(perm))):
                raise ValueError(f"Not a permutation: {list(perm)}")
            if f.rows and not is_symplectic(f):
                raise ValueError("Claimed logical map is not symplectic")

    @classmethod
    def single(cls, perm: Sequence[int], f: BitMatrix) -> 'GateSetClaim':
        return cls([(list(perm), f)])


@dataclass
class PhantomWitness:
    """
    Permutations implementing every logical CNOT of a CSS code.

    Attributes:
        perms: (control, target) -> permutation implementing CNOT from control to target
        lx, lz: Logical basis the maps refer to
    """
    perms: Dict[Tuple[int, int], Permutation]
    lx: BitMatrix
    lz: BitMatrix

    @property
    def k(self) -> int:
        return self.lx.rows

    def claim(self) -> GateSetClaim:
        """The witness as a claim of CNOT symplectics."""
        return GateSetClaim([(perm, gate_symplectic(self.k, "CNOT", a, b))
                             for (a, b), perm in sorted(self.perms.items())])

    def to_dict(self) -> Dict[str, Any]:
        """Witness JSON object."""
        return {
            "pairs": [{"control": a, "target": b, "perm": list(perm)}
                      for (a, b), perm in sorted(self.perms.items())],
            "basis": {"lx": self.lx.to_strings(), "lz": self.lz.to_strings()},
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> 'PhantomWitness':
        perms = {(int(p["control"]), int(p["target"])): [int(v) for v in p["perm"]]
                 for p in payload["pairs"]}
        return cls(perms, BitMatrix(payload["basis"]["lx"]), BitMatrix(payload["basis"]["lz"]))


class LogicalGate(NamedTuple):
    """Named logical target with its symplectic matrix."""
    name: str
    qubits: Tuple[int, ...]
    f: BitMatrix


class PhantomSatResult(NamedTuple):
    """SAT phantomness verdict; witness only when status is SAT."""
    status: SolveStatus
    witness: Optional[PhantomWitness]


class PermutationReport(NamedTuple):
    """Period structure of one witness permutation."""
    control: int
    target: int
    perm: Tuple[int, ...]
    period: int
    even_period: bool
    single_layer_swap: bool
    trivial: bool


class Automorphism(NamedTuple):
    """Qubit permutation preserving both stabilizer spaces, with its logical X action."""
    perm: Tuple[int, ...]
    action: BitMatrix


# ==================== Permutation helpers ====================

def inverse_permutation(perm: Sequence[int]) -> Permutation:
    inverse = [0] * len(perm)
    for i, p in enumerate(perm):
        inverse[p] = i
    return inverse


def compose_permutations(*perms: Sequence[int]) -> Permutation:
    """Apply perms left to right: qubit i ends at perms[-1][...perms[0][i]]."""
    n = len(perms[0])
    out = list(range(n))
    for perm in perms:
        out = [perm[i] for i in out]
    return out


def permutation_period(perm: Sequence[int]) -> int:
    """Order of the permutation: lcm of its cycle lengths."""
    seen = [False] * len(perm)
    period = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        period = period * length // gcd(period, length)
    return period


def permute_bits(value: int, perm: Sequence[int]) -> int:
    """Image of a packed vector under the qubit permutation."""
    out = 0
    while value:
        low = value & -value
        out |= 1 << perm[low.bit_length() - 1]
        value ^= low
    return out


def iter_involutions(n: int) -> Iterator[Permutation]:
    """All permutations with π² = 1, in lexicographic order."""
    perm = [-1] * n

    def extend() -> Iterator[Permutation]:
        try:
            i = perm.index(-1)
        except ValueError:
            yield list(perm)
            return
        for j in range(i, n):
            if perm[j] != -1:
                continue
            perm[i], perm[j] = j, i
            yield from extend()
            perm[i] = perm[j] = -1

    yield from extend()


def involution_count(n: int) -> int:
    a, b = 1, 1
    for m in range(2, n + 1):
        a, b = b, b + (m - 1) * a
    return b if n else 1


# ==================== Gate-set checks ====================

def _split_css_target(f: BitMatrix, k: int) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    data = f.data
    if data.shape != (2 * k, 2 * k):
        raise ValueError(f"Logical map is {data.shape[0]}×{data.shape[1]}, expected {2 * k}×{2 * k}")
    if data[:k, k:].any() or data[k:, :k].any():
        return None
    return data[:k, :k].astype(np.int64), data[k:, k:].astype(np.int64)


def _css_condition_mask(code: CssCode, perms: np.ndarray, fxx: np.ndarray, fzz: np.ndarray) -> np.ndarray:
    """
    Evaluate the CSS permutation conditions for a batch of permutations.

    For each π the permuted rows M·P must satisfy
    Hx P Hzᵀ = Hz P Hxᵀ = 0, Hx P Lzᵀ = Hz P Lxᵀ = 0, Lx P Hzᵀ = Lz P Hxᵀ = 0,
    Lx P Lzᵀ = Fxx and Lz P Lxᵀ = Fzz.
    """
    inverse = np.argsort(perms, axis=1)
    hx, hz = code.hx.data.astype(np.int64), code.hz.data.astype(np.int64)
    lx, lz = code.lx.data.astype(np.int64), code.lz.data.astype(np.int64)
    ok = np.ones(perms.shape[0], dtype=bool)

    def moved(m: np.ndarray) -> np.ndarray:
        return m[:, inverse].transpose(1, 0, 2)

    def zero(product: np.ndarray) -> np.ndarray:
        return ~(product & 1).reshape(product.shape[0], -1).any(axis=1)

    if hx.shape[0]:
        px = moved(hx)
        ok &= zero(px @ hz.T) & zero(px @ lz.T)
    if hz.shape[0]:
        pz = moved(hz)
        ok &= zero(pz @ hx.T) & zero(pz @ lx.T)
    plx, plz = moved(lx), moved(lz)
    ok &= zero(plx @ hz.T) & zero(plz @ hx.T)
    ok &= (((plx @ lz.T) & 1) == fxx).reshape(perms.shape[0], -1).all(axis=1)
    ok &= (((plz @ lx.T) & 1) == fzz).reshape(perms.shape[0], -1).all(axis=1)
    return ok


def check_perm_gateset_css(code: CssCode, claim: GateSetClaim) -> bool:
    """
    Check a permutation gate-set claim with the CSS conditions.

    Only CNOT circuits (block-diagonal maps) can be implemented by permutations; any
    other claimed map fails.

    Args:
        code: CSS code; its logical basis is used
        claim: Claimed (permutation, map) pairs

    Returns:
        bool: True iff every pair preserves the codespace with the claimed action

    Raises:
        ValueError: On dimension mismatches

    Example:
        >>> code = CssCode(["1111"], ["1111"])
        >>> check_perm_gateset_css(code, GateSetClaim.single([2, 1, 0, 3], gate_symplectic(2, "CNOT", 0, 1)))
        True
    """
    k = code.k
    for perm, f in claim.pairs:
        if len(perm) != code.n:
            raise ValueError(f"Permutation on {len(perm)} qubits for an n={code.n} code")
        blocks = _split_css_target(f, k)
        if blocks is None:
            return False
        if not _css_condition_mask(code, np.array([perm]), *blocks)[0]:
            return False
    return True


def _permute_symplectic(m: BitMatrix, perm: Sequence[int]) -> np.ndarray:
    n = len(perm)
    inverse = inverse_permutation(perm)
    data = m.data.astype(np.int64)
    return np.hstack([data[:, :n][:, inverse], data[:, n:][:, inverse]])


def check_perm_gateset(code: Union[CssCode, StabilizerCode], claim: GateSetClaim) -> bool:
    """
    Check a permutation gate-set claim with the general symplectic conditions.

    With Q the logical basis, H the stabilizers, Ω the form and J = [[0,I],[I,0]] on k
    qubits, each pair needs (HP)ΩHᵀ = 0, (HP)ΩQᵀ = 0, (QP)ΩHᵀ = 0 and (QP)ΩQᵀJ = F.

    Args:
        code: Stabilizer code (CSS codes are converted)
        claim: Claimed (permutation, map) pairs

    Returns:
        bool: True iff every pair holds

    Raises:
        ValueError: On dimension mismatches
    """
    if isinstance(code, CssCode):
        code = StabilizerCode.from_css(code)
    n, k = code.n, code.k
    omega = symplectic_form(n).data.astype(np.int64)
    jay = symplectic_form(k).data.astype(np.int64)
    h = code.h.data.astype(np.int64)
    q = code.q.data.astype(np.int64)
    for perm, f in claim.pairs:
        if len(perm) != n:
            raise ValueError(f"Permutation on {len(perm)} qubits for an n={n} code")
        if f.shape != (2 * k, 2 * k):
            raise ValueError(f"Logical map is {f.rows}×{f.cols}, expected {2 * k}×{2 * k}")
        hp = _permute_symplectic(code.h, perm)
        qp = _permute_symplectic(code.q, perm)
        if h.shape[0] and ((hp @ omega @ h.T) & 1).any():
            return False
        if h.shape[0] and ((hp @ omega @ q.T) & 1).any():
            return False
        if h.shape[0] and ((qp @ omega @ h.T) & 1).any():
            return False
        if not np.array_equal((qp @ omega @ q.T @ jay) & 1, f.data):
            return False
    return True


# ==================== Gate sets ====================

def minimal_gateset(k: int) -> List[LogicalGate]:
    """
    CNOT from qubit 0 to 1 plus the adjacent SWAP chain; together they generate all CNOTs.

    Raises:
        ValueError: If k < 2

    Example:
        >>> [g.name for g in minimal_gateset(3)]
        ['CNOT', 'SWAP', 'SWAP']
    """
    if k < 2:
        raise ValueError(f"Logical CNOT gate sets need k >= 2, got k={k}")
    gates = [LogicalGate("CNOT", (0, 1), gate_symplectic(k, "CNOT", 0, 1))]
    gates += [LogicalGate("SWAP", (i, i + 1), gate_symplectic(k, "SWAP", i, i + 1)) for i in range(k - 1)]
    return gates


def _swap_word(k: int, a: int, b: int) -> List[int]:
    """Adjacent-swap sequence (by left slot index) moving logical a to slot 0 and b to slot 1."""
    slots = list(range(k))
    word: List[int] = []
    for value, goal in ((a, 0), (b, 1)):
        pos = slots.index(value)
        while pos > goal:
            slots[pos - 1], slots[pos] = slots[pos], slots[pos - 1]
            word.append(pos - 1)
            pos -= 1
    return word


def compose_cnot_witness(k: int, cnot01: Sequence[int], swaps: Sequence[Sequence[int]]) -> Dict[Tuple[int, int], Permutation]:
    """
    Compose minimal-gate-set permutations into permutations for every CNOT_ab.

    CNOT_ab is realised as (swap word) · CNOT_01 · (reversed swap word).

    Raises:
        RuntimeError: If a word exceeds 2k² gates
    """
    result: Dict[Tuple[int, int], Permutation] = {}
    for a in range(k):
        for b in range(k):
            if a == b:
                continue
            word = _swap_word(k, a, b)
            sequence = [swaps[i] for i in word] + [cnot01] + [swaps[i] for i in reversed(word)]
            if len(sequence) > 2 * k * k:
                raise RuntimeError(f"Composition word for CNOT{a}{b} is too long")
            result[(a, b)] = compose_permutations(*sequence)
    return result


def _witness_from_minimal(code: CssCode, found: List[Permutation]) -> PhantomWitness:
    k = code.k
    perms = compose_cnot_witness(k, found[0], found[1:])
    witness = PhantomWitness(perms, code.lx, code.lz)
    if not check_perm_gateset_css(code, witness.claim()):
        logger.error("Composed witness failed re-verification")
        raise RuntimeError("Composed phantom witness failed verification")
    return witness


def _first_match(code: CssCode, target: BitMatrix, candidates: Iterator[Permutation], chunk: int = 4096) -> Optional[Permutation]:
    fxx, fzz = _split_css_target(target, code.k)
    while True:
        batch = list(islice(candidates, chunk))
        if not batch:
            return None
        mask = _css_condition_mask(code, np.array(batch), fxx, fzz)
        hits = np.flatnonzero(mask)
        if hits.size:
            return batch[int(hits[0])]


def is_phantom_bruteforce(code: CssCode, involutions_only: bool = False,
                          config: Optional[QecConfig] = None) -> Optional[PhantomWitness]:
    """
    Search permutations for the minimal gate set.

    Candidates are scanned in lexicographic order in vectorised chunks, SWAP targets
    first; the first hit per target is kept, so witnesses are deterministic.

    Args:
        code: CSS code with k >= 2
        involutions_only: Restrict to period-two permutations
        config: Settings (bruteforce_max_n bounds the search space at bruteforce_max_n!)

    Returns:
        PhantomWitness for every CNOT_ab, or None if some target has no permutation

    Raises:
        ValueError: If k < 2
        CutoffExceeded: If the candidate count is over budget
    """
    config = config or default_config
    gates = minimal_gateset(code.k)
    n = code.n
    size = involution_count(n) if involutions_only else factorial(n)
    limit = factorial(config.bruteforce_max_n)
    if size > limit:
        logger.warning(f"Brute-force search over {size} permutations refused (limit {limit})")
        raise CutoffExceeded("brute-force phantom search", size, limit)

    logger.info(f"Brute-force phantom search on {code.parameters()} over {size} permutations")
    ordered = gates[1:] + gates[:1]
    found: Dict[str, Permutation] = {}
    for gate in ordered:
        candidates = iter_involutions(n) if involutions_only else (list(p) for p in permutations(range(n)))
        match = _first_match(code, gate.f, candidates)
        if match is None:
            logger.debug(f"No permutation implements {gate.name}{gate.qubits}")
            return None
        logger.debug(f"{gate.name}{gate.qubits} implemented by {QecUtils.format_permutation(match)}")
        found[f"{gate.name}{gate.qubits}"] = match
    minimal = [found[f"{gate.name}{gate.qubits}"] for gate in gates]
    witness = _witness_from_minimal(code, minimal)
    logger.success(f"{code.parameters()} is phantom")
    return witness


def is_phantom_sat(code: CssCode, solver: Optional[Any] = None,
                   config: Optional[QecConfig] = None) -> PhantomSatResult:
    """
    Decide phantomness with a SAT instance over the minimal gate set.

    Args:
        code: CSS code with k >= 2
        solver: SolverHandle (resolved from config when None)
        config: Settings

    Returns:
        PhantomSatResult with a re-verified witness when SAT

    Raises:
        ValueError: If k < 2
        RuntimeError: If a decoded witness fails re-verification
    """
    from .sat import phantom_instance, solve
    from .solver import SolverHandle

    if code.k < 2:
        raise ValueError(f"Phantomness needs k >= 2, got k={code.k}")
    config = config or default_config
    solver = solver or SolverHandle.from_config(config)
    formula, decode = phantom_instance(code)
    logger.info(f"SAT phantom check on {code.parameters()}: {formula.num_vars} vars, {len(formula.clauses)} clauses")
    result = solve(formula, solver)
    if result.status != SolveStatus.SAT:
        return PhantomSatResult(result.status, None)
    witness = decode(result)
    if not check_perm_gateset_css(code, witness.claim()):
        logger.error("SAT witness failed independent verification")
        raise RuntimeError("SAT witness failed verification")
    return PhantomSatResult(SolveStatus.SAT, witness)


def is_weak_phantom_sat(code: CssCode, p: int, solver: Optional[Any] = None,
                        config: Optional[QecConfig] = None) -> PhantomSatResult:
    """
    Decide weak phantomness at level p with a SAT instance over a free basis rotation.

    Returns:
        PhantomSatResult; the witness holds CNOT permutations among the first p logical
        qubits of the rotated basis it carries

    Raises:
        ValueError: If k < 2 or p is out of range
        RuntimeError: If a decoded witness fails re-verification
    """
    from .sat import solve, weak_phantom_instance
    from .solver import SolverHandle

    config = config or default_config
    solver = solver or SolverHandle.from_config(config)
    formula, decode = weak_phantom_instance(code, p)
    logger.info(f"SAT weak-phantom check p={p} on {code.parameters()}: {formula.num_vars} vars")
    result = solve(formula, solver)
    if result.status != SolveStatus.SAT:
        return PhantomSatResult(result.status, None)
    witness = decode(result)
    if not check_perm_gateset_css(code.with_logicals(witness.lx, witness.lz), witness.claim()):
        logger.error("Weak-phantom SAT witness failed independent verification")
        raise RuntimeError("SAT witness failed verification")
    return PhantomSatResult(SolveStatus.SAT, witness)


def weak_phantom_level_sat(code: CssCode, solver: Optional[Any] = None,
                           config: Optional[QecConfig] = None) -> Optional[int]:
    """
    Weak-phantom level from SAT checks at p = 1, 2, ... until the first UNSAT.

    Returns:
        The level, or None if some check ended without a definitive verdict

    Example:
        >>> weak_phantom_level_sat(CssCode(["1111"], ["1111"]))
        2
    """
    if code.k < 2:
        return 0
    level = 0
    for p in range(1, code.k + 1):
        verdict = is_weak_phantom_sat(code, p, solver, config)
        if not SolveStatus.is_definitive(verdict.status):
            logger.warning(f"Weak-phantom check p={p} ended with {verdict.status}")
            return None
        if verdict.witness is None:
            break
        level = p
    return level


# ==================== Permutation structure ====================

def permutation_report(perm: Sequence[int], control: int = -1, target: int = -1) -> PermutationReport:
    """Period, parity and layer structure of one permutation."""
    period = permutation_period(perm)
    return PermutationReport(
        control=control,
        target=target,
        perm=tuple(perm),
        period=period,
        even_period=period % 2 == 0,
        single_layer_swap=period == 2,
        trivial=period == 1,
    )


def permutation_period_checks(witness: PhantomWitness) -> List[PermutationReport]:
    """
    Period report for every witness permutation.

    A permutation implementing an involutory logical CNOT must have even period; an odd
    period is logged as an error since it cannot occur for a valid witness.
    """
    reports = []
    for (a, b), perm in sorted(witness.perms.items()):
        report = permutation_report(perm, a, b)
        if not report.even_period:
            logger.error(f"CNOT{a}{b} permutation has odd period {report.period}")
        reports.append(report)
    return reports


# ==================== Automorphisms ====================

def _span_words(rows: Sequence[int]) -> Set[int]:
    words = {0}
    for row in span_basis(rows).values():
        words |= {w ^ row for w in words}
    return words


def _signature(words: Set[int], n: int) -> List[Tuple[int, ...]]:
    counts = [[0] * (n + 1) for _ in range(n)]
    for w in words:
        weight = bin(w).count("1")
        value = w
        while value:
            low = value & -value
            counts[low.bit_length() - 1][weight] += 1
            value ^= low
    return [tuple(c) for c in counts]


def permutation_automorphisms(code: CssCode, limit: int = 100_000,
                              config: Optional[QecConfig] = None) -> List[Automorphism]:
    """
    Qubit permutations mapping both stabilizer spaces onto themselves.

    Backtracking assigns images qubit by qubit; candidates must match the per-qubit
    weight signature of both stabilizer spaces, and every stabilizer word whose support
    is fully assigned must map into its space.

    Args:
        code: CSS code
        limit: Stop after this many automorphisms
        config: Settings (automorphism_max_n bounds n)

    Returns:
        Automorphisms in lexicographic order, each with its induced X-logical action A
        (Lx·P ≡ A·Lx modulo X stabilizers)

    Raises:
        CutoffExceeded: If n is over budget
    """
    config = config or default_config
    n = code.n
    config.check_limit("automorphism search", n, "automorphism_max_n")
    words_x = _span_words(code.hx.row_ints())
    words_z = _span_words(code.hz.row_ints())
    sig = [tuple(pair) for pair in zip(_signature(words_x, n), _signature(words_z, n))]
    closing: List[List[Tuple[int, Set[int]]]] = [[] for _ in range(n)]
    for words in (words_x, words_z):
        for w in words:
            if w:
                closing[w.bit_length() - 1].append((w, words))

    lx_rows, lz_rows = code.lx.row_ints(), code.lz.row_ints()
    k = code.k
    found: List[Automorphism] = []
    perm = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            action = BitMatrix([[bin(permute_bits(lx, perm) & lz).count("1") & 1 for lz in lz_rows]
                                for lx in lx_rows]) if k else BitMatrix.zeros(0, 0)
            found.append(Automorphism(tuple(perm), action))
            return len(found) >= limit
        for image in range(n):
            if used[image] or sig[image] != sig[i]:
                continue
            perm[i] = image
            if all(permute_bits(w, perm) in words for w, words in closing[i]):
                used[image] = True
                if extend(i + 1):
                    return True
                used[image] = False
            perm[i] = -1
        return False

    truncated = extend(0)
    if truncated:
        logger.warning(f"Automorphism search stopped at {limit} permutations")
    logger.debug(f"{code.parameters()} has {len(found)} permutation automorphisms")
    return found


def _gl_key(m: BitMatrix) -> Tuple[int, ...]:
    return tuple(m.row_ints())


def _mul_keys(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    out = []
    for row in a:
        acc, j = 0, 0
        while row:
            if row & 1:
                acc ^= b[j]
            row >>= 1
            j += 1
        out.append(acc)
    return tuple(out)


def automorphism_image_group(automorphisms: Sequence[Automorphism], k: int) -> Set[Tuple[int, ...]]:
    """Closure in GL(k) of the automorphisms' logical actions, as packed-row tuples."""
    identity = tuple(1 << i for i in range(k))
    group = {identity}
    generators = {_gl_key(a.action) for a in automorphisms}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                prod = _mul_keys(g, h)
                if prod not in group:
                    group.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return group


def _transvections(group: Set[Tuple[int, ...]], k: int) -> Set[Tuple[int, int]]:
    """(c, r) pairs, as packed ints, with I + c·rᵀ in the group (r·c = 0)."""
    out = set()
    for g in group:
        diff = [row ^ (1 << i) for i, row in enumerate(g)]
        nonzero = [i for i, row in enumerate(diff) if row]
        if not nonzero:
            continue
        r = diff[nonzero[0]]
        if any(row not in (0, r) for row in diff):
            continue
        c = sum(1 << i for i in nonzero)
        if bin(c & r).count("1") % 2 == 0:
            out.add((c, r))
    return out


def weak_phantom_level(code: CssCode, automorphisms: Optional[Sequence[Automorphism]] = None,
                       config: Optional[QecConfig] = None) -> int:
    """
    Largest p such that, in some CSS logical basis, permutations implement all CNOTs
    among p logical qubits (acting trivially on the rest).

    In the rotated basis CNOT_ab is the transvection I + c_a·r_bᵀ with r_i·c_j = δ_ij;
    the search picks p such biorthogonal pairs whose cross transvections all lie in the
    automorphism image group.

    Returns:
        0 if no permutation implements any CNOT, 1 if some single CNOT exists, else p

    Example:
        >>> weak_phantom_level(CssCode(["1111"], ["1111"]))
        2
    """
    k = code.k
    if k < 2:
        return 0
    autos = automorphisms if automorphisms is not None else permutation_automorphisms(code, config=config)
    group = automorphism_image_group(autos, k)
    trans = _transvections(group, k)
    if not trans:
        return 0
    cs = sorted({c for c, _ in trans})
    rs = sorted({r for _, r in trans})
    candidates = [(c, r) for c in cs for r in rs if bin(c & r).count("1") % 2 == 1]

    def dot(a: int, b: int) -> int:
        return bin(a & b).count("1") & 1

    def search(chosen: List[Tuple[int, int]], start: int, p: int) -> bool:
        if len(chosen) == p:
            return True
        for idx in range(start, len(candidates)):
            c, r = candidates[idx]
            if any(dot(r, c2) or dot(r2, c) for c2, r2 in chosen):
                continue
            if all((c, r2) in trans and (c2, r) in trans for c2, r2 in chosen):
                chosen.append((c, r))
                if search(chosen, idx + 1, p):
                    return True
                chosen.pop()
        return False

    best = 1
    for p in range(2, k + 1):
        if not search([], 0, p):
            break
        best = p
    return best


def is_phantom_automorphism(code: CssCode, config: Optional[QecConfig] = None) -> bool:
    """Phantomness via the automorphism image group: it must be all of GL(k)."""
    from .f2linalg import gl_order
    if code.k < 2:
        return False
    group = automorphism_image_group(permutation_automorphisms(code, config=config), code.k)
    return len(group) == gl_order(code.k)
