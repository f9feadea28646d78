"""
Phantom QEC Toolkit - Enumerate Module

Exhaustive generation of CSS codes up to qubit permutation and global Hadamard
(ΠH equivalence). Codes are grown one stabilizer at a time from the trivial [[n,n]]
code and deduplicated by a canonical form of the expanded Tanner graph, whose vertices
are the qubits and every nonzero X and Z stabilizer element.

General stabilizer codes (small n) go through the same pipeline with an edge-coloured
bipartite graph and extensions by any nontrivial logical Pauli.
"""

from mylogger import logger
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union
import networkx as nx
import pandas as pd

from .codes import CssCode, StabilizerCode, distance_css, distance_stabilizer
from .config import QecConfig, default_config
from .f2linalg import BitMatrix, span_basis
from .utils import QecUtils


logger.info("Loading enumerate module")


CanonicalForm = bytes


def _span_words(rows: Iterable[int]) -> List[int]:
    words = [0]
    for row in span_basis(rows).values():
        words += [w ^ row for w in words]
    return sorted(w for w in words if w)


def _permute_word(word: int, perm: Sequence[int]) -> int:
    out = 0
    while word:
        low = word & -word
        out |= 1 << perm[low.bit_length() - 1]
        word ^= low
    return out


# ==================== Expanded Tanner graph ====================

@dataclass
class ExpandedTannerGraph:
    """
    Tripartite graph: n qubit vertices, one vertex per nonzero X-stabilizer element and
    one per nonzero Z-stabilizer element, joined to the qubits in their support.

    Vertex ids: qubits 0..n-1, then X elements, then Z elements. Initial colours separate
    qubits from X and Z elements, and stabilizer elements by weight. Adjacency entries
    are (neighbour, edge colour) pairs; every edge has colour 0.
    """
    n: int
    x_words: List[int]
    z_words: List[int]
    adjacency: List[List[Tuple[int, int]]] = field(init=False)
    colours: List[Tuple[int, int]] = field(init=False)

    def __post_init__(self):
        n = self.n
        self.adjacency = [[] for _ in range(self.vertex_count)]
        self.colours = [(0, 0)] * n
        for part, words in ((1, self.x_words), (2, self.z_words)):
            base = n if part == 1 else n + len(self.x_words)
            for index, word in enumerate(words):
                v = base + index
                self.colours.append((part, bin(word).count("1")))
                for q in range(n):
                    if word >> q & 1:
                        self.adjacency[v].append((q, 0))
                        self.adjacency[q].append((v, 0))

    @classmethod
    def from_code(cls, code: CssCode, hadamard: bool = False) -> 'ExpandedTannerGraph':
        """Graph of the code, or of its Hadamard dual with the sectors exchanged."""
        x_words, z_words = _span_words(code.hx.row_ints()), _span_words(code.hz.row_ints())
        return cls(code.n, z_words, x_words) if hadamard else cls(code.n, x_words, z_words)

    @property
    def vertex_count(self) -> int:
        return self.n + len(self.x_words) + len(self.z_words)

    def serialize(self, perm: Sequence[int]) -> bytes:
        """Biadjacency pair under a qubit relabelling: sorted relabelled X then Z elements."""
        width = max(1, (self.n + 7) // 8)
        xs = sorted(_permute_word(w, perm) for w in self.x_words)
        zs = sorted(_permute_word(w, perm) for w in self.z_words)
        body = b"".join(w.to_bytes(width, "big") for w in xs)
        body += b"|" + b"".join(w.to_bytes(width, "big") for w in zs)
        header = bytes([self.n, len(xs).bit_length(), len(zs).bit_length()])
        return header + body

    def to_networkx(self) -> nx.Graph:
        """Coloured networkx graph (node and edge attribute 'colour')."""
        return _as_networkx(self.colours, self.adjacency)


@dataclass
class PauliTannerGraph:
    """
    Bipartite graph of a general stabilizer group: n qubit vertices and one vertex per
    nonzero group element, joined to the qubits in its support by an edge coloured
    1 (X), 2 (Z) or 3 (Y).

    Elements are (x word, z word) pairs; element vertices are coloured by weight.
    """
    n: int
    elements: List[Tuple[int, int]]
    adjacency: List[List[Tuple[int, int]]] = field(init=False)
    colours: List[Tuple[int, int]] = field(init=False)

    def __post_init__(self):
        n = self.n
        self.adjacency = [[] for _ in range(self.vertex_count)]
        self.colours = [(0, 0)] * n
        for index, (x, z) in enumerate(self.elements):
            v = n + index
            self.colours.append((1, bin(x | z).count("1")))
            for q in range(n):
                colour = (x >> q & 1) | (z >> q & 1) << 1
                if colour:
                    self.adjacency[v].append((q, colour))
                    self.adjacency[q].append((v, colour))

    @classmethod
    def from_code(cls, code: StabilizerCode, hadamard: bool = False) -> 'PauliTannerGraph':
        """Graph of the stabilizer group, with X and Z exchanged on every qubit when hadamard is set."""
        n = code.n
        mask = (1 << n) - 1
        elements = [(w & mask, w >> n) for w in _span_words(code.h.row_ints())]
        if hadamard:
            elements = [(z, x) for x, z in elements]
        return cls(n, elements)

    @property
    def vertex_count(self) -> int:
        return self.n + len(self.elements)

    def serialize(self, perm: Sequence[int]) -> bytes:
        """Sorted relabelled elements, each as its x word then its z word."""
        width = max(1, (self.n + 7) // 8)
        elements = sorted((_permute_word(x, perm), _permute_word(z, perm)) for x, z in self.elements)
        body = b"".join(x.to_bytes(width, "big") + z.to_bytes(width, "big") for x, z in elements)
        return bytes([self.n, len(elements).bit_length()]) + body

    def to_networkx(self) -> nx.Graph:
        """Coloured networkx graph (node and edge attribute 'colour')."""
        return _as_networkx(self.colours, self.adjacency)


TannerGraph = Union[ExpandedTannerGraph, PauliTannerGraph]


def _as_networkx(colours: Sequence[Tuple[int, int]], adjacency: Sequence[Sequence[Tuple[int, int]]]) -> nx.Graph:
    g = nx.Graph()
    for v, colour in enumerate(colours):
        g.add_node(v, colour=colour)
    for v, nbrs in enumerate(adjacency):
        for u, colour in nbrs:
            if u > v:
                g.add_edge(v, u, colour=colour)
    return g


def tanner_graphs(code: Union[CssCode, StabilizerCode]) -> Tuple[TannerGraph, TannerGraph]:
    """The code's expanded Tanner graph and that of its global-Hadamard image."""
    kind = ExpandedTannerGraph if isinstance(code, CssCode) else PauliTannerGraph
    return kind.from_code(code), kind.from_code(code, hadamard=True)


def _refine(g: TannerGraph, colours: List[Any]) -> List[int]:
    """Colour refinement to the coarsest equitable partition; colours are ranks of signatures."""
    current = _rank(colours)
    while True:
        signatures = [(current[v], tuple(sorted((current[u], c) for u, c in g.adjacency[v])))
                      for v in range(g.vertex_count)]
        nxt = _rank(signatures)
        if len(set(nxt)) == len(set(current)):
            return nxt
        current = nxt


def _rank(values: Sequence[Any]) -> List[int]:
    order = {value: i for i, value in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


def _orbits(n: int, automorphisms: Sequence[Sequence[int]]) -> List[int]:
    """Orbit representative of every qubit under the group generated by automorphisms."""
    parent = list(range(n))

    def find(q: int) -> int:
        while parent[q] != q:
            parent[q] = parent[parent[q]]
            q = parent[q]
        return q

    for gamma in automorphisms:
        for q in range(n):
            a, b = find(q), find(gamma[q])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(q) for q in range(n)]


def canonical_label(g: TannerGraph) -> Tuple[int, ...]:
    """
    Canonical qubit relabelling: perm[q] is the new position of qubit q.

    Refinement to an equitable colouring, then backtracking that individualizes each
    vertex of the first non-singleton qubit cell in turn; the leaf with the smallest
    serialization wins. Qubits with identical neighbourhoods are tried once per cell,
    and root children in the same orbit of an automorphism found between equal leaves
    are skipped.
    """
    n = g.n
    twin = _rank([tuple(sorted(g.adjacency[q])) for q in range(n)])
    best: List[Any] = [None, None]
    automorphisms: List[List[int]] = []

    def leaf_perm(colours: List[int]) -> List[int]:
        order = sorted(range(n), key=lambda q: colours[q])
        perm = [0] * n
        for position, q in enumerate(order):
            perm[q] = position
        return perm

    def children(colours: List[int]) -> Optional[List[int]]:
        cells: Dict[int, List[int]] = {}
        for q in range(n):
            cells.setdefault(colours[q], []).append(q)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            return None
        seen_twins = set()
        out = []
        for q in target:
            if twin[q] not in seen_twins:
                seen_twins.add(twin[q])
                out.append(q)
        return out

    def individualize(colours: List[int], q: int) -> List[int]:
        trial = [(c, 0) for c in colours]
        trial[q] = (colours[q], 1)
        return _refine(g, trial)

    def search(colours: List[int]) -> None:
        options = children(colours)
        if options is None:
            perm = leaf_perm(colours)
            form = g.serialize(perm)
            if best[0] is None or form < best[0]:
                best[0], best[1] = form, tuple(perm)
            elif form == best[0]:
                inverse = [0] * n
                for q, position in enumerate(best[1]):
                    inverse[position] = q
                automorphisms.append([inverse[perm[q]] for q in range(n)])
            return
        for q in options:
            search(individualize(colours, q))

    root = _refine(g, list(g.colours))
    options = children(root)
    if options is None:
        search(root)
        return best[1]
    explored: List[int] = []
    for q in options:
        orbit = _orbits(n, automorphisms)
        if any(orbit[q] == orbit[p] for p in explored):
            continue
        explored.append(q)
        search(individualize(root, q))
    return best[1]


def canonical_form(code: Union[CssCode, StabilizerCode], config: Optional[QecConfig] = None) -> CanonicalForm:
    """
    Byte string identifying the code's ΠH class: min over the code and its Hadamard dual
    of the canonically labelled serialization.

    CSS codes use the tripartite graph; general stabilizer codes use the edge-coloured
    bipartite graph, so a CSS code and its StabilizerCode form get different bytes.

    Raises:
        CutoffExceeded: If n-k is above class_enum_cutoff

    Example:
        >>> code = CssCode(["1111"], ["1111"])
        >>> canonical_form(code) == canonical_form(code.permute([1, 2, 0, 3]))
        True
    """
    config = config or default_config
    config.check_limit("canonical form", code.n - code.k, "class_enum_cutoff")
    return min(graph.serialize(canonical_label(graph)) for graph in tanner_graphs(code))


def oriented(code: CssCode) -> CssCode:
    """The code or its Hadamard dual, whichever has r_x <= r_z."""
    return code.hadamard_dual() if code.rx > code.rz else code


def equivalent(a: Union[CssCode, StabilizerCode], b: Union[CssCode, StabilizerCode]) -> bool:
    """
    ΠH equivalence by networkx isomorphism of the coloured Tanner graphs.

    Shares no code with canonical_label, so it serves as an independent check on
    canonical forms.
    """
    if isinstance(a, CssCode) != isinstance(b, CssCode) or (a.n, a.k) != (b.n, b.k):
        return False
    node_match = nx.algorithms.isomorphism.categorical_node_match("colour", None)
    edge_match = nx.algorithms.isomorphism.categorical_edge_match("colour", 0)
    target = tanner_graphs(b)[0].to_networkx()
    return any(nx.is_isomorphic(graph.to_networkx(), target, node_match=node_match, edge_match=edge_match)
               for graph in tanner_graphs(a))


# ==================== Database ====================

def _distances(code: Union[CssCode, StabilizerCode]) -> Tuple[int, int]:
    if not code.k:
        return 0, 0
    if isinstance(code, CssCode):
        return distance_css(code)
    d = distance_stabilizer(code)
    return d, d


class DatabaseEntry(NamedTuple):
    """Representative of one ΠH class with its distances and weak-phantom level (dx = dz = d for non-CSS codes)."""
    code: Union[CssCode, StabilizerCode]
    dx: int
    dz: int
    level: Optional[int] = None

    @property
    def d(self) -> int:
        return min(self.dx, self.dz)


class CodeDatabase:
    """
    ΠH-inequivalent CSS code representatives keyed by (n, k) and canonical form.

    Storage layout under a directory: {n}/{k}/forms.bin (length-prefixed canonical
    forms), {n}/{k}/index.json and {n}/{k}/representatives.jsonl.
    """

    def __init__(self):
        self.layers: Dict[Tuple[int, int], Dict[CanonicalForm, DatabaseEntry]] = {}

    def __len__(self) -> int:
        return sum(len(layer) for layer in self.layers.values())

    def __contains__(self, code: Union[CssCode, StabilizerCode]) -> bool:
        return canonical_form(code) in self.layers.get((code.n, code.k), {})

    def keys(self) -> List[Tuple[int, int]]:
        return sorted(self.layers)

    def layer(self, n: int, k: int) -> List[DatabaseEntry]:
        return list(self.layers.get((n, k), {}).values())

    def add(self, code: Union[CssCode, StabilizerCode], form: Optional[CanonicalForm] = None,
            distances: Optional[Tuple[int, int]] = None, level: Optional[int] = None) -> bool:
        """
        Store a representative unless its class is already present.

        Returns:
            bool: True if the class was new
        """
        form = form if form is not None else canonical_form(code)
        layer = self.layers.setdefault((code.n, code.k), {})
        if form in layer:
            return False
        if distances is None:
            distances = _distances(code)
        dx, dz = distances
        code.metadata.update(dx=dx, dz=dz)
        layer[form] = DatabaseEntry(code, dx, dz, level)
        return True

    def set_level(self, n: int, k: int, form: CanonicalForm, level: int) -> None:
        entry = self.layers[(n, k)][form]
        entry.code.metadata["phantom_level"] = level
        self.layers[(n, k)][form] = entry._replace(level=level)

    def counts(self, min_distance: int = 1, n: Optional[int] = None) -> pd.DataFrame:
        """
        Class counts per (n, k, dx, dz) with dx <= dz, plus M[K_p] columns when levels
        are known (K_p counts classes with level >= p).

        Columns: n, k, dx, dz, detects, M, K1..Kk_max. detects is False for d = 1 rows,
        which are kept but do not support error detection.
        """
        rows: Dict[Tuple[int, int, int, int], Dict[str, int]] = {}
        k_max = max((k for _, k in self.layers), default=0)
        for (layer_n, k), layer in sorted(self.layers.items()):
            if n is not None and layer_n != n:
                continue
            for entry in layer.values():
                if entry.d < min_distance:
                    continue
                dx, dz = sorted((entry.dx, entry.dz))
                row = rows.setdefault((layer_n, k, dx, dz), {"M": 0})
                row["M"] += 1
                if entry.level is not None:
                    for p in range(1, k + 1):
                        row[f"K{p}"] = row.get(f"K{p}", 0) + int(entry.level >= p)
        columns = ["n", "k", "dx", "dz", "detects", "M"] + [f"K{p}" for p in range(1, k_max + 1)]
        records = [dict(zip(("n", "k", "dx", "dz"), key), detects=key[2] >= 2, **value)
                   for key, value in sorted(rows.items())]
        frame = QecUtils.to_dataframe(records, columns=columns)
        level_columns = [c for c in frame.columns if c.startswith("K")]
        if level_columns and not frame.empty and frame[level_columns].notna().any().any():
            frame[level_columns] = frame[level_columns].fillna(0).astype(int)
        return frame

    # ==================== Storage ====================

    def save(self, directory: Union[str, Path]) -> bool:
        """Write every layer in the directory layout; returns True on success."""
        directory = Path(directory)
        logger.info(f"Saving code database ({len(self)} classes) to {directory}")
        for (n, k), layer in sorted(self.layers.items()):
            base = directory / str(n) / str(k)
            blob = b"".join(len(form).to_bytes(2, "big") + form for form in layer)
            QecUtils.save(blob, base / "forms.bin", "bytes")
            QecUtils.save({"n": n, "k": k, "count": len(layer)}, base / "index.json", "json")
            records = []
            for form, entry in layer.items():
                if isinstance(entry.code, CssCode):
                    record = entry.code.to_dict(include_logicals=False)
                else:
                    record = entry.code.to_dict()
                record.update(form=form.hex(), dx=entry.dx, dz=entry.dz, level=entry.level)
                records.append(record)
            QecUtils.save(records, base / "representatives.jsonl", "jsonl")
        logger.success(f"Code database saved to {directory}")
        return True

    @classmethod
    def load(cls, directory: Union[str, Path]) -> 'CodeDatabase':
        """
        Read a database written by save.

        Raises:
            ValueError: If the index and the stored forms disagree
        """
        directory = Path(directory)
        db = cls()
        for index_path in sorted(directory.glob("*/*/index.json")):
            index = QecUtils.load(index_path, "json")
            blob = QecUtils.load(index_path.parent / "forms.bin", "bytes")
            forms = []
            pos = 0
            while pos < len(blob):
                size = int.from_bytes(blob[pos:pos + 2], "big")
                forms.append(blob[pos + 2:pos + 2 + size])
                pos += 2 + size
            records = QecUtils.load(index_path.parent / "representatives.jsonl", "jsonl")
            if len(forms) != index["count"] or len(records) != index["count"]:
                raise ValueError(f"Corrupt database layer {index_path.parent}")
            layer = db.layers.setdefault((index["n"], index["k"]), {})
            for form, record in zip(forms, records):
                if record["form"] != form.hex():
                    raise ValueError(f"Form mismatch in {index_path.parent}")
                code = StabilizerCode.from_dict(record) if "h" in record else CssCode.from_dict(record)
                layer[form] = DatabaseEntry(code, record["dx"], record["dz"], record.get("level"))
        logger.info(f"Loaded {len(db)} classes from {directory}")
        return db


# ==================== Enumeration ====================

def extend_codes(seeds: Sequence[CssCode], sectors: Sequence[str] = ("x", "z"),
                 config: Optional[QecConfig] = None) -> Dict[CanonicalForm, CssCode]:
    """
    One extension step: append a nonzero logical combination as a new stabilizer.

    Every seed of dimension k+1 contributes 2^{k+1}-1 X and 2^{k+1}-1 Z candidates; each
    is oriented to r_x <= r_z, canonicalized and deduplicated.

    Returns:
        Canonical form -> representative, in first-found order
    """
    found: Dict[CanonicalForm, CssCode] = {}
    for seed in seeds:
        k = seed.k
        if k == 0:
            continue
        lx, lz = seed.lx.row_ints(), seed.lz.row_ints()
        n = seed.n
        for mask in range(1, 1 << k):
            for sector in sectors:
                rows = lx if sector == "x" else lz
                word = 0
                for j in range(k):
                    if mask >> j & 1:
                        word ^= rows[j]
                new_row = BitMatrix.from_ints([word], n)
                if sector == "x":
                    candidate = CssCode(BitMatrix.vstack(seed.hx, new_row), seed.hz)
                else:
                    candidate = CssCode(seed.hx, BitMatrix.vstack(seed.hz, new_row))
                candidate = oriented(candidate)
                form = canonical_form(candidate, config)
                if form not in found:
                    found[form] = candidate
    return found


def extend_stabilizer_codes(seeds: Sequence[StabilizerCode],
                            config: Optional[QecConfig] = None) -> Dict[CanonicalForm, StabilizerCode]:
    """
    One extension step for general stabilizer codes: append any of the 4^{k+1}-1 nontrivial
    logical Paulis of a dimension-(k+1) seed as a new stabilizer.

    Returns:
        Canonical form -> representative, in first-found order
    """
    found: Dict[CanonicalForm, StabilizerCode] = {}
    for seed in seeds:
        if seed.k == 0:
            continue
        logicals = seed.q.row_ints()
        for mask in range(1, 1 << len(logicals)):
            word = 0
            for j, row in enumerate(logicals):
                if mask >> j & 1:
                    word ^= row
            candidate = StabilizerCode(BitMatrix.vstack(seed.h, BitMatrix.from_ints([word], 2 * seed.n)))
            form = canonical_form(candidate, config)
            if form not in found:
                found[form] = candidate
    return found


def enumerate_all(n: int, k_min: int = 1, config: Optional[QecConfig] = None, css: bool = True) -> CodeDatabase:
    """
    All ΠH classes of CSS codes (or, with css=False, of all stabilizer codes) on n qubits
    with k_min <= k < n.

    Args:
        n: Block length
        k_min: Smallest k kept
        config: Settings (enumerate_max_n bounds n, stabilizer_enumerate_max_n when css=False)
        css: Restrict to CSS codes

    Returns:
        CodeDatabase with distances recorded

    Raises:
        CutoffExceeded: If n is over the enumeration limit

    Example:
        >>> db = enumerate_all(4)
        >>> len(db.layer(4, 2))
        15
    """
    config = config or default_config
    if css:
        config.check_limit("enumeration", n, "enumerate_max_n")
        layer: List[Any] = [CssCode(BitMatrix.zeros(0, n), BitMatrix.zeros(0, n), name=f"[[{n},{n}]]")]
    else:
        config.check_limit("stabilizer enumeration", n, "stabilizer_enumerate_max_n")
        layer = [StabilizerCode(BitMatrix.zeros(0, 2 * n), BitMatrix.identity(2 * n), name=f"[[{n},{n}]]")]
    kind = "CSS" if css else "stabilizer"
    logger.info(f"Enumerating {kind} codes on n={n} qubits down to k={k_min}")
    db = CodeDatabase()
    for k in range(n - 1, max(k_min, 1) - 1, -1):
        found = extend_codes(layer, config=config) if css else extend_stabilizer_codes(layer, config)
        for form, code in found.items():
            db.add(code, form)
        layer = list(found.values())
        logger.debug(f"({n},{k}) {kind} layer: {len(layer)} classes")
    logger.success(f"Enumerated {len(db)} {kind} classes on n={n}")
    return db


def filter_phantom(db: CodeDatabase, min_distance: int = 2, method: str = "automorphism",
                   solver: Optional[Any] = None, config: Optional[QecConfig] = None) -> pd.DataFrame:
    """
    Weak-phantom stratification M, M[K_1..K_k] of a database.

    The level of every class is computed from its permutation automorphisms; with
    method="sat" each level is cross-checked by the SAT weak-phantom sweep.

    Returns:
        Counts DataFrame (see CodeDatabase.counts)

    Raises:
        ValueError: On an unknown method or a non-CSS database
        RuntimeError: If the SAT level disagrees with the automorphism level
    """
    from .phantom import weak_phantom_level, weak_phantom_level_sat

    if method not in ("automorphism", "sat"):
        raise ValueError(f"Unknown phantom filter method: {method}")
    config = config or default_config
    logger.info(f"Filtering {len(db)} classes for phantomness ({method})")
    for (n, k), layer in sorted(db.layers.items()):
        for form, entry in list(layer.items()):
            if not isinstance(entry.code, CssCode):
                raise ValueError("Phantom filtering needs a CSS code database")
            if entry.d < min_distance or k < 1:
                continue
            level = weak_phantom_level(entry.code, config=config)
            if method == "sat":
                sat_level = weak_phantom_level_sat(entry.code, solver, config)
                if sat_level is not None and sat_level != level:
                    logger.error(f"Phantom levels disagree for {entry.code}: {sat_level} vs {level}")
                    raise RuntimeError("SAT and automorphism phantom levels disagree")
            db.set_level(n, k, form, level)
    return db.counts(min_distance=min_distance)
