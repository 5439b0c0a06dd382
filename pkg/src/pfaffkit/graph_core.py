"""Graph representation, text formats, the named-graph catalog and the two
structural transformations used by the closure checks (even subdivision and
odd-cycle contraction).

Vertices are always ``0..n-1``.  Edges are stored as ``(u, v)`` with ``u < v``
in lexicographic order; the position of an edge in that order is its *edge
index*, and every bit vector in the package is indexed by it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Graph",
    "GraphFormatError",
    "CatalogEntry",
    "CATALOG_NAMES",
    "parse_graph6",
    "to_graph6",
    "parse_edge_list",
    "to_edge_list",
    "to_dot",
    "catalog_graph",
    "even_subdivide",
    "contract_odd_cycle",
    "delete_vertices",
    "cycle_graph",
    "path_graph",
    "complete_graph",
    "disjoint_union",
]


class GraphFormatError(ValueError):
    """Raised for malformed graph text.  ``offset`` is a byte/line position."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
        self.offset = offset


Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _adj: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(norm)})
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], n: int | None = None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_index(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"({u}, {v}) is not an edge") from None

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def edge_mask(self, edges: Iterable[Sequence[int]]) -> int:
        mask = 0
        for u, v in edges:
            mask |= 1 << self.edge_index(u, v)
        return mask

    def edges_of_mask(self, mask: int) -> list[Edge]:
        return [e for i, e in enumerate(self.edges) if mask >> i & 1]

    def remove_edges(self, removed: Iterable[Sequence[int]]) -> "Graph":
        drop = {tuple(sorted(e)) for e in removed}
        missing = [e for e in drop if e not in self._index]
        if missing:
            raise KeyError(f"not edges of the graph: {sorted(missing)}")
        return Graph(self.n, tuple(e for e in self.edges if e not in drop))

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def bipartition(self) -> list[int] | None:
        """2-colouring as a list of 0/1 per vertex, or None for non-bipartite graphs."""
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self._adj[v]:
                    if color[w] < 0:
                        color[w] = 1 - color[v]
                        stack.append(w)
                    elif color[w] == color[v]:
                        return None
        return color

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    def is_cycle(self, seq: Sequence[int]) -> bool:
        """True if ``seq`` (without repeated endpoint) is a simple cycle of this graph."""
        k = len(seq)
        if k < 3 or len(set(seq)) != k:
            return False
        if any(not (0 <= v < self.n) for v in seq):
            return False
        return all(self.has_edge(seq[i], seq[(i + 1) % k]) for i in range(k))


def cycle_edges(seq: Sequence[int]) -> list[Edge]:
    k = len(seq)
    return [(seq[i], seq[(i + 1) % k]) for i in range(k)]


# --------------------------------------------------------------------------
# small constructors

def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph(off, tuple(edges))


# --------------------------------------------------------------------------
# graph6

def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _g6_size(g.n) + body


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string.  A ``>>graph6<<`` header and a trailing
    newline are accepted; anything else out of place raises
    :class:`GraphFormatError` with the offending offset."""
    data = text
    base = 0
    if data.startswith(">>graph6<<"):
        data = data[10:]
        base = 10
    if data.endswith("\n"):
        data = data[:-1]
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"character {ch!r} outside graph6 range", base + i)
    if not data:
        raise GraphFormatError("empty input", base)
    if data[0] != "~":
        n, pos = ord(data[0]) - 63, 1
    elif len(data) > 1 and data[1] == "~":
        if len(data) < 8:
            raise GraphFormatError("truncated size header", base + len(data))
        n = 0
        for ch in data[2:8]:
            n = (n << 6) | (ord(ch) - 63)
        pos = 8
    else:
        if len(data) < 4:
            raise GraphFormatError("truncated size header", base + len(data))
        n = 0
        for ch in data[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        pos = 4
    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nchars:
        raise GraphFormatError(
            f"expected {nchars} adjacency characters, got {len(body)}", base + len(data)
        )
    if len(body) > nchars:
        raise GraphFormatError("trailing garbage", base + pos + nchars)
    value = 0
    for ch in body:
        value = (value << 6) | (ord(ch) - 63)
    total = 6 * nchars
    pad = total - nbits
    if pad and value & ((1 << pad) - 1):
        raise GraphFormatError("nonzero padding bits", base + len(data) - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if value >> (total - 1 - k) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, tuple(edges))


# --------------------------------------------------------------------------
# edge lists and DOT

def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines; an optional first line ``n <count>`` fixes the
    vertex count.  Blank lines and ``#`` comments are ignored."""
    n = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if first and tokens[0] == "n":
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise GraphFormatError("bad vertex-count line", lineno)
            n = int(tokens[1])
            first = False
            continue
        first = False
        if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
            raise GraphFormatError(f"expected two nonnegative integers, got {line!r}", lineno)
        u, v = int(tokens[0]), int(tokens[1])
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append(key)
    top = 1 + max((v for e in edges for v in e), default=-1)
    if n is None:
        n = top
    elif top > n:
        raise GraphFormatError(f"vertex {top - 1} exceeds declared count {n}")
    return Graph(n, tuple(edges))


def to_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, orientation_bits: int | None = None,
           labels: Sequence[str] | None = None, name: str = "G") -> str:
    """DOT text; with ``orientation_bits`` the edges are emitted as arcs
    (bit 0: lower -> higher endpoint, bit 1: reversed)."""
    directed = orientation_bits is not None
    lab = labels if labels is not None else [str(v) for v in range(g.n)]
    out = [f"{'digraph' if directed else 'graph'} {name} {{"]
    for v in range(g.n):
        out.append(f'  {v} [label="{lab[v]}"];')
    for i, (u, v) in enumerate(g.edges):
        if directed:
            a, b = (v, u) if orientation_bits >> i & 1 else (u, v)
            out.append(f"  {a} -> {b};")
        else:
            out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# catalog

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: Graph
    labels: tuple[str, ...]
    factors: Mapping[str, frozenset]
    reference_orientation: int | None = None
    cycle_families: Mapping[str, tuple[tuple[int, ...], ...]] = field(default_factory=dict)
    edges: Mapping[str, Edge] = field(default_factory=dict)
    cycles: Mapping[str, tuple[int, ...]] = field(default_factory=dict)

    def vertex(self, label: str) -> int:
        return self.labels.index(str(label))

    def factor_mask(self, name: str) -> int:
        return self.graph.edge_mask(self.factors[name])


CATALOG_NAMES = ("wagner", "cubeplex", "twinplex", "k33", "petersen")


class _Labeled:
    def __init__(self, labels: Sequence[str]):
        self.labels = tuple(labels)
        self.idx = {s: i for i, s in enumerate(self.labels)}

    def e(self, a, b) -> Edge:
        u, v = self.idx[str(a)], self.idx[str(b)]
        return (u, v) if u < v else (v, u)

    def seq(self, items) -> tuple[int, ...]:
        vs = [self.idx[str(x)] for x in items]
        if len(vs) > 1 and vs[0] == vs[-1]:
            vs = vs[:-1]
        return tuple(vs)

    def graph(self, pairs) -> Graph:
        return Graph(len(self.labels), tuple(self.e(a, b) for a, b in pairs))

    def orientation(self, g: Graph, arcs) -> int:
        bits = 0
        for a, b in arcs:
            u, v = self.idx[str(a)], self.idx[str(b)]
            if u > v:
                bits |= 1 << g.edge_index(u, v)
            else:
                g.edge_index(u, v)
        if len(arcs) != g.m:
            raise AssertionError("orientation must list every edge once")
        return bits


def _wagner() -> CatalogEntry:
    L = _Labeled("12345678")
    pairs = [(i, i % 8 + 1) for i in range(1, 9)] + [(1, 5), (2, 6), (3, 7), (4, 8)]
    g = L.graph(pairs)
    return CatalogEntry(
        name="wagner",
        graph=g,
        labels=L.labels,
        factors={
            "F1": frozenset(L.e(*p) for p in [(1, 5), (2, 6), (3, 7), (4, 8)]),
            "F2": frozenset(L.e(*p) for p in [(1, 2), (3, 4), (5, 6), (7, 8)]),
        },
        edges={"e": L.e(1, 8), "f": L.e(4, 5)},
        cycles={
            "C1": L.seq("12345678"),
            "C2": L.seq("12654378"),
        },
    )


def _cubeplex() -> CatalogEntry:
    L = _Labeled("abcdefghijkl")
    # reference arcs: rim, then chords
    arcs = [("a", "b"), ("c", "b"), ("c", "d"), ("d", "e"), ("f", "e"), ("f", "g"),
            ("g", "h"), ("h", "i"), ("j", "i"), ("j", "k"), ("l", "k"), ("a", "l"),
            ("d", "a"), ("b", "g"), ("i", "c"), ("e", "j"), ("l", "f"), ("k", "h")]
    g = L.graph(arcs)
    family = tuple(L.seq(c) for c in [
        "adcijeflkhgba",
        "adejkhicbgfla",
        "bgflkhicb",
        "adcijefla",
        "adejkhgba",
    ])
    return CatalogEntry(
        name="cubeplex",
        graph=g,
        labels=L.labels,
        factors={"F1": frozenset(L.e(*p) for p in ["ad", "bg", "ic", "je", "hk", "fl"])},
        reference_orientation=L.orientation(g, arcs),
        cycle_families={"A": family},
        edges={"r1": L.e("c", "i"), "r2": L.e("f", "l")},
    )


def _twinplex() -> CatalogEntry:
    L = _Labeled("abcdefghijkl")
    arcs = [("a", "b"), ("b", "c"), ("d", "c"), ("e", "d"), ("f", "e"), ("g", "f"),
            ("g", "h"), ("h", "i"), ("j", "i"), ("k", "j"), ("l", "k"), ("a", "l"),
            ("i", "a"), ("b", "f"), ("c", "j"), ("h", "d"), ("e", "l"), ("k", "g")]
    g = L.graph(arcs)
    family = tuple(L.seq(c) for c in [
        "abfelkghdcjia",
        "hgfelkjih",
        "abfedcjia",
        "abcdhgkla",
        "abcdefghijkla",
    ])
    return CatalogEntry(
        name="twinplex",
        graph=g,
        labels=L.labels,
        factors={"F2": frozenset(L.e(*p) for p in ["ab", "cd", "ef", "gh", "ij", "kl"])},
        reference_orientation=L.orientation(g, arcs),
        cycle_families={"A": family},
        edges={"r1": L.e("i", "j"), "r2": L.e("e", "f")},
    )


def _k33() -> CatalogEntry:
    L = _Labeled("123456")
    arcs = [(1, 5), (1, 6), (3, 4), (3, 5), (1, 4), (2, 4), (2, 5), (2, 6), (3, 6)]
    g = L.graph(arcs)
    family = tuple(L.seq(c) for c in [
        [1, 4, 2, 5, 3, 6, 1],
        [1, 4, 3, 6, 2, 5, 1],
        [1, 4, 2, 5, 1],
        [1, 4, 3, 6, 1],
        [2, 5, 3, 6, 2],
    ])
    return CatalogEntry(
        name="k33",
        graph=g,
        labels=L.labels,
        factors={"F3": frozenset(L.e(*p) for p in [(1, 4), (2, 5), (3, 6)])},
        reference_orientation=L.orientation(g, arcs),
        cycle_families={"A": family},
    )


def _petersen() -> CatalogEntry:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    g = Graph(10, tuple(outer + spokes + inner))
    return CatalogEntry(
        name="petersen",
        graph=g,
        labels=tuple(str(i) for i in range(10)),
        factors={"S": frozenset(spokes)},
    )


_BUILDERS = {
    "wagner": _wagner,
    "cubeplex": _cubeplex,
    "twinplex": _twinplex,
    "k33": _k33,
    "petersen": _petersen,
}


def catalog_graph(name: str) -> CatalogEntry:
    try:
        builder = _BUILDERS[name.lower()]
    except KeyError:
        raise KeyError(f"unknown catalog graph {name!r}; choose from {', '.join(CATALOG_NAMES)}") from None
    return builder()


# --------------------------------------------------------------------------
# transformations

@dataclass(frozen=True)
class Subdivision:
    graph: Graph
    provenance: tuple[int, ...]   # derived edge index -> source edge index
    paths: Mapping[int, tuple[int, ...]]   # source edge index -> vertex path in derived graph


def even_subdivide(g: Graph, plan: Mapping[Sequence[int], int]) -> Subdivision:
    """Replace each planned edge ``(u, v)`` by a ``u``-``v`` path with ``2k``
    new internal vertices.  ``plan`` may be keyed by endpoint pairs or by
    edge index."""
    ks: dict[int, int] = {}
    for key, k in plan.items():
        if isinstance(key, int):
            if not 0 <= key < g.m:
                raise KeyError(f"edge index {key} out of range")
            i = key
        else:
            i = g.edge_index(*key)
        if k < 0:
            raise ValueError("subdivision count must be nonnegative")
        ks[i] = int(k)
    n = g.n
    new_edges: list[Edge] = []
    source: list[int] = []
    paths = {}
    for i, (u, v) in enumerate(g.edges):
        k = ks.get(i, 0)
        inner = list(range(n, n + 2 * k))
        n += 2 * k
        path = (u, *inner, v)
        paths[i] = path
        for a, b in zip(path, path[1:]):
            new_edges.append((a, b))
            source.append(i)
    h = Graph(n, tuple(new_edges))
    prov = [0] * h.m
    for (a, b), i in zip(new_edges, source):
        prov[h.edge_index(a, b)] = i
    return Subdivision(h, tuple(prov), paths)


@dataclass(frozen=True)
class Contraction:
    graph: Graph
    vertex_map: tuple[int, ...]   # old vertex -> new vertex
    merged_parallel: bool          # True if simplification dropped parallel edges


def contract_odd_cycle(g: Graph, cycle: Sequence[int]) -> Contraction:
    """Contract an odd simple cycle to a single vertex (numbered last).

    Loops vanish and parallel edges are merged; ``merged_parallel`` records
    whether the latter happened."""
    cycle = list(cycle)
    if not g.is_cycle(cycle):
        raise ValueError(f"{cycle} is not a simple cycle of the graph")
    if len(cycle) % 2 == 0:
        raise ValueError("cycle has even length")
    on = set(cycle)
    keep = [v for v in range(g.n) if v not in on]
    new_id = {v: i for i, v in enumerate(keep)}
    hub = len(keep)
    vmap = tuple(new_id.get(v, hub) for v in range(g.n))
    seen: set[Edge] = set()
    merged = False
    for u, v in g.edges:
        a, b = vmap[u], vmap[v]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        if key in seen:
            merged = True
            continue
        seen.add(key)
    return Contraction(Graph(hub + 1, tuple(sorted(seen))), vmap, merged)


@dataclass(frozen=True)
class InducedSubgraph:
    graph: Graph
    vertices: tuple[int, ...]   # new vertex -> old vertex


def delete_vertices(g: Graph, removed: Iterable[int]) -> InducedSubgraph:
    gone = set(removed)
    if any(not 0 <= v < g.n for v in gone):
        raise ValueError("vertex out of range")
    keep = tuple(v for v in range(g.n) if v not in gone)
    pos = {v: i for i, v in enumerate(keep)}
    edges = tuple((pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos)
    return InducedSubgraph(Graph(len(keep), edges), keep)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> InducedSubgraph:
    keep = set(vertices)
    return delete_vertices(g, [v for v in range(g.n) if v not in keep])
