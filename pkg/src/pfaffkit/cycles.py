"""F-alternating cycles, the orientation function and cycle families.

A cycle is a tuple of vertices without the repeated endpoint.  The canonical
form starts at the smallest vertex and continues to its smaller cycle
neighbour, so each cycle has exactly one canonical tuple.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf2 import parity
from .graph_core import Graph
from .matching import EnumerationCapExceeded, OneFactor, symmetric_difference_cycles

__all__ = [
    "Orientation",
    "AlternatingCycle",
    "CycleFamily",
    "DEFAULT_CYCLE_CAP",
    "canonical_cycle",
    "is_alternating",
    "enumerate_alternating_cycles",
    "enumerate_simple_cycles",
    "omega_path",
    "omega_cycle",
    "is_evenly_oriented",
    "are_skew",
    "family_from_factors",
    "is_zero_sum",
]

DEFAULT_CYCLE_CAP = 10**5


@dataclass(frozen=True)
class Orientation:
    """Direction bit per edge index: 0 runs lower -> higher endpoint, 1 reversed."""

    graph: Graph
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.graph.m:
            raise ValueError("orientation has bits beyond the edge count")

    @classmethod
    def random(cls, g: Graph, rng: random.Random) -> "Orientation":
        return cls(g, rng.getrandbits(g.m) if g.m else 0)

    @classmethod
    def from_arcs(cls, g: Graph, arcs: Iterable[Sequence[int]]) -> "Orientation":
        bits, seen = 0, 0
        for a, b in arcs:
            i = g.edge_index(a, b)
            seen |= 1 << i
            if a > b:
                bits |= 1 << i
        if seen != (1 << g.m) - 1:
            raise ValueError("arcs must cover every edge")
        return cls(g, bits)

    def flipped(self, mask: int) -> "Orientation":
        return Orientation(self.graph, self.bits ^ mask)

    def points(self, u: int, v: int) -> bool:
        """True if the edge {u, v} is directed u -> v."""
        i = self.graph.edge_index(u, v)
        return (u < v) != bool(self.bits >> i & 1)

    def arcs(self) -> list[tuple[int, int]]:
        return [(v, u) if self.bits >> i & 1 else (u, v) for i, (u, v) in enumerate(self.graph.edges)]

    def bitstring(self) -> str:
        return "".join(str(self.bits >> i & 1) for i in range(self.graph.m))

    @classmethod
    def from_bitstring(cls, g: Graph, s: str) -> "Orientation":
        if len(s) != g.m or set(s) - {"0", "1"}:
            raise ValueError(f"orientation string must be {g.m} characters of 0/1")
        return cls(g, sum(1 << i for i, ch in enumerate(s) if ch == "1"))


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    k = len(seq)
    i = min(range(k), key=seq.__getitem__)
    rot = list(seq[i:]) + list(seq[:i])
    if k > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


@dataclass(frozen=True)
class AlternatingCycle:
    vertices: tuple[int, ...]
    mask: int
    ascending: int   # parity of steps u -> v with u < v along ``vertices``

    @classmethod
    def from_vertices(cls, g: Graph, seq: Sequence[int]) -> "AlternatingCycle":
        seq = tuple(seq)
        if not g.is_cycle(seq):
            raise ValueError(f"{seq} is not a simple cycle of the graph")
        k = len(seq)
        mask, asc = 0, 0
        for i in range(k):
            a, b = seq[i], seq[(i + 1) % k]
            mask |= 1 << g.edge_index(a, b)
            asc ^= a < b
        return cls(seq, mask, asc)

    def __len__(self) -> int:
        return len(self.vertices)

    def omega(self, bits: int) -> int:
        # a step a -> b is forward iff (a < b) xor (edge bit set)
        return self.ascending ^ parity(bits & self.mask)


def is_alternating(g: Graph, factor: OneFactor, seq: Sequence[int]) -> bool:
    """Simple cycle whose edges alternate in and out of ``factor``."""
    k = len(seq)
    if k % 2 or not g.is_cycle(seq):
        return False
    flags = [factor.mate[seq[i]] == seq[(i + 1) % k] for i in range(k)]
    return all(flags[i] != flags[(i + 1) % k] for i in range(k))


def enumerate_alternating_cycles(g: Graph, factor: OneFactor,
                                 cap: int = DEFAULT_CYCLE_CAP) -> list[AlternatingCycle]:
    """All simple F-alternating cycles, canonical form, sorted by vertex tuple.

    Each cycle is discovered exactly once: from its smallest vertex ``s``,
    leaving along the matching edge at ``s`` and returning along a
    non-matching edge."""
    mate = factor.mate
    n = g.n
    nbrs = [[(w, g.edge_index(v, w)) for w in g.neighbors(v) if w != mate[v]] for v in range(n)]
    fidx = [g.edge_index(v, mate[v]) for v in range(n)]
    found: list[tuple[int, ...]] = []
    masks: list[int] = []
    on_path = [False] * n

    for s in range(n):
        m0 = mate[s]
        if m0 < s:
            continue
        path = [s, m0]
        on_path[s] = on_path[m0] = True

        def extend(x: int, mask: int):
            for w, i in nbrs[x]:
                if w == s:
                    if len(path) >= 4:
                        if len(found) >= cap:
                            raise EnumerationCapExceeded(f"more than {cap} alternating cycles")
                        found.append(tuple(path))
                        masks.append(mask | 1 << i)
                    continue
                if w < s or on_path[w]:
                    continue
                y = mate[w]
                if y < s:
                    continue
                path.append(w)
                path.append(y)
                on_path[w] = on_path[y] = True
                extend(y, mask | 1 << i | 1 << fidx[w])
                on_path[w] = on_path[y] = False
                path.pop()
                path.pop()

        extend(m0, 1 << fidx[s])
        on_path[s] = on_path[m0] = False

    cycles = []
    for seq, mask in zip(found, masks):
        canon = canonical_cycle(seq)
        k = len(canon)
        asc = 0
        for j in range(k):
            asc ^= canon[j] < canon[(j + 1) % k]
        cycles.append(AlternatingCycle(canon, mask, asc))
    cycles.sort(key=lambda c: c.vertices)
    return cycles


def enumerate_simple_cycles(g: Graph, parity_filter: int | None = None,
                            cap: int = DEFAULT_CYCLE_CAP) -> list[tuple[int, ...]]:
    """All simple cycles in canonical form, ordered by (length, tuple).
    ``parity_filter`` = 1 keeps odd cycles, 0 keeps even ones."""
    out: list[tuple[int, ...]] = []
    n = g.n
    on_path = [False] * n
    for s in range(n):
        path = [s]
        on_path[s] = True

        def extend(x: int):
            for w in g.neighbors(x):
                if w == s:
                    if len(path) >= 3 and path[1] < path[-1]:
                        if parity_filter is None or len(path) % 2 == parity_filter:
                            if len(out) >= cap:
                                raise EnumerationCapExceeded(f"more than {cap} cycles")
                            out.append(tuple(path))
                    continue
                if w < s or on_path[w]:
                    continue
                on_path[w] = True
                path.append(w)
                extend(w)
                path.pop()
                on_path[w] = False

        extend(s)
        on_path[s] = False
    out.sort(key=lambda c: (len(c), c))
    return out


def omega_path(orientation: Orientation, path: Sequence[int]) -> int:
    """Parity of the number of path edges directed along the walk."""
    g = orientation.graph
    count = 0
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"({a}, {b}) is not an edge")
        if orientation.points(a, b):
            count += 1
    return count & 1


def omega_cycle(orientation: Orientation, cycle) -> int:
    seq = cycle.vertices if isinstance(cycle, AlternatingCycle) else tuple(cycle)
    return omega_path(orientation, list(seq) + [seq[0]])


def is_evenly_oriented(orientation: Orientation, cycle) -> bool:
    return omega_cycle(orientation, cycle) == 0


def _traversal_order(seq: Sequence[int], e: Sequence[int], f: Sequence[int]) -> bool:
    """Walk ``seq`` so that ``e`` is traversed u1 -> u2; report whether ``f``
    is then traversed v1 -> v2."""
    k = len(seq)
    pos = {v: i for i, v in enumerate(seq)}
    u1, u2 = e
    v1, v2 = f
    for v in (u1, u2, v1, v2):
        if v not in pos:
            raise ValueError(f"vertex {v} is not on cycle {tuple(seq)}")
    if seq[(pos[u1] + 1) % k] == u2:
        step = 1
    elif seq[(pos[u1] - 1) % k] == u2:
        step = -1
    else:
        raise ValueError(f"edge {tuple(e)} does not lie on cycle {tuple(seq)}")
    if seq[(pos[v1] + step) % k] == v2:
        return True
    if seq[(pos[v1] - step) % k] == v2:
        return False
    raise ValueError(f"edge {tuple(f)} does not lie on cycle {tuple(seq)}")


def are_skew(e: Sequence[int], f: Sequence[int], c1, c2) -> bool:
    """True iff the independent edges ``e`` and ``f`` are traversed in
    matching directions on exactly one of the two cycles."""
    if len({*e, *f}) != 4:
        raise ValueError("edges must be independent (no shared endpoint)")
    s1 = c1.vertices if isinstance(c1, AlternatingCycle) else tuple(c1)
    s2 = c2.vertices if isinstance(c2, AlternatingCycle) else tuple(c2)
    return _traversal_order(s1, e, f) != _traversal_order(s2, e, f)


@dataclass(frozen=True)
class CycleFamily:
    """A multiset of F-alternating cycles, kept in insertion order."""

    factor: OneFactor
    cycles: tuple[AlternatingCycle, ...]

    @property
    def edge_sum(self) -> int:
        acc = 0
        for c in self.cycles:
            acc ^= c.mask
        return acc

    @property
    def zero_sum(self) -> bool:
        return self.edge_sum == 0

    def __len__(self) -> int:
        return len(self.cycles)

    def even_flags(self, bits: int) -> list[bool]:
        return [c.omega(bits) == 0 for c in self.cycles]


def family_from_factors(factor: OneFactor, others: Sequence[OneFactor]) -> CycleFamily:
    """Concatenate the cycles of ``F xor F_j`` over ``j``."""
    g = factor.graph
    cycles = []
    for other in others:
        if other.graph != g:
            raise ValueError("factors belong to different graphs")
        for seq in symmetric_difference_cycles(factor, other):
            cycles.append(AlternatingCycle.from_vertices(g, canonical_cycle(seq)))
    return CycleFamily(factor, tuple(cycles))


def is_zero_sum(family: CycleFamily) -> bool:
    return family.zero_sum
