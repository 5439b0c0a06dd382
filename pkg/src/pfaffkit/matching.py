"""Perfect matchings (1-factors) by exhaustive search, plus the
matching-theoretic predicates built on them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .graph_core import Graph, delete_vertices

__all__ = [
    "OneFactor",
    "EnumerationCapExceeded",
    "PreconditionError",
    "DEFAULT_FACTOR_CAP",
    "enumerate_one_factors",
    "iter_one_factors",
    "has_one_factor",
    "allowed_edges",
    "is_one_extendable",
    "is_central",
    "near_bipartite_witness",
    "is_near_bipartite_pair",
    "symmetric_difference_cycles",
    "factor_sign",
    "permutation_sign",
]

DEFAULT_FACTOR_CAP = 10**6


class EnumerationCapExceeded(RuntimeError):
    """An exhaustive enumeration hit its configured size cap."""


class PreconditionError(ValueError):
    """Input violates an operation's precondition (distinct from a 'no' answer)."""


@dataclass(frozen=True)
class OneFactor:
    """A perfect matching: edge-index bit vector plus the partner map."""

    graph: Graph
    mask: int
    mate: tuple[int, ...]

    @classmethod
    def from_mask(cls, g: Graph, mask: int) -> "OneFactor":
        mate = [-1] * g.n
        for i, (u, v) in enumerate(g.edges):
            if mask >> i & 1:
                if mate[u] >= 0 or mate[v] >= 0:
                    raise ValueError("edge set is not a matching")
                mate[u], mate[v] = v, u
        if -1 in mate:
            raise ValueError("edge set does not cover every vertex")
        return cls(g, mask, tuple(mate))

    @classmethod
    def from_edges(cls, g: Graph, edges: Iterable[Sequence[int]]) -> "OneFactor":
        return cls.from_mask(g, g.edge_mask(edges))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return self.graph.edges_of_mask(self.mask)

    @property
    def indices(self) -> list[int]:
        return [i for i in range(self.graph.m) if self.mask >> i & 1]

    def __contains__(self, edge) -> bool:
        u, v = edge
        return self.mate[u] == v


def iter_one_factors(g: Graph) -> Iterator[int]:
    """Yield 1-factor edge masks in lexicographic order of edge indices."""
    if g.n % 2:
        return
    adj_idx = [[(w, g.edge_index(v, w)) for w in g.neighbors(v) if w > v] for v in range(g.n)]
    covered = [False] * g.n

    def rec(start: int, mask: int):
        v = start
        while v < g.n and covered[v]:
            v += 1
        if v == g.n:
            yield mask
            return
        covered[v] = True
        for w, i in adj_idx[v]:
            if not covered[w]:
                covered[w] = True
                yield from rec(v + 1, mask | (1 << i))
                covered[w] = False
        covered[v] = False

    yield from rec(0, 0)


def enumerate_one_factors(g: Graph, cap: int = DEFAULT_FACTOR_CAP) -> list[OneFactor]:
    out = []
    for mask in iter_one_factors(g):
        if len(out) >= cap:
            raise EnumerationCapExceeded(f"more than {cap} 1-factors")
        out.append(OneFactor.from_mask(g, mask))
    return out


def has_one_factor(g: Graph) -> bool:
    return next(iter_one_factors(g), None) is not None


def allowed_edges(g: Graph) -> int:
    """Mask of edges lying in at least one 1-factor."""
    acc = 0
    for mask in iter_one_factors(g):
        acc |= mask
    return acc


def is_one_extendable(g: Graph) -> bool:
    return g.m > 0 and allowed_edges(g) == (1 << g.m) - 1


def is_central(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff deleting ``vertices`` leaves a graph with a 1-factor."""
    return has_one_factor(delete_vertices(g, vertices).graph)


def is_near_bipartite_pair(g: Graph, e: Sequence[int], f: Sequence[int]) -> bool:
    h = g.remove_edges([e, f])
    return h.is_bipartite() and is_one_extendable(h)


def near_bipartite_witness(g: Graph) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """First edge pair (lexicographic by index) whose removal leaves a
    bipartite 1-extendable graph.

    Raises :class:`PreconditionError` unless ``g`` is 1-extendable and not
    bipartite."""
    if g.is_bipartite():
        raise PreconditionError("graph is bipartite")
    if not is_one_extendable(g):
        raise PreconditionError("graph is not 1-extendable")
    for i, j in combinations(range(g.m), 2):
        e, f = g.edges[i], g.edges[j]
        if is_near_bipartite_pair(g, e, f):
            return e, f
    return None


def symmetric_difference_cycles(f1: OneFactor, f2: OneFactor) -> list[tuple[int, ...]]:
    """Cycles of ``F1 xor F2``; each starts at its smallest vertex and
    follows its ``F1`` edge first."""
    if f1.graph != f2.graph:
        raise ValueError("factors belong to different graphs")
    n = f1.graph.n
    seen = [False] * n
    cycles = []
    for s in range(n):
        if seen[s] or f1.mate[s] == f2.mate[s]:
            continue
        cyc = []
        v, use_first = s, True
        while True:
            seen[v] = True
            cyc.append(v)
            v = f1.mate[v] if use_first else f2.mate[v]
            use_first = not use_first
            if v == s:
                break
        cycles.append(tuple(cyc))
    return cycles


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of ``0..k-1`` given in one-line notation."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def factor_sign(orientation_bits: int, factor: OneFactor) -> int:
    """Sign of a 1-factor relative to an orientation.

    Writing the pairs as ``(i1 j1 i2 j2 ...)``, this is the sign of that
    permutation of the vertex order times ``+1`` or ``-1`` per pair according
    to whether the pair's edge runs ``i -> j`` in the orientation.  Swapping
    ``i`` and ``j`` flips both factors, so the value is well defined."""
    g = factor.graph
    word = []
    sign = 1
    for i, (u, v) in enumerate(g.edges):
        if factor.mask >> i & 1:
            word.extend((u, v))
            if orientation_bits >> i & 1:   # edge runs v -> u
                sign = -sign
    return sign * permutation_sign(word)
