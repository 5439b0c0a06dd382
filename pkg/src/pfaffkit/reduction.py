"""Generalized Wagner graphs, central Wagner subgraphs and bounded
reduction search (odd-cycle contractions toward K3,3, the cubeplex or the
twinplex, up to even subdivision)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .cycles import AlternatingCycle, are_skew, enumerate_alternating_cycles, enumerate_simple_cycles, is_alternating
from .graph_core import Graph, catalog_graph, contract_odd_cycle, induced_subgraph, to_graph6, parse_graph6
from .matching import (
    OneFactor,
    PreconditionError,
    allowed_edges,
    is_one_extendable,
    iter_one_factors,
)
from .pfaffian import DEFAULT_SEARCH_BUDGET, SearchBudgetExhausted, find_even_orientation, find_simply_bad

__all__ = [
    "WagnerWitness",
    "ReductionTrace",
    "DEFAULT_TARGETS",
    "verify_wagner_witness",
    "generalized_wagner_witness",
    "central_wagner_subgraph",
    "is_isomorphic",
    "suppress_even_paths",
    "matches_target",
    "reduction_search",
    "replay_trace",
    "verify_simply_bad_closure",
]

ISO_VERTEX_LIMIT = 16
MAX_REDUCTION_DEPTH = 4


# --------------------------------------------------------------------------
# generalized Wagner graphs

@dataclass(frozen=True)
class WagnerWitness:
    graph: Graph
    e: tuple[int, int]
    f: tuple[int, int]
    factor: OneFactor            # 1-factor of G - {e, f}, stored on G
    c1: AlternatingCycle
    c2: AlternatingCycle

    @property
    def skew(self) -> bool:
        return are_skew(self.e, self.f, self.c1, self.c2)


def verify_wagner_witness(w: WagnerWitness) -> bool:
    g = w.graph
    if len({*w.e, *w.f}) != 4:
        return False
    if not (g.has_edge(*w.e) and g.has_edge(*w.f)):
        return False
    if not is_one_extendable(g) or g.is_bipartite():
        return False
    rest = g.remove_edges([w.e, w.f])
    if not rest.is_bipartite() or not is_one_extendable(rest):
        return False
    if w.factor.graph != g or w.e in w.factor or w.f in w.factor:
        return False
    for c in (w.c1, w.c2):
        if not is_alternating(g, w.factor, c.vertices):
            return False
        if not (c.mask >> g.edge_index(*w.e) & 1 and c.mask >> g.edge_index(*w.f) & 1):
            return False
    return w.skew


def _skew_pair(g: Graph, factor: OneFactor, e, f):
    ie, iff = g.edge_index(*e), g.edge_index(*f)
    through = [c for c in enumerate_alternating_cycles(g, factor)
               if c.mask >> ie & 1 and c.mask >> iff & 1]
    for c1, c2 in combinations(through, 2):
        if are_skew(e, f, c1, c2):
            return c1, c2
    return None


def generalized_wagner_witness(g: Graph, factors: Sequence[OneFactor] | None = None) -> WagnerWitness | None:
    """First witness of membership in the generalized Wagner class.

    Edge pairs are scanned in lexicographic index order, then the 1-factors
    of ``G - R`` (or only ``factors``, when given), then pairs of
    alternating cycles through both removed edges."""
    if g.is_bipartite() or not is_one_extendable(g):
        return None
    for i, j in combinations(range(g.m), 2):
        e, f = g.edges[i], g.edges[j]
        if len({*e, *f}) != 4:
            continue
        rest = g.remove_edges([e, f])
        if not rest.is_bipartite() or not is_one_extendable(rest):
            continue
        if factors is None:
            cands = [OneFactor.from_edges(g, rest.edges_of_mask(mask)) for mask in iter_one_factors(rest)]
        else:
            cands = [F for F in factors if e not in F and f not in F]
        for factor in cands:
            pair = _skew_pair(g, factor, e, f)
            if pair is not None:
                return WagnerWitness(g, e, f, factor, *pair)
    return None


def _vertex_sets_by_complement(factor: OneFactor):
    """Unions of factor edges to delete, smallest first (empty set first)."""
    pairs = [tuple(e) for e in factor.edges]
    for size in range(len(pairs) + 1):
        for removed in combinations(pairs, size):
            yield [v for e in removed for v in e]


@dataclass(frozen=True)
class CentralWagner:
    vertices: tuple[int, ...]      # vertices of G0 in G, in G0 order
    subgraph: Graph                # G0, relabelled 0..k-1 (not necessarily induced)
    witness: WagnerWitness         # its factor is F restricted to G0
    candidates_tried: int


def _colorings(pairs: Sequence[tuple[int, int]]):
    """2-colourings (as vertex -> side maps) splitting every pair; the first
    pair is pinned to break the global swap symmetry."""
    if not pairs:
        return
    for bits in range(1 << (len(pairs) - 1)):
        side = {}
        for k, (u, v) in enumerate(pairs):
            flip = bits >> (k - 1) & 1 if k else 0
            side[u], side[v] = flip, 1 - flip
        yield side


def central_wagner_subgraph(g: Graph, factor: OneFactor,
                            budget: int = DEFAULT_SEARCH_BUDGET) -> CentralWagner | None:
    """Find an F-central subgraph ``G0`` in the generalized Wagner class
    whose Wagner factor is ``F`` restricted to ``G0``.

    Vertex sets keep everything except a union of F-edges (smallest removal
    first), so the rest of the graph keeps the induced 1-factor.  For each
    vertex set, each 2-colouring splitting the F-edges and each independent
    pair ``R`` of monochromatic edges, the candidate is the largest
    1-extendable subgraph of the bichromatic edges, plus ``R``.  Both
    1-extendability of ``G0`` and the existence of a skew cycle pair only
    grow with more edges, so nothing is missed for a given (set, colouring,
    R).  Both edges of ``R`` must be monochromatic: an even cycle through a
    bichromatic ``e`` and a monochromatic ``f`` would cross the colouring an
    odd number of times.  Each such triple costs one unit of ``budget``; ``None`` means the
    search ran to completion without a hit."""
    if find_even_orientation(g, factor) is not None:
        raise PreconditionError("graph has an even F-orientation")
    tried = 0
    for removed in _vertex_sets_by_complement(factor):
        gone = set(removed)
        keep = [v for v in range(g.n) if v not in gone]
        sub = induced_subgraph(g, keep)
        h = sub.graph
        pos = {v: i for i, v in enumerate(sub.vertices)}
        fstar = [(pos[u], pos[v]) for u, v in factor.edges if u in pos]
        for side in _colorings(fstar):
            cross = Graph(h.n, tuple(e for e in h.edges if side[e[0]] != side[e[1]]))
            base = cross.edges_of_mask(allowed_edges(cross))
            mono = [e for e in h.edges if side[e[0]] == side[e[1]]]
            for e, f in combinations(mono, 2):
                if len({*e, *f}) != 4:
                    continue
                if tried >= budget:
                    raise SearchBudgetExhausted(
                        f"no central Wagner subgraph within {budget} candidates")
                tried += 1
                g0 = Graph(h.n, tuple(base) + (e, f))
                if not is_one_extendable(g0):
                    continue
                f0 = OneFactor.from_edges(g0, fstar)
                pair = _skew_pair(g0, f0, e, f)
                if pair is not None:
                    w = WagnerWitness(g0, e, f, f0, *pair)
                    return CentralWagner(sub.vertices, g0, w, tried)
    return None


# --------------------------------------------------------------------------
# isomorphism

def _joint_colors(g: Graph, h: Graph) -> tuple[list[int], list[int]]:
    """Colour refinement run on both graphs with a shared colour table, so
    equal colours mean the same thing on either side."""
    cg, ch = g.degrees(), h.degrees()
    classes = len(set(cg) | set(ch))
    while True:
        sg = [(cg[v], tuple(sorted(cg[w] for w in g.neighbors(v)))) for v in range(g.n)]
        sh = [(ch[v], tuple(sorted(ch[w] for w in h.neighbors(v)))) for v in range(h.n)]
        table = {s: i for i, s in enumerate(sorted(set(sg) | set(sh)))}
        cg, ch = [table[s] for s in sg], [table[s] for s in sh]
        if len(table) == classes:
            return cg, ch
        classes = len(table)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Exact isomorphism test: colour refinement, then backtracking over
    vertices of matching colour."""
    if g.n > ISO_VERTEX_LIMIT or h.n > ISO_VERTEX_LIMIT:
        raise PreconditionError(f"isomorphism test limited to {ISO_VERTEX_LIMIT} vertices")
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    cg, ch = _joint_colors(g, h)
    if sorted(cg) != sorted(ch):
        return False
    order = sorted(range(g.n), key=lambda v: (sum(1 for u in range(g.n) if cg[u] == cg[v]), -g.degree(v)))
    # place vertices adjacent to already-placed ones early
    placed, seq = set(), []
    while len(seq) < g.n:
        best = max((v for v in order if v not in placed),
                   key=lambda v: (sum(1 for w in g.neighbors(v) if w in placed), -order.index(v)))
        seq.append(best)
        placed.add(best)
    gadj = [set(g.neighbors(v)) for v in range(g.n)]
    hadj = [set(h.neighbors(v)) for v in range(h.n)]
    image = [-1] * g.n
    used = [False] * h.n

    def extend(k: int) -> bool:
        if k == g.n:
            return True
        v = seq[k]
        for x in range(h.n):
            if used[x] or ch[x] != cg[v]:
                continue
            ok = True
            for u in seq[:k]:
                if (u in gadj[v]) != (image[u] in hadj[x]):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = x
            used[x] = True
            if extend(k + 1):
                return True
            used[x] = False
            image[v] = -1
        return False

    return extend(0)


def suppress_even_paths(g: Graph) -> Graph | None:
    """Undo an even subdivision: replace every maximal path through
    degree-2 vertices by one edge.  ``None`` if some path has an odd number
    of internal vertices or suppression would create a loop, a parallel edge
    or a bare cycle."""
    branch = [v for v in range(g.n) if g.degree(v) != 2]
    if len(branch) == g.n:
        return g
    if not branch:
        return None
    pos = {v: i for i, v in enumerate(branch)}
    seen_edges: set[tuple[int, int]] = set()
    new_edges: set[tuple[int, int]] = set()
    for b in branch:
        for w in g.neighbors(b):
            first = (min(b, w), max(b, w))
            if first in seen_edges:
                continue
            prev, cur, internal = b, w, 0
            seen_edges.add(first)
            while cur not in pos:
                internal += 1
                nxt = next(x for x in g.neighbors(cur) if x != prev)
                seen_edges.add((min(cur, nxt), max(cur, nxt)))
                prev, cur = cur, nxt
            if internal % 2 or cur == b:
                return None
            key = (min(pos[b], pos[cur]), max(pos[b], pos[cur]))
            if key in new_edges:
                return None
            new_edges.add(key)
    if len(seen_edges) != g.m:
        return None   # a component is a bare cycle
    return Graph(len(branch), tuple(sorted(new_edges)))


def matches_target(g: Graph, target: Graph) -> str | None:
    """``"isomorphic"``, ``"even-subdivision"`` or ``None``."""
    if g.n <= ISO_VERTEX_LIMIT and is_isomorphic(g, target):
        return "isomorphic"
    core = suppress_even_paths(g)
    if core is not None and core.n != g.n and core.n <= ISO_VERTEX_LIMIT and is_isomorphic(core, target):
        return "even-subdivision"
    return None


# --------------------------------------------------------------------------
# reduction search

def _default_targets() -> dict[str, Graph]:
    return {name: catalog_graph(name).graph for name in ("k33", "cubeplex", "twinplex")}


DEFAULT_TARGETS = _default_targets()


@dataclass(frozen=True)
class ReductionTrace:
    start: Graph
    steps: tuple[tuple[tuple[int, ...], Graph], ...]   # (contracted cycle, resulting graph)
    target: str
    match: str

    @property
    def final(self) -> Graph:
        return self.steps[-1][1] if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {
            "start": to_graph6(self.start),
            "steps": [{"cycle": list(c), "graph": to_graph6(h)} for c, h in self.steps],
            "target": self.target,
            "match": self.match,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ReductionTrace":
        steps = tuple((tuple(s["cycle"]), parse_graph6(s["graph"])) for s in data["steps"])
        return cls(parse_graph6(data["start"]), steps, data["target"], data["match"])


def reduction_search(g: Graph, targets: Mapping[str, Graph] | None = None,
                     max_depth: int = 2) -> ReductionTrace | None:
    """Depth-first search over odd-cycle contractions (shortest cycles
    first) for a graph isomorphic to a target or to an even subdivision of
    one."""
    if max_depth > MAX_REDUCTION_DEPTH:
        raise PreconditionError(f"max_depth is limited to {MAX_REDUCTION_DEPTH}")
    targets = dict(_default_targets() if targets is None else targets)
    profiles = {(t.n, t.m) for t in targets.values()}

    def hit(h: Graph):
        for name, t in targets.items():
            kind = matches_target(h, t)
            if kind:
                return name, kind
        return None

    seen: dict[str, int] = {}

    def search(h: Graph, depth: int, steps: list):
        found = hit(h)
        if found:
            return ReductionTrace(g, tuple(steps), *found)
        if depth == max_depth:
            return None
        for cyc in enumerate_simple_cycles(h, parity_filter=1):
            nxt = contract_odd_cycle(h, cyc).graph
            # contraction never increases n or m
            if all(nxt.n < tn or nxt.m < tm for tn, tm in profiles):
                continue
            key = to_graph6(nxt)
            if seen.get(key, max_depth + 1) <= depth + 1:
                continue
            seen[key] = depth + 1
            steps.append((cyc, nxt))
            res = search(nxt, depth + 1, steps)
            if res is not None:
                return res
            steps.pop()
        return None

    return search(g, 0, [])


def replay_trace(trace: ReductionTrace, targets: Mapping[str, Graph] | None = None) -> bool:
    """Re-apply every contraction and re-check the final match."""
    targets = _default_targets() if targets is None else targets
    h = trace.start
    for cyc, recorded in trace.steps:
        try:
            h = contract_odd_cycle(h, cyc).graph
        except ValueError:
            return False
        if h != recorded:
            return False
    target = targets.get(trace.target)
    return target is not None and matches_target(h, target) == trace.match


def verify_simply_bad_closure(g: Graph, trace: ReductionTrace,
                              budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    """Check the closure prediction: a graph reducible to a simply bad
    target is itself simply bad (confirmed by direct certificate search)."""
    if trace.start != g:
        raise PreconditionError("trace does not start at this graph")
    if not replay_trace(trace):
        raise PreconditionError("trace does not replay")
    return find_simply_bad(g, budget=budget) is not None
