"""Even/odd F-orientations, Pfaffian testing and the odd F-set, bad and
simply-bad certificates, together with two independent oracles (orientation
brute force and the skew-adjacency determinant).

Everything is phrased as parity systems over GF(2).  For a 1-factor ``F``
let ``M`` be the cycle-by-edge incidence matrix of all F-alternating cycles
and ``w0`` the vector of their orientation parities under the reference
orientation ``D0`` (all edges lower -> higher index).  Reversing an edge set
``y`` changes the parities to ``w0 + M y``.  Hence

* an even F-orientation exists iff ``M y = w0`` is solvable,
* an odd F-orientation exists iff ``M y = w0 + 1`` is solvable,
* zero-sum families are the kernel vectors of ``M^T``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import networkx as nx
import numpy as np

from .cycles import (
    DEFAULT_CYCLE_CAP,
    AlternatingCycle,
    CycleFamily,
    Orientation,
    canonical_cycle,
    enumerate_alternating_cycles,
    family_from_factors,
)
from .gf2 import BitMatrix, kernel_basis, kernel_functional_witness, parity, popcount, solve
from .graph_core import Graph
from .matching import (
    DEFAULT_FACTOR_CAP,
    OneFactor,
    PreconditionError,
    enumerate_one_factors,
    factor_sign,
    iter_one_factors,
)

__all__ = [
    "OrientationSystem",
    "OddFSetCertificate",
    "BadCertificate",
    "SimplyBadCertificate",
    "PfaffianResult",
    "SearchBudgetExhausted",
    "DEFAULT_SEARCH_BUDGET",
    "build_orientation_system",
    "find_even_orientation",
    "find_odd_orientation",
    "is_pfaffian",
    "find_odd_f_set",
    "find_bad_certificate",
    "find_simply_bad_certificate",
    "is_bad",
    "find_simply_bad",
    "signed_factor_family",
    "brute_force_orientation",
    "brute_force_pfaffian",
    "determinant_sign_oracle",
    "bareiss_determinant",
]

DEFAULT_SEARCH_BUDGET = 10**4


class SearchBudgetExhausted(RuntimeError):
    """A bounded search ran out of candidates before reaching a verdict."""


@dataclass(frozen=True)
class OrientationSystem:
    graph: Graph
    factor: OneFactor
    cycles: tuple[AlternatingCycle, ...]
    reference: int   # orientation bits of D0
    parities: int    # bit j = omega of cycle j under D0

    @property
    def matrix(self) -> BitMatrix:
        """Rows are cycles, columns are edges."""
        return BitMatrix(tuple(c.mask for c in self.cycles), self.graph.m)

    @property
    def transposed(self) -> BitMatrix:
        """Rows are edges, columns are cycles."""
        return self.matrix.transpose()

    @property
    def all_ones(self) -> int:
        return (1 << len(self.cycles)) - 1

    def family(self, selector: int) -> CycleFamily:
        chosen = tuple(c for j, c in enumerate(self.cycles) if selector >> j & 1)
        return CycleFamily(self.factor, chosen)

    def parities_under(self, bits: int) -> int:
        out = 0
        for j, c in enumerate(self.cycles):
            if c.omega(bits):
                out |= 1 << j
        return out


def build_orientation_system(g: Graph, factor: OneFactor, reference: int = 0,
                             cap: int = DEFAULT_CYCLE_CAP) -> OrientationSystem:
    if factor.graph != g:
        raise ValueError("factor belongs to another graph")
    cycles = tuple(enumerate_alternating_cycles(g, factor, cap=cap))
    par = 0
    for j, c in enumerate(cycles):
        if c.omega(reference):
            par |= 1 << j
    return OrientationSystem(g, factor, cycles, reference, par)


def _solve_orientation(system: OrientationSystem, target: int) -> Orientation | None:
    """Orientation whose cycle parities equal ``target`` (bit j for cycle j)."""
    sol = solve(system.matrix, system.parities ^ target)
    if sol is None:
        return None
    bits = system.reference ^ sol[0]
    if system.parities_under(bits) != target:
        raise AssertionError("solver returned an orientation failing its own targets")
    return Orientation(system.graph, bits)


def _system_for(g: Graph, factor: OneFactor, system: OrientationSystem | None,
                cap: int) -> OrientationSystem:
    if system is not None:
        return system
    return build_orientation_system(g, factor, cap=cap)


def find_even_orientation(g: Graph, factor: OneFactor, *, system: OrientationSystem | None = None,
                          cap: int = DEFAULT_CYCLE_CAP) -> Orientation | None:
    system = _system_for(g, factor, system, cap)
    return _solve_orientation(system, 0)


def find_odd_orientation(g: Graph, factor: OneFactor, *, system: OrientationSystem | None = None,
                         cap: int = DEFAULT_CYCLE_CAP) -> Orientation | None:
    system = _system_for(g, factor, system, cap)
    return _solve_orientation(system, system.all_ones)


@dataclass(frozen=True)
class PfaffianResult:
    pfaffian: bool
    witness: Orientation | None
    factor: OneFactor | None
    vacuous: bool = False

    def __bool__(self) -> bool:
        return self.pfaffian


def _first_factor(g: Graph) -> OneFactor | None:
    mask = next(iter_one_factors(g), None)
    return None if mask is None else OneFactor.from_mask(g, mask)


def is_pfaffian(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> PfaffianResult:
    """Decide the Pfaffian property from the first 1-factor.

    Graphs without a 1-factor (and the empty graph, whose only 1-factor is
    empty) have no alternating cycles and are reported Pfaffian with
    ``vacuous=True``."""
    factor = _first_factor(g)
    if factor is None or g.n == 0:
        return PfaffianResult(True, Orientation(g, 0), factor, vacuous=True)
    witness = find_odd_orientation(g, factor, cap=cap)
    return PfaffianResult(witness is not None, witness, factor)


# --------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class OddFSetCertificate:
    factor: OneFactor
    family: CycleFamily
    kind = "odd-f-set"

    @property
    def graph(self) -> Graph:
        return self.factor.graph


@dataclass(frozen=True)
class BadCertificate:
    factor: OneFactor
    family: CycleFamily
    orientation: Orientation
    flags: tuple[bool, ...]   # True = evenly oriented
    kind = "bad"

    @property
    def graph(self) -> Graph:
        return self.factor.graph


@dataclass(frozen=True)
class SimplyBadCertificate:
    factor: OneFactor
    family: CycleFamily
    orientation: Orientation
    kind = "simply-bad"

    @property
    def graph(self) -> Graph:
        return self.factor.graph

    @property
    def flags(self) -> tuple[bool, ...]:
        return tuple(self.family.even_flags(self.orientation.bits))


def find_odd_f_set(g: Graph, factor: OneFactor, *, system: OrientationSystem | None = None,
                   cap: int = DEFAULT_CYCLE_CAP) -> OddFSetCertificate | None:
    """A zero-sum family of odd size, or None if every zero-sum family is even."""
    system = _system_for(g, factor, system, cap)
    x = kernel_functional_witness(system.transposed, system.all_ones)
    if x is None:
        return None
    return OddFSetCertificate(factor, system.family(x))


def find_bad_certificate(g: Graph, factor: OneFactor, *, system: OrientationSystem | None = None,
                         cap: int = DEFAULT_CYCLE_CAP) -> BadCertificate | None:
    """Zero-sum family with an odd number of evenly oriented members under D0.

    The evenly-oriented count of a zero-sum family has the same parity under
    every orientation, so ``None`` rules out badness for this factor."""
    system = _system_for(g, factor, system, cap)
    evens = system.all_ones ^ system.parities
    x = kernel_functional_witness(system.transposed, evens)
    if x is None:
        return None
    family = system.family(x)
    orient = Orientation(g, system.reference)
    return BadCertificate(factor, family, orient, tuple(family.even_flags(orient.bits)))


def _all_even_orientation(system: OrientationSystem, selector: int) -> int | None:
    """Orientation bits making every selected cycle evenly oriented, if any."""
    idx = [j for j in range(len(system.cycles)) if selector >> j & 1]
    sub = system.matrix.select_rows(idx)
    rhs = 0
    for k, j in enumerate(idx):
        if system.parities >> j & 1:
            rhs |= 1 << k
    sol = solve(sub, rhs)
    if sol is None:
        return None
    return system.reference ^ sol[0]


def _simply_bad_candidates(basis: list[int], rng: np.random.Generator):
    yield from basis
    for a, b in combinations(basis, 2):
        yield a ^ b
    if not basis:
        return
    while True:
        acc = 0
        for v, pick in zip(basis, rng.integers(0, 2, size=len(basis))):
            if pick:
                acc ^= v
        yield acc


def find_simply_bad_certificate(g: Graph, factor: OneFactor, *,
                                system: OrientationSystem | None = None,
                                budget: int = DEFAULT_SEARCH_BUDGET, seed: int = 0,
                                cap: int = DEFAULT_CYCLE_CAP) -> SimplyBadCertificate | None:
    """Odd F-set together with an orientation making all its members even.

    Candidates are odd-size kernel vectors of ``M^T``: basis vectors, then
    pairwise sums, then seeded random combinations, at most ``budget`` of
    them.  A candidate succeeds when its all-even subsystem is consistent.

    Returns ``None`` only when the answer is provably negative: no odd
    F-set exists, or the graph is Pfaffian (an odd F-set can never be
    all-even then).  Running out of candidates raises
    :class:`SearchBudgetExhausted`."""
    system = _system_for(g, factor, system, cap)
    mt = system.transposed
    if kernel_functional_witness(mt, system.all_ones) is None:
        return None
    if kernel_functional_witness(mt, system.all_ones ^ system.parities) is None:
        return None
    even = _solve_orientation(system, 0)
    basis = kernel_basis(mt)
    rng = np.random.Generator(np.random.PCG64(seed))
    tried = 0
    for cand in _simply_bad_candidates(basis, rng):
        if tried >= budget:
            break
        if not popcount(cand) & 1:
            continue
        tried += 1
        bits = even.bits if even is not None else _all_even_orientation(system, cand)
        if bits is None:
            continue
        family = system.family(cand)
        cert = SimplyBadCertificate(factor, family, Orientation(g, bits))
        if not all(cert.flags):
            raise AssertionError("all-even subsystem solution failed re-verification")
        return cert
    raise SearchBudgetExhausted(f"no simply-bad family among {tried} odd candidates")


def find_simply_bad(g: Graph, *, budget: int = DEFAULT_SEARCH_BUDGET, seed: int = 0,
                    cap: int = DEFAULT_CYCLE_CAP) -> SimplyBadCertificate | None:
    """Simply-bad certificate for the first 1-factor that admits one.

    A non-Pfaffian graph need not be simply bad with respect to every
    1-factor (some factors carry no odd F-set at all), so the factors are
    tried in enumeration order.  Budget exhaustion is re-raised only if no
    factor succeeds."""
    exhausted = None
    for mask in iter_one_factors(g):
        factor = OneFactor.from_mask(g, mask)
        try:
            cert = find_simply_bad_certificate(g, factor, budget=budget, seed=seed, cap=cap)
        except SearchBudgetExhausted as exc:
            exhausted = exc
            continue
        if cert is not None:
            return cert
    if exhausted is not None:
        raise exhausted
    return None


def is_bad(g: Graph, factor: OneFactor | None = None, cap: int = DEFAULT_CYCLE_CAP) -> bool:
    if factor is None:
        factor = _first_factor(g)
        if factor is None:
            raise PreconditionError("graph has no 1-factor")
    return find_bad_certificate(g, factor, cap=cap) is not None


def signed_factor_family(g: Graph, factor: OneFactor, orientation: Orientation,
                         factors: Sequence[OneFactor] | None = None):
    """Pick 1-factors ``F_j`` covering every edge an even number of times
    whose signs relative to ``F`` multiply to -1, and return them with the
    family of all cycles of ``F xor F_j``.

    Returns ``None`` when no such selection exists (exactly when the graph is
    Pfaffian)."""
    if factors is None:
        factors = enumerate_one_factors(g)
    base = factor_sign(orientation.bits, factor)
    cols = BitMatrix(tuple(f.mask for f in factors), g.m).transpose()
    minus = 0
    for j, f in enumerate(factors):
        if factor_sign(orientation.bits, f) != base:
            minus |= 1 << j
    x = kernel_functional_witness(cols, minus)
    if x is None:
        return None
    chosen = [f for j, f in enumerate(factors) if x >> j & 1]
    return chosen, family_from_factors(factor, chosen)


# --------------------------------------------------------------------------
# oracles

BRUTE_FORCE_EDGE_LIMIT = 24


def _nx_alternating_cycles(g: Graph, factor: OneFactor) -> list[tuple[int, ...]]:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    out = []
    for cyc in nx.simple_cycles(h):
        k = len(cyc)
        if k % 2:
            continue
        inside = [factor.mate[cyc[i]] == cyc[(i + 1) % k] for i in range(k)]
        if all(inside[i] != inside[(i + 1) % k] for i in range(k)):
            out.append(canonical_cycle(cyc))
    return sorted(out)


def brute_force_orientation(g: Graph, factor: OneFactor, parity_target: int) -> int | None:
    """Smallest orientation (as bits) making every F-alternating cycle have
    orientation parity ``parity_target``, found by trying all ``2^m``.

    Cycles come from networkx rather than this package's enumerator."""
    if g.m > BRUTE_FORCE_EDGE_LIMIT:
        raise PreconditionError(f"brute force limited to {BRUTE_FORCE_EDGE_LIMIT} edges")
    ok = np.ones(1 << g.m, dtype=bool)
    orients = np.arange(1 << g.m, dtype=np.uint32)
    for cyc in _nx_alternating_cycles(g, factor):
        k = len(cyc)
        mask, ascending = 0, 0
        for i in range(k):
            a, b = cyc[i], cyc[(i + 1) % k]
            mask |= 1 << g.edge_index(a, b)
            ascending ^= a < b
        forward = (np.bitwise_count(orients & np.uint32(mask)) + ascending) & 1
        ok &= forward == parity_target
    hits = np.flatnonzero(ok)
    return int(hits[0]) if hits.size else None


def brute_force_pfaffian(g: Graph) -> bool:
    factor = _first_factor(g)
    if factor is None:
        return True
    return brute_force_orientation(g, factor, 1) is not None


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


DETERMINANT_VERTEX_LIMIT = 16


def determinant_sign_oracle(g: Graph, orientation: Orientation,
                            factor_count: int | None = None) -> tuple[int, bool]:
    """``(|Pf|, is_pfaffian_orientation)`` from the skew adjacency matrix.

    ``|Pf|`` equals the number of 1-factors exactly when all 1-factor signs
    agree, i.e. when the orientation is Pfaffian."""
    if g.n % 2:
        raise PreconditionError("determinant oracle needs an even vertex count")
    if g.n > DETERMINANT_VERTEX_LIMIT:
        raise PreconditionError(f"determinant oracle limited to {DETERMINANT_VERTEX_LIMIT} vertices")
    a = [[0] * g.n for _ in range(g.n)]
    for u, v in orientation.arcs():
        a[u][v] = 1
        a[v][u] = -1
    det = bareiss_determinant(a)
    root = math.isqrt(det) if det >= 0 else -1
    if root < 0 or root * root != det:
        raise ArithmeticError(f"skew-symmetric determinant {det} is not a perfect square")
    if factor_count is None:
        factor_count = sum(1 for _ in iter_one_factors(g))
    return root, root == factor_count
