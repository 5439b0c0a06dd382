from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import catalog_factor, graphs
from pfaffkit.cycles import (
    AlternatingCycle,
    CycleFamily,
    Orientation,
    are_skew,
    canonical_cycle,
    enumerate_alternating_cycles,
    enumerate_simple_cycles,
    family_from_factors,
    is_alternating,
    is_evenly_oriented,
    is_zero_sum,
    omega_cycle,
    omega_path,
)
from pfaffkit.gf2 import BitMatrix, kernel_basis
from pfaffkit.graph_core import Graph, cycle_graph, path_graph
from pfaffkit.matching import EnumerationCapExceeded, OneFactor, enumerate_one_factors


def nx_alternating(g: Graph, factor: OneFactor) -> list[tuple[int, ...]]:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    out = set()
    for cyc in nx.simple_cycles(h):
        if len(cyc) % 2 == 0 and is_alternating(g, factor, cyc):
            out.add(canonical_cycle(cyc))
    return sorted(out)


def test_canonical_cycle():
    assert canonical_cycle((3, 1, 2, 0)) == (0, 2, 1, 3)
    assert canonical_cycle((0, 3, 2, 1)) == (0, 1, 2, 3)


def test_cycle_four_has_one_alternating_cycle():
    g = cycle_graph(4)
    for f in enumerate_one_factors(g):
        assert [c.vertices for c in enumerate_alternating_cycles(g, f)] == [(0, 1, 2, 3)]


def test_k33_alternating_cycles(k33):
    g, f3 = catalog_factor("k33", "F3")
    cycles = enumerate_alternating_cycles(g, f3)
    assert len(cycles) == 5
    assert sorted(len(c) for c in cycles) == [4, 4, 4, 6, 6]
    listed = {canonical_cycle(c) for c in k33.cycle_families["A"]}
    assert {c.vertices for c in cycles} == listed


def test_wagner_f2_cycles_include_listed_pair(wagner):
    g, f2 = catalog_factor("wagner", "F2")
    found = {c.vertices for c in enumerate_alternating_cycles(g, f2)}
    for name in ("C1", "C2"):
        assert canonical_cycle(wagner.cycles[name]) in found


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8, even=True))
def test_enumeration_matches_networkx(g):
    for f in enumerate_one_factors(g)[:3]:
        got = enumerate_alternating_cycles(g, f)
        assert [c.vertices for c in got] == nx_alternating(g, f)
        for c in got:
            assert len(c) == 2 * sum(1 for i in range(len(c)) if f.mate[c.vertices[i]] == c.vertices[(i + 1) % len(c)])
            assert c == AlternatingCycle.from_vertices(g, c.vertices)


def test_enumeration_matches_networkx_random_even_graphs():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.choice([4, 6, 8, 10])
        g = Graph(n, tuple(e for e in combinations(range(n), 2) if rng.random() < 0.5))
        factors = enumerate_one_factors(g, cap=10**5)
        for f in factors[:2]:
            assert [c.vertices for c in enumerate_alternating_cycles(g, f)] == nx_alternating(g, f)


def test_enumeration_cap(petersen):
    g, f = catalog_factor("petersen", "S")
    with pytest.raises(EnumerationCapExceeded):
        enumerate_alternating_cycles(g, f, cap=2)


def test_simple_cycle_enumeration_order():
    g = Graph(4, ((0, 1), (1, 2), (2, 0), (2, 3), (3, 0)))
    assert enumerate_simple_cycles(g) == [(0, 1, 2), (0, 2, 3), (0, 1, 2, 3)]
    assert enumerate_simple_cycles(g, parity_filter=0) == [(0, 1, 2, 3)]


def test_omega_path_single_edge():
    g = path_graph(2)
    assert omega_path(Orientation(g, 0), [0, 1]) == 1
    assert omega_path(Orientation(g, 0), [1, 0]) == 0


def test_omega_path_rejects_non_edge():
    with pytest.raises(ValueError):
        omega_path(Orientation(path_graph(3), 0), [0, 2])


@settings(max_examples=100)
@given(graphs(min_n=2, max_n=9), st.randoms(use_true_random=False))
def test_omega_path_reversal_identity(g, rng):
    if g.m == 0:
        return
    # grow a random simple path
    start = rng.choice(g.edges)[0]
    path, seen = [start], {start}
    while True:
        nxt = [w for w in g.neighbors(path[-1]) if w not in seen]
        if not nxt or rng.random() < 0.2:
            break
        path.append(rng.choice(nxt))
        seen.add(path[-1])
    d = Orientation.random(g, rng)
    edges = len(path) - 1
    assert omega_path(d, path) == (omega_path(d, path[::-1]) + edges) % 2


def test_all_forward_square_is_even():
    g = cycle_graph(4)
    d = Orientation.from_arcs(g, [(0, 1), (1, 2), (2, 3), (3, 0)])
    c = AlternatingCycle.from_vertices(g, (0, 1, 2, 3))
    assert omega_cycle(d, c) == 0 and is_evenly_oriented(d, c)


def test_k33_reference_orientation_parities(k33):
    g = k33.graph
    d = Orientation(g, k33.reference_orientation)
    v = k33.vertex
    c3 = [v(x) for x in "1425"]
    c1 = [v(x) for x in "142536"]
    assert omega_cycle(d, c3) == 0
    assert omega_cycle(d, c1) == 1
    flags = [is_evenly_oriented(d, c) for c in k33.cycle_families["A"]]
    assert flags == [False, False, True, True, True]


def test_cubeplex_reference_orientation_all_even(cubeplex):
    g = cubeplex.graph
    d = Orientation(g, cubeplex.reference_orientation)
    assert all(is_evenly_oriented(d, c) for c in cubeplex.cycle_families["A"])
    c4 = cubeplex.cycle_families["A"][3]
    forward = sum(d.points(c4[i], c4[(i + 1) % len(c4)]) for i in range(len(c4)))
    assert forward == 0


@settings(max_examples=80)
@given(graphs(min_n=4, max_n=8, even=True), st.randoms(use_true_random=False))
def test_omega_independent_of_traversal_direction(g, rng):
    for f in enumerate_one_factors(g, cap=10**4)[:1]:
        d = Orientation.random(g, rng)
        for c in enumerate_alternating_cycles(g, f)[:10]:
            assert omega_cycle(d, c.vertices) == omega_cycle(d, c.vertices[::-1])
            assert omega_cycle(d, c) == c.omega(d.bits)


def test_wagner_skew_pair(wagner):
    e, f = wagner.edges["e"], wagner.edges["f"]
    c1, c2 = wagner.cycles["C1"], wagner.cycles["C2"]
    assert are_skew(e, f, c1, c2)
    assert not are_skew(e, f, c1, c1)


def test_wagner_no_skew_pair_for_f1(wagner):
    g, f1 = catalog_factor("wagner", "F1")
    e, f = wagner.edges["e"], wagner.edges["f"]
    ie, iff = g.edge_index(*e), g.edge_index(*f)
    through = [c for c in enumerate_alternating_cycles(g, f1) if c.mask >> ie & 1 and c.mask >> iff & 1]
    assert through
    assert not any(are_skew(e, f, a, b) for a, b in combinations(through, 2))


def test_are_skew_preconditions():
    c = (0, 1, 2, 3, 4, 5)
    with pytest.raises(ValueError):
        are_skew((0, 1), (1, 2), c, c)
    with pytest.raises(ValueError):
        are_skew((0, 1), (2, 4), c, c)


def test_family_from_factors(wagner, k33):
    g, f1 = catalog_factor("wagner", "F1")
    _, f2 = catalog_factor("wagner", "F2")
    assert len(family_from_factors(f1, [f1])) == 0
    doubled = family_from_factors(f1, [f2, f2])
    assert doubled.zero_sum and len(doubled) % 2 == 0

    h, f3 = catalog_factor("k33", "F3")
    factors = enumerate_one_factors(h)
    # all six factors cover every K3,3 edge exactly twice
    assert family_from_factors(f3, factors).zero_sum
    other = OneFactor.from_edges(g, f2.edges)
    with pytest.raises(ValueError):
        family_from_factors(f3, [other])


def test_zero_sum_examples(k33):
    g, f3 = catalog_factor("k33", "F3")
    cyc = tuple(AlternatingCycle.from_vertices(g, c) for c in k33.cycle_families["A"])
    assert is_zero_sum(CycleFamily(f3, cyc))
    assert not is_zero_sum(CycleFamily(f3, cyc[:1]))
    assert is_zero_sum(CycleFamily(f3, cyc[:2] * 2))


def test_flip_parity_random_triples():
    rng = random.Random(13)
    done = 0
    while done < 1000:
        n = rng.choice([4, 6, 8])
        g = Graph(n, tuple(e for e in combinations(range(n), 2) if rng.random() < 0.6))
        factors = enumerate_one_factors(g)
        if not factors:
            continue
        f = rng.choice(factors)
        cycles = enumerate_alternating_cycles(g, f)
        # zero-sum families are the kernel of the edge-by-cycle incidence matrix
        basis = kernel_basis(BitMatrix(tuple(c.mask for c in cycles), g.m).transpose())
        if not basis:
            continue
        pick = 0
        for v in basis:
            if rng.random() < 0.5:
                pick ^= v
        family = CycleFamily(f, tuple(c for j, c in enumerate(cycles) if pick >> j & 1))
        d = Orientation.random(g, rng)
        edge = rng.randrange(g.m)
        before = sum(c.omega(d.bits) for c in family.cycles) % 2
        after = sum(c.omega(d.bits ^ 1 << edge) for c in family.cycles) % 2
        assert family.zero_sum and before == after
        done += 1


def test_orientation_bitstring_round_trip():
    g = cycle_graph(5)
    d = Orientation(g, 0b10110)
    assert d.bitstring() == "01101"
    assert Orientation.from_bitstring(g, d.bitstring()) == d
    with pytest.raises(ValueError):
        Orientation.from_bitstring(g, "0110")
    with pytest.raises(ValueError):
        Orientation(g, 1 << 5)
