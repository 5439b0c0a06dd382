from __future__ import annotations

import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings

from conftest import catalog_factor, graphs
from pfaffkit.cycles import AlternatingCycle, Orientation
from pfaffkit.graph_core import Graph, complete_graph, cycle_graph, path_graph
from pfaffkit.matching import (
    EnumerationCapExceeded,
    OneFactor,
    PreconditionError,
    allowed_edges,
    enumerate_one_factors,
    factor_sign,
    has_one_factor,
    is_central,
    is_near_bipartite_pair,
    is_one_extendable,
    near_bipartite_witness,
    permutation_sign,
    symmetric_difference_cycles,
)


def brute_force_factor_masks(g: Graph) -> list[int]:
    if g.n % 2:
        return []
    out = []
    for subset in combinations(range(g.m), g.n // 2):
        covered = {v for i in subset for v in g.edges[i]}
        if len(covered) == g.n:
            out.append(sum(1 << i for i in subset))
    return out


def test_cycle_four_has_two_factors():
    assert len(enumerate_one_factors(cycle_graph(4))) == 2


def test_k33_has_six_factors(k33):
    assert len(enumerate_one_factors(k33.graph)) == 6


def test_wagner_factors_present(wagner):
    g = wagner.graph
    masks = {f.mask for f in enumerate_one_factors(g)}
    assert wagner.factor_mask("F1") in masks and wagner.factor_mask("F2") in masks


def test_enumeration_order_and_count_against_brute_force():
    rng = random.Random(2)
    for _ in range(150):
        n = rng.choice([2, 4, 6, 8, 10])
        g = Graph(n, tuple(e for e in combinations(range(n), 2) if rng.random() < 0.45))
        got = [f.mask for f in enumerate_one_factors(g)]
        want = brute_force_factor_masks(g)
        assert sorted(got) == sorted(want)
        keys = [f.indices for f in enumerate_one_factors(g)]
        assert keys == sorted(keys)


def test_enumeration_cap():
    with pytest.raises(EnumerationCapExceeded):
        enumerate_one_factors(complete_graph(8), cap=10)


def test_empty_graph_has_the_empty_factor():
    assert [f.mask for f in enumerate_one_factors(Graph(0, ()))] == [0]
    assert enumerate_one_factors(path_graph(3)) == []


def test_one_factor_validation():
    g = path_graph(4)
    with pytest.raises(ValueError):
        OneFactor.from_edges(g, [(0, 1)])
    with pytest.raises(ValueError):
        OneFactor.from_edges(g, [(0, 1), (1, 2)])


def test_one_extendable_cases(wagner):
    assert is_one_extendable(wagner.graph)
    assert not is_one_extendable(path_graph(4))
    assert not is_one_extendable(Graph(2, ()))


@settings(max_examples=80)
@given(graphs(max_n=8, even=True))
def test_one_extendable_matches_factor_union(g):
    union = 0
    for f in enumerate_one_factors(g):
        union |= f.mask
    assert allowed_edges(g) == union
    assert is_one_extendable(g) == (g.m > 0 and union == (1 << g.m) - 1)


def test_is_central_cases():
    c6 = cycle_graph(6)
    assert is_central(c6, range(6))
    assert is_central(c6, [0, 1])
    assert not is_central(c6, [0, 2])


def test_near_bipartite_wagner(wagner):
    g = wagner.graph
    assert near_bipartite_witness(g) is not None
    assert is_near_bipartite_pair(g, wagner.edges["e"], wagner.edges["f"])


def test_near_bipartite_k4_and_errors(k33):
    # K4 minus a perfect matching is a 4-cycle, so exactly those three pairs work
    k4 = complete_graph(4)
    good = {(e, f) for e, f in combinations(k4.edges, 2) if is_near_bipartite_pair(k4, e, f)}
    assert good == {((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))}
    assert near_bipartite_witness(k4) == ((0, 1), (2, 3))
    with pytest.raises(PreconditionError):
        near_bipartite_witness(k33.graph)
    with pytest.raises(PreconditionError):
        near_bipartite_witness(Graph(5, ((0, 1), (1, 2), (2, 0), (2, 3), (3, 4))))


def test_symmetric_difference_cycles(wagner, k33):
    g, f1 = catalog_factor("wagner", "F1")
    _, f2 = catalog_factor("wagner", "F2")
    assert symmetric_difference_cycles(f1, f1) == []
    cycles = symmetric_difference_cycles(f1, f2)
    assert sorted(v for c in cycles for v in c) == list(range(8))
    for c in cycles:
        AlternatingCycle.from_vertices(g, c)

    h, f3 = catalog_factor("k33", "F3")
    v = k33.vertex
    other = OneFactor.from_edges(h, [(v("1"), v("5")), (v("2"), v("4")), (v("3"), v("6"))])
    (cyc,) = symmetric_difference_cycles(f3, other)
    assert sorted(cyc) == sorted(v(x) for x in "1425")


def test_permutation_sign():
    for perm in permutations(range(5)):
        inversions = sum(1 for i, j in combinations(range(5), 2) if perm[i] > perm[j])
        assert permutation_sign(perm) == (-1) ** inversions


def test_factor_sign_single_edge():
    g = Graph(2, ((0, 1),))
    f = OneFactor.from_edges(g, [(0, 1)])
    assert factor_sign(0, f) == 1
    assert factor_sign(1, f) == -1


def _sign_identity_holds(g: Graph, bits: int) -> bool:
    factors = enumerate_one_factors(g)
    for f, h in [(a, b) for a in factors for b in factors]:
        evens = sum(1 for c in symmetric_difference_cycles(f, h)
                    if AlternatingCycle.from_vertices(g, c).omega(bits) == 0)
        if factor_sign(bits, f) * factor_sign(bits, h) != (-1) ** evens:
            return False
    return True


def test_factor_sign_identity_k33_reference_orientation(k33):
    g = k33.graph
    assert len(enumerate_one_factors(g)) ** 2 == 36
    assert _sign_identity_holds(g, k33.reference_orientation)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=8, even=True))
def test_factor_sign_identity_random(g):
    bits = Orientation.random(g, random.Random(g.m)).bits
    assert _sign_identity_holds(g, bits)


def test_has_one_factor():
    assert has_one_factor(cycle_graph(6))
    assert not has_one_factor(cycle_graph(5))
