from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import catalog_factor, graphs, random_graph
from pfaffkit.certificates import certificate_to_json, verify_certificate
from pfaffkit.cycles import AlternatingCycle, CycleFamily, Orientation, is_alternating
from pfaffkit.graph_core import Graph, catalog_graph, complete_graph, cycle_graph, parse_graph6, path_graph
from pfaffkit.matching import OneFactor, PreconditionError, enumerate_one_factors
from pfaffkit.pfaffian import (
    SearchBudgetExhausted,
    bareiss_determinant,
    brute_force_orientation,
    brute_force_pfaffian,
    build_orientation_system,
    determinant_sign_oracle,
    find_bad_certificate,
    find_even_orientation,
    find_odd_f_set,
    find_odd_orientation,
    find_simply_bad,
    find_simply_bad_certificate,
    is_bad,
    is_pfaffian,
    signed_factor_family,
)

GOLDEN = [("cubeplex", "F1"), ("twinplex", "F2"), ("k33", "F3")]


def _all_cycles_have_parity(g: Graph, factor: OneFactor, bits: int, parity: int) -> bool:
    system = build_orientation_system(g, factor)
    return all(c.omega(bits) == parity for c in system.cycles)


def test_wagner_f1_has_both_parities():
    g, f1 = catalog_factor("wagner", "F1")
    even = find_even_orientation(g, f1)
    odd = find_odd_orientation(g, f1)
    assert even is not None and odd is not None
    assert _all_cycles_have_parity(g, f1, even.bits, 0)
    assert _all_cycles_have_parity(g, f1, odd.bits, 1)


def test_wagner_f2_has_no_even_orientation():
    g, f2 = catalog_factor("wagner", "F2")
    assert find_even_orientation(g, f2) is None
    assert brute_force_orientation(g, f2, 0) is None
    assert find_odd_orientation(g, f2) is not None


def test_wagner_is_pfaffian(wagner):
    res = is_pfaffian(wagner.graph)
    assert res and not res.vacuous
    root, ok = determinant_sign_oracle(wagner.graph, res.witness)
    assert ok and root == len(enumerate_one_factors(wagner.graph))


def test_k33_has_no_odd_orientation():
    g, f3 = catalog_factor("k33", "F3")
    assert find_odd_orientation(g, f3) is None
    assert brute_force_orientation(g, f3, 1) is None
    assert not is_pfaffian(g)


@pytest.mark.parametrize("name, fac", GOLDEN)
def test_golden_family_is_odd_zero_sum(name, fac):
    entry = catalog_graph(name)
    g, f = catalog_factor(name, fac)
    cycles = entry.cycle_families["A"]
    assert all(is_alternating(g, f, c) for c in cycles)
    family = CycleFamily(f, tuple(AlternatingCycle.from_vertices(g, c) for c in cycles))
    assert len(family) == 5 and family.zero_sum


@pytest.mark.parametrize("name, fac", GOLDEN)
def test_golden_simply_bad_certificates_verify(name, fac):
    g, f = catalog_factor(name, fac)
    cert = find_simply_bad_certificate(g, f)
    assert cert is not None and len(cert.family) % 2 == 1 and all(cert.flags)
    assert verify_certificate(certificate_to_json(cert), expected_graph=g)


def test_cubeplex_listed_family_with_reference_orientation_is_simply_bad(cubeplex):
    from pfaffkit.pfaffian import SimplyBadCertificate

    g, f = catalog_factor("cubeplex", "F1")
    family = CycleFamily(f, tuple(AlternatingCycle.from_vertices(g, c) for c in cubeplex.cycle_families["A"]))
    cert = SimplyBadCertificate(f, family, Orientation(g, cubeplex.reference_orientation))
    assert all(cert.flags)
    assert verify_certificate(certificate_to_json(cert))


@pytest.mark.parametrize("name, fac", GOLDEN + [("petersen", "S")])
def test_non_pfaffian_catalog_graphs_are_bad(name, fac):
    g, f = catalog_factor(name, fac)
    assert not is_pfaffian(g)
    assert is_bad(g, f)
    cert = find_bad_certificate(g, f)
    assert sum(cert.flags) % 2 == 1
    assert verify_certificate(certificate_to_json(cert), expected_graph=g)


def test_twinplex_odd_f_set():
    g, f = catalog_factor("twinplex", "F2")
    cert = find_odd_f_set(g, f)
    assert cert is not None and len(cert.family) % 2 == 1 and cert.family.zero_sum


def test_wagner_has_no_bad_certificate():
    g, f1 = catalog_factor("wagner", "F1")
    assert find_bad_certificate(g, f1) is None
    assert find_simply_bad_certificate(g, f1) is None
    assert find_simply_bad(g) is None


@pytest.mark.parametrize("name, fac", GOLDEN + [("petersen", "S")])
def test_bad_count_parity_is_orientation_invariant(name, fac):
    g, f = catalog_factor(name, fac)
    cert = find_bad_certificate(g, f)
    rng = random.Random(name)
    for _ in range(100):
        d = Orientation.random(g, rng)
        assert sum(cert.family.even_flags(d.bits)) % 2 == 1


def test_budget_exhaustion_is_raised_not_swallowed():
    g = parse_graph6("E~|w")
    f = OneFactor.from_edges(g, [(0, 1), (2, 3), (4, 5)])
    system = build_orientation_system(g, f)
    # non-Pfaffian, odd F-set present and no even orientation: the candidate walk is real
    assert find_even_orientation(g, f, system=system) is None
    assert find_odd_f_set(g, f, system=system) is not None
    with pytest.raises(SearchBudgetExhausted):
        find_simply_bad_certificate(g, f, system=system, budget=0)


def test_simply_bad_seed_reproducible():
    g, f = catalog_factor("twinplex", "F2")
    a = find_simply_bad_certificate(g, f, seed=3)
    b = find_simply_bad_certificate(g, f, seed=3)
    assert a == b


def test_brute_force_small_cases():
    assert brute_force_pfaffian(cycle_graph(4))
    assert not brute_force_pfaffian(catalog_factor("k33", "F3")[0])
    assert brute_force_pfaffian(path_graph(3))
    with pytest.raises(PreconditionError):
        brute_force_orientation(complete_graph(8), enumerate_one_factors(complete_graph(8))[0], 1)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8, even=True))
def test_solver_matches_brute_force(g):
    if g.m > 14:
        return
    for f in enumerate_one_factors(g)[:2]:
        for parity, finder in ((0, find_even_orientation), (1, find_odd_orientation)):
            got = finder(g, f)
            assert (got is None) == (brute_force_orientation(g, f, parity) is None)


def test_vacuous_cases():
    for g in (Graph(0, ()), path_graph(3), Graph(3, ((0, 1), (1, 2), (0, 2)))):
        res = is_pfaffian(g)
        assert res and res.vacuous
    tree = Graph(6, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5)))
    res = is_pfaffian(tree)
    assert res and not res.vacuous


def test_is_bad_needs_a_factor():
    with pytest.raises(PreconditionError):
        is_bad(path_graph(3))


def test_bareiss_matches_numpy():
    rng = np.random.default_rng(4)
    for size in range(1, 9):
        for _ in range(20):
            a = rng.integers(-3, 4, size=(size, size))
            assert bareiss_determinant(a.tolist()) == round(np.linalg.det(a))
    assert bareiss_determinant([]) == 1
    assert bareiss_determinant([[0, 1], [0, 2]]) == 0


def test_determinant_single_edge():
    g = Graph(2, ((0, 1),))
    assert determinant_sign_oracle(g, Orientation(g, 0)) == (1, True)
    assert determinant_sign_oracle(g, Orientation(g, 1)) == (1, True)


def test_k33_no_orientation_reaches_factor_count(k33):
    g = k33.graph
    for bits in range(1 << g.m):
        root, ok = determinant_sign_oracle(g, Orientation(g, bits), factor_count=6)
        assert root < 6 and not ok


def test_determinant_is_perfect_square_random():
    rng = random.Random(21)
    for _ in range(300):
        g = random_graph(rng, rng.choice([2, 4, 6, 8]), rng.random())
        determinant_sign_oracle(g, Orientation.random(g, rng))


def test_determinant_rejects_odd_order():
    with pytest.raises(PreconditionError):
        determinant_sign_oracle(path_graph(3), Orientation(path_graph(3), 0))


def _sample_even_graphs(seed: int, count: int):
    rng = random.Random(seed)
    while count:
        g = random_graph(rng, rng.choice([4, 6, 8]), rng.uniform(0.3, 0.9))
        if enumerate_one_factors(g):
            count -= 1
            yield g


def test_signed_factor_family_matches_pfaffian():
    for g in _sample_even_graphs(5, 120):
        f = enumerate_one_factors(g)[0]
        got = signed_factor_family(g, f, Orientation.random(g, random.Random(g.m)))
        assert (got is None) == bool(is_pfaffian(g))
        # under an even F-orientation the chosen family is odd and all-even
        d = find_even_orientation(g, f)
        got = None if d is None else signed_factor_family(g, f, d)
        if got is not None:
            chosen, family = got
            cover = 0
            for h in chosen:
                cover ^= h.mask
            assert cover == 0 and family.zero_sum
            assert len(family) % 2 == 1 and all(family.even_flags(d.bits))


def test_bad_iff_not_pfaffian_on_every_factor():
    for g in _sample_even_graphs(6, 150):
        pf = bool(is_pfaffian(g))
        for f in enumerate_one_factors(g):
            assert is_bad(g, f) == (not pf)
            assert (find_odd_orientation(g, f) is not None) == pf


def test_simply_bad_iff_not_pfaffian():
    for g in _sample_even_graphs(7, 150):
        assert (find_simply_bad(g) is not None) == (not is_pfaffian(g))


def test_odd_f_set_blocks_both_parities():
    for g in _sample_even_graphs(8, 150):
        for f in enumerate_one_factors(g):
            if find_odd_f_set(g, f) is not None:
                assert find_even_orientation(g, f) is None or find_odd_orientation(g, f) is None


def test_factor_must_belong_to_graph():
    g, f = catalog_factor("k33", "F3")
    with pytest.raises(ValueError):
        build_orientation_system(complete_graph(6), f)
