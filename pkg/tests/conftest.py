from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from pfaffkit.graph_core import Graph, catalog_graph
from pfaffkit.matching import OneFactor


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8, even: bool = False) -> Graph:
    n = draw(st.integers(min_n, max_n))
    if even and n % 2:
        n = n + 1 if n < max_n else n - 1
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, tuple(p for p, keep in zip(pairs, chosen) if keep))


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph(n, tuple(e for e in combinations(range(n), 2) if rng.random() < p))


def catalog_factor(name: str, factor: str) -> tuple[Graph, OneFactor]:
    entry = catalog_graph(name)
    return entry.graph, OneFactor.from_edges(entry.graph, entry.factors[factor])


@pytest.fixture(scope="session")
def wagner():
    return catalog_graph("wagner")


@pytest.fixture(scope="session")
def cubeplex():
    return catalog_graph("cubeplex")


@pytest.fixture(scope="session")
def twinplex():
    return catalog_graph("twinplex")


@pytest.fixture(scope="session")
def k33():
    return catalog_graph("k33")


@pytest.fixture(scope="session")
def petersen():
    return catalog_graph("petersen")
