"""Graph corpora (exhaustive labeled and seeded samples) and the per-graph
consistency sweep behind the ``corpus`` command."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .cycles import Orientation
from .graph_core import Graph, to_graph6
from .matching import enumerate_one_factors, is_one_extendable
from .pfaffian import (
    DEFAULT_SEARCH_BUDGET,
    SearchBudgetExhausted,
    brute_force_orientation,
    build_orientation_system,
    determinant_sign_oracle,
    find_bad_certificate,
    find_odd_f_set,
    find_simply_bad_certificate,
    signed_factor_family,
    _solve_orientation,
)
from .reduction import central_wagner_subgraph, is_isomorphic, verify_wagner_witness

__all__ = [
    "RNG_NAME",
    "labeled_graphs",
    "sample_graphs",
    "dedupe_isomorphic",
    "corpus_graphs",
    "CheckOptions",
    "check_graph",
    "GraphRecord",
    "CorpusRun",
    "run_corpus",
]

RNG_NAME = "numpy.PCG64"
EXHAUSTIVE_MAX_N = 7
DEDUPE_MAX_N = 7


def _qualifies(g: Graph) -> bool:
    from .matching import has_one_factor
    return g.n % 2 == 0 and g.is_connected() and has_one_factor(g)


def labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices, by edge-subset bitmask."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, tuple(p for i, p in enumerate(pairs) if mask >> i & 1))


def sample_graphs(n: int, count: int, seed: int) -> list[Graph]:
    """``count`` uniform labeled graphs on ``n`` vertices, conditioned on
    being connected with a 1-factor (rejection sampling)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    pairs = list(combinations(range(n), 2))
    out = []
    while len(out) < count:
        bits = rng.integers(0, 2, size=len(pairs))
        g = Graph(n, tuple(p for p, b in zip(pairs, bits) if b))
        if _qualifies(g):
            out.append(g)
    return out


def dedupe_isomorphic(graphs: Iterable[Graph]) -> list[Graph]:
    buckets: dict[tuple, list[Graph]] = {}
    out = []
    for g in graphs:
        key = (g.n, g.m, tuple(sorted(g.degrees())))
        bucket = buckets.setdefault(key, [])
        if any(is_isomorphic(g, h) for h in bucket):
            continue
        bucket.append(g)
        out.append(g)
    return out


def corpus_graphs(max_n: int, sample: int = 0, seed: int = 0, labeled: bool = False) -> list[Graph]:
    """Connected graphs with a 1-factor: exhaustive for ``n <= 7`` (isomorphism
    classes unless ``labeled``), ``sample`` seeded draws for each larger even
    ``n <= max_n``."""
    graphs: list[Graph] = []
    for n in range(2, max_n + 1, 2):
        if n <= EXHAUSTIVE_MAX_N:
            level = [g for g in labeled_graphs(n) if _qualifies(g)]
            if not labeled and n <= DEDUPE_MAX_N:
                level = dedupe_isomorphic(level)
        else:
            if not sample:
                raise ValueError(f"n={n} is beyond exhaustive range; pass a sample size")
            level = sample_graphs(n, sample, seed + n)
        graphs.extend(level)
    return graphs


@dataclass(frozen=True)
class CheckOptions:
    brute_force_max_m: int = 14
    determinant_max_n: int = 8
    central_wagner: bool = False
    budget: int = DEFAULT_SEARCH_BUDGET
    seed: int = 0


@dataclass
class GraphRecord:
    graph6: str
    n: int
    m: int
    factors: int
    pfaffian: bool
    bad: list = field(default_factory=list)              # per factor
    simply_bad: list = field(default_factory=list)       # per factor: certificate / no-odd-f-set / pfaffian / exhausted
    simply_bad_graph: bool = False
    odd_f_set: list = field(default_factory=list)        # per factor
    even_orientation: list = field(default_factory=list)
    odd_orientation: list = field(default_factory=list)
    brute_force: str = "skipped"
    determinant: str = "skipped"
    central_wagner: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)
    exhausted: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def check_graph(g: Graph, opts: CheckOptions = CheckOptions()) -> GraphRecord:
    """Run every decision procedure on every 1-factor of ``g`` and
    cross-check them against each other and against the oracles."""
    factors = enumerate_one_factors(g)
    rec = GraphRecord(to_graph6(g), g.n, g.m, len(factors), pfaffian=True)
    if not factors:
        return rec
    systems = [build_orientation_system(g, F) for F in factors]
    odd = [_solve_orientation(s, s.all_ones) for s in systems]
    even = [_solve_orientation(s, 0) for s in systems]
    rec.pfaffian = odd[0] is not None
    rec.odd_orientation = [o is not None for o in odd]
    rec.even_orientation = [e is not None for e in even]
    issues = rec.discrepancies

    if any(x != rec.pfaffian for x in rec.odd_orientation):
        issues.append("odd F-orientation existence depends on the factor")

    for k, (F, s) in enumerate(zip(factors, systems)):
        bad = find_bad_certificate(g, F, system=s) is not None
        rec.bad.append(bad)
        if bad == rec.pfaffian:
            issues.append(f"factor {k}: bad={bad} but pfaffian={rec.pfaffian}")
        has_odd_set = find_odd_f_set(g, F, system=s) is not None
        rec.odd_f_set.append(has_odd_set)
        try:
            cert = find_simply_bad_certificate(g, F, system=s, budget=opts.budget, seed=opts.seed)
            if cert is not None:
                status = "certificate"
            elif not has_odd_set:
                status = "no-odd-f-set"
            else:
                status = "pfaffian"
        except SearchBudgetExhausted:
            status = "exhausted"
            rec.exhausted.append(f"simply-bad search, factor {k}")
        rec.simply_bad.append(status)
        if status == "certificate" and rec.pfaffian:
            issues.append(f"factor {k}: simply-bad certificate on a Pfaffian graph")
        if status == "pfaffian" and not rec.pfaffian:
            issues.append(f"factor {k}: simply-bad search claimed Pfaffian")
        # odd F-set rules out having both parities of F-orientation
        if has_odd_set and even[k] is not None and odd[k] is not None:
            issues.append(f"factor {k}: odd F-set yet both even and odd F-orientations")
        # non-Pfaffian + even F-orientation: signed factors give an odd family
        if not rec.pfaffian and even[k] is not None:
            picked = signed_factor_family(g, F, even[k], factors)
            if picked is None or len(picked[1]) % 2 == 0 or not picked[1].zero_sum \
                    or not all(picked[1].even_flags(even[k].bits)):
                issues.append(f"factor {k}: signed-factor family is not an all-even odd F-set")

    rec.simply_bad_graph = "certificate" in rec.simply_bad
    if rec.simply_bad_graph == rec.pfaffian:
        issues.append(f"simply bad={rec.simply_bad_graph} but pfaffian={rec.pfaffian}")

    if g.m <= opts.brute_force_max_m:
        agree = True
        for k in (0,):
            F = factors[k]
            bf_odd = brute_force_orientation(g, F, 1) is not None
            bf_even = brute_force_orientation(g, F, 0) is not None
            agree &= bf_odd == (odd[k] is not None) and bf_even == (even[k] is not None)
        rec.brute_force = "agree" if agree else "DISAGREE"
        if not agree:
            issues.append("brute-force orientation oracle disagrees")

    if g.n <= opts.determinant_max_n:
        probe = odd[0] if odd[0] is not None else Orientation(g, 0)
        _, is_pf_orient = determinant_sign_oracle(g, probe, len(factors))
        rec.determinant = "agree" if is_pf_orient == rec.pfaffian else "DISAGREE"
        if is_pf_orient != rec.pfaffian:
            issues.append("determinant oracle disagrees")

    if opts.central_wagner and is_one_extendable(g):
        for k, F in enumerate(factors):
            if even[k] is not None:
                continue
            try:
                hit = central_wagner_subgraph(g, F, budget=opts.budget)
                if hit is None:
                    rec.central_wagner.append((k, "none"))
                    continue
                ok = verify_wagner_witness(hit.witness)
                rec.central_wagner.append((k, "found" if ok else "INVALID"))
                if not ok:
                    issues.append(f"factor {k}: central Wagner witness failed re-verification")
            except SearchBudgetExhausted:
                rec.central_wagner.append((k, "exhausted"))
                rec.exhausted.append(f"central Wagner search, factor {k}")
    return rec


@dataclass
class CorpusRun:
    records: list[GraphRecord]
    aborted_at: str | None = None     # graph6 of the first discrepancy, if aborted

    @property
    def discrepancies(self) -> list[GraphRecord]:
        return [r for r in self.records if r.discrepancies]

    @property
    def exhausted(self) -> list[GraphRecord]:
        return [r for r in self.records if r.exhausted]

    def summary(self) -> dict:
        by_n: dict[int, dict[str, int]] = {}
        for r in self.records:
            row = by_n.setdefault(r.n, {"graphs": 0, "non_pfaffian": 0})
            row["graphs"] += 1
            row["non_pfaffian"] += not r.pfaffian
        central: dict[str, int] = {}
        for r in self.records:
            for _, status in r.central_wagner:
                central[status] = central.get(status, 0) + 1
        return {
            "graphs": len(self.records),
            "by_n": {str(n): by_n[n] for n in sorted(by_n)},
            "discrepancies": len(self.discrepancies),
            "exhausted": len(self.exhausted),
            "central_wagner": dict(sorted(central.items())),
            "aborted_at": self.aborted_at,
        }


def run_corpus(graphs: Iterable[Graph], opts: CheckOptions = CheckOptions(),
               keep_going: bool = False) -> CorpusRun:
    """Check graphs in graph6 order; stop at the first discrepancy unless
    ``keep_going``."""
    run = CorpusRun([])
    for g6, g in sorted(((to_graph6(g), g) for g in graphs), key=lambda t: t[0]):
        rec = check_graph(g, opts)
        run.records.append(rec)
        if rec.discrepancies and not keep_going:
            run.aborted_at = g6
            break
    return run
