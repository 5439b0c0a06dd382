"""Command-line entry point: ``pfaffkit <command> ...``.

Human-readable text goes to stdout.  ``--json PATH`` writes the
machine-readable report (``-`` for stdout, which replaces the text).
Exit status is 0 when nothing went wrong, 1 on a discrepancy, budget
exhaustion or rejected certificate, and 2 on unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__
from .certificates import certificate_to_dict, verify_certificate
from .corpus import RNG_NAME, CheckOptions, corpus_graphs, run_corpus
from .cycles import Orientation
from .graph_core import (
    CATALOG_NAMES,
    CatalogEntry,
    Graph,
    GraphFormatError,
    catalog_graph,
    parse_edge_list,
    parse_graph6,
    to_dot,
    to_graph6,
)
from .matching import OneFactor, iter_one_factors
from .pfaffian import (
    DEFAULT_SEARCH_BUDGET,
    SearchBudgetExhausted,
    find_bad_certificate,
    find_even_orientation,
    find_odd_f_set,
    find_odd_orientation,
    find_simply_bad_certificate,
    is_pfaffian,
)

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


@dataclass
class Input:
    graph: Graph
    descriptor: dict
    entry: CatalogEntry | None = None

    @property
    def labels(self):
        return self.entry.labels if self.entry else None


@dataclass
class Report:
    command: str
    inputs: dict
    seed: int | None = None
    budgets: dict = field(default_factory=dict)
    results: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    lines: list = field(default_factory=list)
    failed: bool = False

    def say(self, text: str) -> None:
        self.lines.append(text)

    def to_json(self) -> str:
        body = {
            "version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "certificates": self.certificates,
            "seed": self.seed,
            "budgets": self.budgets,
        }
        return json.dumps(body, sort_keys=True, indent=2) + "\n"


# --------------------------------------------------------------------------
# input handling

def _load_input(args, required: bool = True) -> Input | None:
    chosen = [k for k in ("catalog", "graph6", "edges") if getattr(args, k, None) is not None]
    if not chosen:
        if required:
            raise UsageError("one of --catalog, --graph6 or --edges is required")
        return None
    if len(chosen) > 1:
        raise UsageError("give only one of --catalog, --graph6, --edges")
    try:
        if args.catalog is not None:
            entry = catalog_graph(args.catalog)
            return Input(entry.graph, {"catalog": args.catalog}, entry)
        if args.graph6 is not None:
            return Input(parse_graph6(args.graph6), {"graph6": args.graph6})
        text = Path(args.edges).read_text()
        g = parse_edge_list(text)
        return Input(g, {"edges": str(args.edges), "graph6": to_graph6(g)})
    except (GraphFormatError, KeyError, ValueError, OSError) as exc:
        raise UsageError(f"cannot read graph: {exc}") from None


def _resolve_factor(inp: Input, choice: str | None) -> OneFactor | None:
    """Catalog factor name, explicit edge list ``u-v,u-v,...`` (catalog
    labels allowed), or when omitted the catalog's first named factor,
    falling back to the first enumerated 1-factor."""
    g = inp.graph
    if choice is None and inp.entry is not None and inp.entry.factors:
        choice = min(inp.entry.factors)
    if choice is None:
        mask = next(iter_one_factors(g), None)
        return None if mask is None else OneFactor.from_mask(g, mask)
    if inp.entry is not None and choice in inp.entry.factors:
        return OneFactor.from_edges(g, inp.entry.factors[choice])
    edges = []
    for token in choice.replace(";", ",").split(","):
        token = token.strip()
        if not token:
            continue
        parts = token.replace("-", " ").split()
        if len(parts) != 2:
            raise UsageError(f"bad factor edge {token!r}; expected u-v")
        if inp.entry is not None:
            try:
                edges.append(tuple(inp.entry.vertex(p) for p in parts))
                continue
            except ValueError:
                pass
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise UsageError(f"unknown vertex in factor edge {token!r}") from None
    try:
        return OneFactor.from_edges(g, edges)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"factor is not a 1-factor of the graph: {exc}") from None


def _factor_desc(factor: OneFactor) -> list[int]:
    return factor.indices


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit_orientation(args, inp: Input, orient: Orientation, report: Report) -> None:
    if getattr(args, "dot", None):
        _write(args.dot, to_dot(inp.graph, orient.bits, inp.labels))
        report.say(f"orientation DOT written to {args.dot}")


# --------------------------------------------------------------------------
# commands

def cmd_pfaffian(args, report: Report) -> None:
    inp = _load_input(args)
    res = is_pfaffian(inp.graph)
    report.say(f"pfaffian: {'true' if res.pfaffian else 'false'}")
    row = {"pfaffian": res.pfaffian, "vacuous": res.vacuous}
    if res.vacuous:
        why = "empty graph" if inp.graph.n == 0 else "no 1-factor"
        row["warning"] = why
        report.say(f"warning: {why} (Pfaffian vacuously)")
    if res.factor is not None:
        row["factor"] = _factor_desc(res.factor)
    if res.pfaffian:
        row["orientation"] = res.witness.bitstring()
        report.say(f"odd orientation: {res.witness.bitstring()}")
        _emit_orientation(args, inp, res.witness, report)
    else:
        cert = find_bad_certificate(inp.graph, res.factor)
        if cert is None:
            raise AssertionError("non-Pfaffian graph without a bad certificate")
        payload = certificate_to_dict(cert)
        report.certificates.append(payload)
        row["certificate"] = len(report.certificates) - 1
        report.say(f"bad certificate: {len(cert.family)} cycles, "
                   f"{sum(payload['flags'])} evenly oriented under the reference orientation")
    report.results.append(row)


def cmd_orient(args, report: Report) -> None:
    inp = _load_input(args)
    factor = _resolve_factor(inp, args.factor)
    if factor is None:
        report.say("none (graph has no 1-factor)")
        report.results.append({"parity": args.parity, "orientation": None, "factor": None})
        return
    find = find_even_orientation if args.parity == "even" else find_odd_orientation
    orient = find(inp.graph, factor)
    row = {"parity": args.parity, "factor": _factor_desc(factor),
           "orientation": None if orient is None else orient.bitstring()}
    report.results.append(row)
    if orient is None:
        report.say(f"none (no {args.parity} F-orientation)")
        return
    report.say(f"{args.parity} F-orientation: {orient.bitstring()}")
    _emit_orientation(args, inp, orient, report)


def cmd_certify(args, report: Report) -> None:
    inp = _load_input(args)
    report.budgets["simply_bad_candidates"] = args.budget
    factor = _resolve_factor(inp, args.factor)
    row: dict = {"kind": args.kind, "factor": None if factor is None else _factor_desc(factor)}
    report.results.append(row)
    if factor is None:
        row["certificate"] = None
        report.say("none (graph has no 1-factor)")
        return
    g = inp.graph
    try:
        if args.kind == "odd-f-set":
            cert = find_odd_f_set(g, factor)
            reason = "every zero-sum F-set is even"
        elif args.kind == "bad":
            cert = find_bad_certificate(g, factor)
            reason = "graph is Pfaffian"
        else:
            cert = find_simply_bad_certificate(g, factor, budget=args.budget, seed=args.seed)
            reason = ("graph is Pfaffian" if find_odd_orientation(g, factor) is not None
                      else "no odd F-set for this factor")
    except SearchBudgetExhausted as exc:
        row["certificate"] = None
        row["exhausted"] = True
        report.failed = True
        report.say(f"budget exhausted: {exc}")
        return
    if cert is None:
        row["certificate"] = None
        row["reason"] = reason
        report.say(f"none ({reason})")
        return
    payload = certificate_to_dict(cert)
    report.certificates.append(payload)
    row["certificate"] = len(report.certificates) - 1
    report.say(f"{args.kind} certificate with {len(cert.family)} cycles")
    if args.out:
        _write(args.out, json.dumps(payload, sort_keys=True, indent=2) + "\n")
        report.say(f"certificate written to {args.out}")


def cmd_verify(args, report: Report) -> None:
    try:
        data = Path(args.certificate).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read certificate: {exc}") from None
    expected = _load_input(args, required=False)
    payload = None
    try:
        payload = json.loads(data)
    except ValueError:
        pass
    # accept a whole report and check every embedded certificate
    if isinstance(payload, dict) and "certificates" in payload and "kind" not in payload:
        items = payload["certificates"]
    else:
        items = [payload if payload is not None else data]
    if not items:
        report.say("no certificates to verify")
    for k, item in enumerate(items):
        verdict = verify_certificate(item, expected.graph if expected else None)
        row = {"index": k, "accepted": verdict.accepted, "kind": verdict.kind,
               "failed_invariant": verdict.failed, "detail": verdict.detail}
        report.results.append(row)
        if verdict:
            report.say(f"certificate {k}: accepted ({verdict.kind})")
        else:
            report.failed = True
            report.say(f"certificate {k}: rejected, invariant '{verdict.failed}' violated: {verdict.detail}")


def cmd_corpus(args, report: Report) -> None:
    if args.max_n > 6 and not args.sample:
        raise UsageError("--max-n above 6 needs --sample (only n <= 6 is scanned exhaustively)")
    opts = CheckOptions(central_wagner=args.central_wagner, budget=args.budget, seed=args.seed)
    graphs = corpus_graphs(args.max_n, sample=args.sample, seed=args.seed, labeled=args.labeled)
    run = run_corpus(graphs, opts, keep_going=args.keep_going)
    report.budgets["simply_bad_candidates"] = args.budget
    report.budgets["central_wagner_candidates"] = args.budget if args.central_wagner else None
    report.inputs["rng"] = RNG_NAME
    summary = run.summary()
    report.results.append({"summary": summary, "graphs": [r.as_dict() for r in run.records]})
    report.say(f"graphs checked: {summary['graphs']}")
    for n, row in summary["by_n"].items():
        report.say(f"  n={n}: {row['graphs']} graphs, {row['non_pfaffian']} non-Pfaffian")
    if summary["central_wagner"]:
        report.say("central Wagner search: " +
                   ", ".join(f"{k}={v}" for k, v in summary["central_wagner"].items()))
    report.say(f"discrepancies: {summary['discrepancies']}")
    report.say(f"budget exhaustions: {summary['exhausted']}")
    for r in run.discrepancies:
        report.say(f"DISCREPANCY {r.graph6}: " + "; ".join(r.discrepancies))
    for r in run.exhausted:
        report.say(f"EXHAUSTED {r.graph6}: " + "; ".join(r.exhausted))
    if run.aborted_at:
        report.say(f"aborted at {run.aborted_at}")
    report.failed = bool(summary["discrepancies"] or summary["exhausted"])


# --------------------------------------------------------------------------
# parser

def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_argument_group("graph input (choose one)")
    src.add_argument("--catalog", choices=CATALOG_NAMES)
    src.add_argument("--graph6", metavar="STR")
    src.add_argument("--edges", metavar="FILE", help="edge list, one 'u v' per line, optional 'n <count>' first")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfaffkit", description="Pfaffian orientation workbench")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pfaffian", help="decide the Pfaffian property")
    _add_input(p)
    p.add_argument("--dot", metavar="PATH", help="write the odd orientation as DOT")

    p = sub.add_parser("orient", help="find an even or odd F-orientation")
    _add_input(p)
    p.add_argument("--factor", help="catalog factor name or edge list 'u-v,u-v,...'")
    p.add_argument("--parity", choices=("even", "odd"), default="odd")
    p.add_argument("--dot", metavar="PATH")

    p = sub.add_parser("certify", help="produce an odd F-set, bad or simply-bad certificate")
    _add_input(p)
    p.add_argument("--kind", choices=("odd-f-set", "bad", "simply-bad"), default="bad")
    p.add_argument("--factor")
    p.add_argument("--out", metavar="PATH", help="write the certificate JSON here")

    p = sub.add_parser("verify", help="re-check a certificate (or every certificate in a report)")
    p.add_argument("certificate", metavar="FILE")
    _add_input(p)

    p = sub.add_parser("corpus", help="cross-check every decision procedure on a graph corpus")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--sample", type=int, default=0, help="seeded samples per even n above 6")
    p.add_argument("--labeled", action="store_true", help="keep every labeled graph (no isomorphism dedupe)")
    p.add_argument("--central-wagner", action="store_true",
                   help="also search central generalized-Wagner subgraphs")
    p.add_argument("--keep-going", action="store_true", help="do not stop at the first discrepancy")

    for p in sub.choices.values():
        p.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
        p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
        p.add_argument("--seed", type=int, default=0)
    return parser


COMMANDS = {
    "pfaffian": cmd_pfaffian,
    "orient": cmd_orient,
    "certify": cmd_certify,
    "verify": cmd_verify,
    "corpus": cmd_corpus,
}


def _inputs_of(args) -> dict:
    keep = ("catalog", "graph6", "edges", "factor", "parity", "kind", "certificate",
            "max_n", "sample", "labeled", "central_wagner")
    return {k: getattr(args, k) for k in keep if getattr(args, k, None) not in (None, False)}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    report = Report(args.command, _inputs_of(args), seed=args.seed)
    try:
        COMMANDS[args.command](args, report)
    except UsageError as exc:
        print(f"pfaffkit: error: {exc}", file=sys.stderr)
        return 2
    if args.json != "-":
        print("\n".join(report.lines))
    if args.json:
        _write(args.json, report.to_json())
    return 1 if report.failed else 0


if __name__ == "__main__":
    sys.exit(main())
