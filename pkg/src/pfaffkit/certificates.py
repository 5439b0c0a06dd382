"""Serialized certificates and their stand-alone verifier.

A certificate is a JSON object::

    {"kind": "odd-f-set" | "bad" | "simply-bad",
     "graph": <graph6>, "factor": [edge indices], "family": [[vertices], ...],
     "orientation": <bit string over edge indices>, "flags": [bool, ...],
     "digest": <sha256 of the other fields>}

``verify_certificate`` re-derives everything from the payload using only
graph parsing, cycle walks and parity sums; nothing is trusted from the
producer except the claims it checks.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any, Union

from .cycles import AlternatingCycle, CycleFamily, Orientation, is_alternating
from .graph_core import Graph, GraphFormatError, parse_graph6, to_graph6
from .matching import OneFactor
from .pfaffian import BadCertificate, OddFSetCertificate, SimplyBadCertificate

__all__ = [
    "KINDS",
    "Verdict",
    "certificate_to_dict",
    "certificate_to_json",
    "payload_digest",
    "verify_certificate",
]

KINDS = ("odd-f-set", "bad", "simply-bad")
FIELDS = ("kind", "graph", "factor", "family", "orientation", "flags")

AnyCertificate = Union[OddFSetCertificate, BadCertificate, SimplyBadCertificate]


def payload_digest(payload: dict) -> str:
    body = {k: payload[k] for k in FIELDS}
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def certificate_to_dict(cert: AnyCertificate) -> dict:
    g = cert.graph
    orientation = getattr(cert, "orientation", None) or Orientation(g, 0)
    flags = cert.family.even_flags(orientation.bits)
    payload = {
        "kind": cert.kind,
        "graph": to_graph6(g),
        "factor": cert.factor.indices,
        "family": [list(c.vertices) for c in cert.family.cycles],
        "orientation": orientation.bitstring(),
        "flags": [bool(x) for x in flags],
    }
    payload["digest"] = payload_digest(payload)
    return payload


def certificate_to_json(cert: AnyCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), sort_keys=True, separators=(",", ":")) + "\n"


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    kind: str | None
    failed: str | None = None      # name of the first violated invariant
    detail: str = ""

    def __bool__(self) -> bool:
        return self.accepted


class _Reject(Exception):
    def __init__(self, invariant: str, detail: str = ""):
        super().__init__(invariant)
        self.invariant = invariant
        self.detail = detail


def _expect(cond: bool, invariant: str, detail: str = "") -> None:
    if not cond:
        raise _Reject(invariant, detail)


def _check(payload: Any, expected: Graph | None) -> str:
    _expect(isinstance(payload, dict), "schema", "certificate must be a JSON object")
    missing = [k for k in (*FIELDS, "digest") if k not in payload]
    _expect(not missing, "schema", f"missing fields: {missing}")
    extra = set(payload) - {*FIELDS, "digest"}
    _expect(not extra, "schema", f"unexpected fields: {sorted(extra)}")
    kind = payload["kind"]
    _expect(kind in KINDS, "schema", f"unknown kind {kind!r}")

    try:
        g = parse_graph6(payload["graph"]) if isinstance(payload["graph"], str) else None
    except GraphFormatError as exc:
        raise _Reject("graph", str(exc)) from None
    _expect(g is not None, "schema", "graph must be a graph6 string")
    if expected is not None:
        _expect(g == expected, "graph", "certificate is for a different graph")

    factor = payload["factor"]
    _expect(isinstance(factor, list) and all(type(i) is int for i in factor), "schema",
            "factor must be a list of edge indices")
    _expect(all(0 <= i < g.m for i in factor) and len(set(factor)) == len(factor),
            "factor", "edge index out of range or repeated")
    try:
        F = OneFactor.from_mask(g, sum(1 << i for i in factor))
    except ValueError as exc:
        raise _Reject("factor", str(exc)) from None

    family = payload["family"]
    _expect(isinstance(family, list) and family, "family", "family must be a non-empty list")
    cycles = []
    for k, seq in enumerate(family):
        _expect(isinstance(seq, list) and all(type(v) is int for v in seq), "schema",
                f"family member {k} must be a vertex list")
        _expect(all(0 <= v < g.n for v in seq), "alternating", f"member {k} has an unknown vertex")
        _expect(is_alternating(g, F, seq), "alternating", f"member {k} is not an F-alternating cycle")
        cycles.append(AlternatingCycle.from_vertices(g, seq))
    fam = CycleFamily(F, tuple(cycles))
    _expect(fam.zero_sum, "zero-sum", "some edge is covered an odd number of times")

    bits = payload["orientation"]
    _expect(isinstance(bits, str) and len(bits) == g.m and not set(bits) - {"0", "1"},
            "orientation", f"orientation must be {g.m} characters of 0/1")
    D = Orientation.from_bitstring(g, bits)
    flags = payload["flags"]
    _expect(isinstance(flags, list) and all(type(x) is bool for x in flags), "schema",
            "flags must be a list of booleans")
    _expect(len(flags) == len(cycles), "flags", "one flag per family member required")
    actual = fam.even_flags(D.bits)
    wrong = [k for k, (a, b) in enumerate(zip(actual, flags)) if a != b]
    _expect(not wrong, "flags", f"flags disagree with the orientation at members {wrong}")

    if kind in ("odd-f-set", "simply-bad"):
        _expect(len(cycles) % 2 == 1, "odd-cardinality", f"family has {len(cycles)} members")
    if kind == "simply-bad":
        _expect(all(flags), "all-even", "some member is oddly oriented")
    if kind == "bad":
        _expect(sum(flags) % 2 == 1, "odd-even-count",
                f"{sum(flags)} evenly oriented members is not odd")

    _expect(isinstance(payload["digest"], str) and payload["digest"] == payload_digest(payload),
            "digest", "payload does not match its digest")
    return kind


def verify_certificate(data: str | bytes | dict, expected_graph: Graph | None = None) -> Verdict:
    """Accept or reject a serialized certificate, naming the first failed
    invariant.  Semantic invariants are checked before the digest, so a
    tampered claim is reported by what it breaks."""
    try:
        payload = json.loads(data) if isinstance(data, (str, bytes)) else data
    except (ValueError, UnicodeDecodeError) as exc:
        return Verdict(False, None, "json", str(exc))
    try:
        kind = _check(payload, expected_graph)
    except _Reject as r:
        kind = payload.get("kind") if isinstance(payload, dict) else None
        return Verdict(False, kind if kind in KINDS else None, r.invariant, r.detail)
    return Verdict(True, kind)
