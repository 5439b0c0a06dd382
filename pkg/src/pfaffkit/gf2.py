"""Exact linear algebra over GF(2) on int-packed rows.

A row is a Python ``int``; bit ``j`` is column ``j``.  Bit vectors indexed by
rows (right-hand sides) use bit ``i`` for row ``i``.  Elimination always picks
the lowest-index row holding the lowest-index unprocessed column, so every
returned solution and basis is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "BitMatrix",
    "rank",
    "solve",
    "kernel_basis",
    "kernel_functional_witness",
    "in_row_space",
    "popcount",
    "parity",
]


def popcount(x: int) -> int:
    return bin(x).count("1")


def parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class BitMatrix:
    rows: tuple[int, ...]
    width: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        limit = 1 << self.width
        for i, r in enumerate(self.rows):
            if r < 0 or r >= limit:
                raise ValueError(f"row {i} has bits beyond width {self.width}")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        width = len(rows[0]) if rows else 0
        packed = []
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged rows")
            packed.append(sum(1 << j for j, b in enumerate(r) if b & 1))
        return cls(tuple(packed), width)

    @property
    def height(self) -> int:
        return len(self.rows)

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.width)] for r in self.rows]

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.width
        for i, r in enumerate(self.rows):
            j = 0
            while r:
                if r & 1:
                    cols[j] |= 1 << i
                r >>= 1
                j += 1
        return BitMatrix(tuple(cols), self.height)

    def mul_vec(self, x: int) -> int:
        """``M x`` as a row-indexed bit vector."""
        out = 0
        for i, r in enumerate(self.rows):
            if parity(r & x):
                out |= 1 << i
        return out

    def select_rows(self, which: Iterable[int]) -> "BitMatrix":
        return BitMatrix(tuple(self.rows[i] for i in which), self.width)


def _eliminate(rows: list[int], width: int) -> tuple[list[int], list[int]]:
    """Reduce ``rows`` in place to RREF over the first ``width`` columns.

    Returns (reduced pivot rows, their pivot columns).  Bits at positions
    ``>= width`` ride along (used for augmented columns)."""
    work = list(rows)
    pivots: list[int] = []
    pivot_rows: list[int] = []
    start = 0
    for col in range(width):
        bit = 1 << col
        sel = None
        for r in range(start, len(work)):
            if work[r] & bit:
                sel = r
                break
        if sel is None:
            continue
        work[start], work[sel] = work[sel], work[start]
        prow = work[start]
        for r in range(len(work)):
            if r != start and work[r] & bit:
                work[r] ^= prow
        pivots.append(col)
        start += 1
        if start == len(work):
            break
    pivot_rows = work[:start]
    # rows beyond ``start`` are zero on the first ``width`` columns
    return pivot_rows + work[start:], pivots


def rank(m: BitMatrix) -> int:
    _, pivots = _eliminate(list(m.rows), m.width)
    return len(pivots)


def _kernel_from_rref(reduced: list[int], pivots: list[int], width: int) -> list[int]:
    low = (1 << width) - 1
    pivot_set = set(pivots)
    basis = []
    for f in range(width):
        if f in pivot_set:
            continue
        vec = 1 << f
        for r, p in zip(reduced, pivots):
            if r >> f & 1:
                vec |= 1 << p
        basis.append(vec & low)
    return basis


def kernel_basis(m: BitMatrix) -> list[int]:
    """Basis of ``{x : M x = 0}``, one vector per free column (ascending)."""
    reduced, pivots = _eliminate(list(m.rows), m.width)
    return _kernel_from_rref(reduced, pivots, m.width)


def solve(m: BitMatrix, b: int) -> tuple[int, list[int]] | None:
    """Solve ``M x = b``.

    Returns ``(x, kernel_basis)`` with free variables set to zero, or ``None``
    when the system is inconsistent."""
    if b < 0 or b >> m.height:
        raise ValueError(f"right-hand side has bits beyond {m.height} rows")
    aug_bit = 1 << m.width
    rows = [r | (aug_bit if b >> i & 1 else 0) for i, r in enumerate(m.rows)]
    reduced, pivots = _eliminate(rows, m.width)
    for r in reduced[len(pivots):]:
        if r & aug_bit:
            return None
    x = 0
    for r, p in zip(reduced, pivots):
        if r & aug_bit:
            x |= 1 << p
    return x, _kernel_from_rref(reduced, pivots, m.width)


def kernel_functional_witness(m: BitMatrix, c: int) -> int | None:
    """Some ``x`` with ``M x = 0`` and ``c . x = 1``; ``None`` iff ``c`` lies
    in the row space of ``M``."""
    if c < 0 or c >> m.width:
        raise ValueError(f"functional has bits beyond {m.width} columns")
    for vec in kernel_basis(m):
        if parity(vec & c):
            return vec
    return None


def in_row_space(m: BitMatrix, v: int) -> bool:
    reduced, pivots = _eliminate(list(m.rows), m.width)
    for r, p in zip(reduced, pivots):
        if v >> p & 1:
            v ^= r
    return v == 0
