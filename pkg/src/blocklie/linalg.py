"""Sparse exact-rational matrices with rank, kernel and solve.

A matrix stores only its nonzero entries in a dict keyed by (row, col).
All arithmetic is over ``fractions.Fraction``, so every result below is
an exact statement, not an approximation.  Matrices are treated as
immutable after construction; no operation mutates its operands.

Row reduction returns the reduced row-echelon form together with the
rank and a basis of the right kernel.  The kernel basis follows the
standard free-variable construction: for each non-pivot column f the
basis vector has a 1 in slot f and minus the rref entries in the pivot
slots, so e.g. rref [[1, 2]] yields the kernel vector (-2, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .rationals import ZERO, format_rational, parse_rational


class RationalMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict[tuple[int, int], Fraction] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], Fraction] = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r},{c}) out of bounds for {rows}x{cols}")
                v = Fraction(v)
                if v != 0:
                    self.entries[(r, c)] = v

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Fraction | int]]) -> "RationalMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged row data")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = Fraction(v)
        return cls(rows, cols, entries)

    @classmethod
    def column(cls, data: Sequence[Fraction | int]) -> "RationalMatrix":
        return cls(len(data), 1, {(r, 0): Fraction(v) for r, v in enumerate(data) if v})

    # -- access ------------------------------------------------------------

    def entry(self, r: int, c: int) -> Fraction:
        return self.entries.get((r, c), ZERO)

    def to_rows(self) -> list[list[Fraction]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def column_vector(self, c: int) -> list[Fraction]:
        return [self.entry(r, c) for r in range(self.rows)]

    def is_zero(self) -> bool:
        return not self.entries

    # -- arithmetic --------------------------------------------------------

    def _require_same_shape(self, other: "RationalMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._require_same_shape(other)
        entries = dict(self.entries)
        for key, v in other.entries.items():
            s = entries.get(key, ZERO) + v
            if s:
                entries[key] = s
            else:
                entries.pop(key, None)
        return RationalMatrix(self.rows, self.cols, entries)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> "RationalMatrix":
        return self.scale(Fraction(-1))

    def scale(self, factor: Fraction | int) -> "RationalMatrix":
        factor = Fraction(factor)
        if factor == 0:
            return RationalMatrix(self.rows, self.cols)
        return RationalMatrix(self.rows, self.cols, {k: v * factor for k, v in self.entries.items()})

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        # index other by row for sparse traversal
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc: dict[tuple[int, int], Fraction] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                key = (r, c)
                s = acc.get(key, ZERO) + v * w
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return RationalMatrix(self.rows, other.cols, acc)

    def apply(self, vector: Sequence[Fraction]) -> list[Fraction]:
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        out = [ZERO] * self.rows
        for (r, c), v in self.entries.items():
            if vector[c]:
                out[r] += v * vector[c]
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": {f"{r},{c}": format_rational(v) for (r, c), v in sorted(self.entries.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalMatrix":
        try:
            rows, cols = int(data["rows"]), int(data["cols"])
            entries = {}
            for key, val in data.get("entries", {}).items():
                r, c = (int(p) for p in key.split(","))
                entries[(r, c)] = parse_rational(val)
        except (KeyError, ValueError, TypeError) as exc:
            raise ValueError(f"malformed matrix JSON: {exc}") from exc
        return cls(rows, cols, entries)


@dataclass
class RowReduction:
    """Result of exact Gauss-Jordan elimination."""

    rref: RationalMatrix
    rank: int
    pivots: list[int]
    kernel: list[list[Fraction]]


def _eliminate(rows: list[dict[int, Fraction]]) -> list[tuple[int, dict[int, Fraction]]]:
    """Reduce sparse rows to a fully reduced echelon list of (pivot, row)."""
    reduced: list[tuple[int, dict[int, Fraction]]] = []
    for row in rows:
        row = dict(row)
        # forward-reduce against existing pivots
        for pivot, prow in reduced:
            coeff = row.get(pivot)
            if coeff:
                for c, v in prow.items():
                    s = row.get(c, ZERO) - coeff * v
                    if s:
                        row[c] = s
                    else:
                        row.pop(c, None)
        if not row:
            continue
        pivot = min(row)
        inv = 1 / row[pivot]
        row = {c: v * inv for c, v in row.items()}
        # back-eliminate the new pivot from earlier rows
        for idx, (p, prow) in enumerate(reduced):
            coeff = prow.get(pivot)
            if coeff:
                new = dict(prow)
                for c, v in row.items():
                    s = new.get(c, ZERO) - coeff * v
                    if s:
                        new[c] = s
                    else:
                        new.pop(c, None)
                reduced[idx] = (p, new)
        reduced.append((pivot, row))
    reduced.sort(key=lambda pr: pr[0])
    return reduced


def row_reduce(m: RationalMatrix) -> RowReduction:
    """Reduced row-echelon form with rank and an exact right-kernel basis.

    rank + len(kernel) == cols, and m @ v == 0 holds exactly for every
    kernel basis vector v.
    """
    sparse_rows: list[dict[int, Fraction]] = [{} for _ in range(m.rows)]
    for (r, c), v in m.entries.items():
        sparse_rows[r][c] = v
    reduced = _eliminate(sparse_rows)

    pivots = [p for p, _ in reduced]
    pivot_set = set(pivots)
    entries = {}
    for r, (_, row) in enumerate(reduced):
        for c, v in row.items():
            entries[(r, c)] = v
    rref = RationalMatrix(m.rows, m.cols, entries)

    kernel: list[list[Fraction]] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [ZERO] * m.cols
        vec[free] = Fraction(1)
        for pivot, row in reduced:
            coeff = row.get(free)
            if coeff:
                vec[pivot] = -coeff
        kernel.append(vec)
    return RowReduction(rref=rref, rank=len(pivots), pivots=pivots, kernel=kernel)


def solve(m: RationalMatrix, rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """One exact solution of m x = rhs, or None when inconsistent.

    Free variables are set to zero.  Raises ValueError on a length
    mismatch between rhs and the row count.
    """
    if len(rhs) != m.rows:
        raise ValueError(f"rhs length {len(rhs)} does not match {m.rows} rows")
    aug = m.cols  # augmented column index
    sparse_rows: list[dict[int, Fraction]] = [{} for _ in range(m.rows)]
    for (r, c), v in m.entries.items():
        sparse_rows[r][c] = v
    for r, v in enumerate(rhs):
        if v:
            sparse_rows[r][aug] = Fraction(v)
    reduced = _eliminate(sparse_rows)
    solution = [ZERO] * m.cols
    for pivot, row in reduced:
        if pivot == aug:
            return None  # row 0 = 1: inconsistent
        solution[pivot] = row.get(aug, ZERO)
    return solution


def rank(m: RationalMatrix) -> int:
    return row_reduce(m).rank


def stack_rows(blocks: Iterable[RationalMatrix]) -> RationalMatrix:
    """Vertical concatenation of matrices with equal column counts."""
    blocks = list(blocks)
    if not blocks:
        return RationalMatrix(0, 0)
    cols = blocks[0].cols
    entries = {}
    offset = 0
    for b in blocks:
        if b.cols != cols:
            raise ValueError("column count mismatch in stack")
        for (r, c), v in b.entries.items():
            entries[(offset + r, c)] = v
        offset += b.rows
    return RationalMatrix(offset, cols, entries)


def char_poly(m: RationalMatrix) -> list[Fraction]:
    """Coefficients of det(tI - m), ascending in t, via Faddeev-LeVerrier."""
    if m.rows != m.cols:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = m.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = Fraction(1)
    aux = RationalMatrix.identity(n)
    for k in range(1, n + 1):
        aux = m @ aux
        trace = sum((aux.entry(i, i) for i in range(n)), ZERO)
        ck = -trace / k
        coeffs[n - k] = ck
        aux = aux + RationalMatrix.identity(n).scale(ck)
    return coeffs


def eval_poly_matrix(coeffs: Sequence[Fraction], m: RationalMatrix) -> RationalMatrix:
    """Evaluate a univariate polynomial (ascending coefficients) at a square matrix."""
    if m.rows != m.cols:
        raise ValueError("polynomial evaluation needs a square matrix")
    acc = RationalMatrix.zero(m.rows, m.cols)
    for c in reversed(list(coeffs)):
        acc = acc @ m
        if c:
            acc = acc + RationalMatrix.identity(m.rows).scale(c)
    return acc
