"""Bit-packed linear algebra over GF(2) using Python ints as bit rows."""

from __future__ import annotations

from typing import List, Optional, Tuple


class BitMatrix:
    """Rectangular matrix over GF(2); each row is an int bitmask (bit j = column j)."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: List[int], ncols: int):
        if any(r >> ncols for r in rows):
            raise ValueError("row has bits beyond ncols")
        self.rows = list(rows)
        self.ncols = ncols

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_lists(cls, entries: List[List[int]]) -> "BitMatrix":
        ncols = len(entries[0]) if entries else 0
        rows = []
        for e in entries:
            if len(e) != ncols:
                raise ValueError("ragged matrix")
            rows.append(sum((b & 1) << j for j, b in enumerate(e)))
        return cls(rows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls([0] * nrows, ncols)

    def to_lists(self) -> List[List[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def copy(self) -> "BitMatrix":
        return BitMatrix(list(self.rows), self.ncols)

    def transpose(self) -> "BitMatrix":
        cols = []
        for j in range(self.ncols):
            c = 0
            for i, r in enumerate(self.rows):
                c |= ((r >> j) & 1) << i
            cols.append(c)
        return BitMatrix(cols, self.nrows)

    def mat_vec(self, v: int) -> int:
        """Multiply by a column vector (bitmask over ncols); result over nrows."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= (bin(r & v).count("1") & 1) << i
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        body = ", ".join(format(r, f"0{self.ncols}b")[::-1] for r in self.rows)
        return f"BitMatrix({self.nrows}x{self.ncols}: [{body}])"


def _eliminate(rows: List[int], ncols: int) -> Tuple[List[int], List[int]]:
    """In-place Gauss-Jordan; returns (reduced rows, pivot column per reduced row)."""
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r] & bit:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r] & bit:
                rows[r] ^= rows[rank]
        pivots.append(col)
        rank += 1
    return rows, pivots


def rank(m: BitMatrix) -> int:
    """Rank over GF(2)."""
    _, pivots = _eliminate(list(m.rows), m.ncols)
    return len(pivots)


def rank_of_rows(rows: List[int], ncols: int) -> int:
    """Rank of raw int-bitmask rows; avoids building a BitMatrix in hot loops."""
    _, pivots = _eliminate(list(rows), ncols)
    return len(pivots)


def kernel_basis(m: BitMatrix) -> List[int]:
    """Basis (as bitmasks over ncols) of {v : m.mat_vec(v) = 0}."""
    rows, pivots = _eliminate(list(m.rows), m.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for i, p in enumerate(pivots):
            if rows[i] & (1 << free):
                v |= 1 << p
        basis.append(v)
    return basis


def row_space_basis(m: BitMatrix) -> List[int]:
    """Basis of the row space, as reduced bitmask rows."""
    rows, pivots = _eliminate(list(m.rows), m.ncols)
    return rows[: len(pivots)]


def solve(m: BitMatrix, y: int) -> Optional[int]:
    """One solution x (bitmask over ncols) of m·x = y, or None if inconsistent."""
    if y >> m.nrows:
        raise ValueError("y has bits beyond nrows")
    # Augment with y as an extra column.
    aug = [r | (((y >> i) & 1) << m.ncols) for i, r in enumerate(m.rows)]
    rows, pivots = _eliminate(aug, m.ncols)
    ybit = 1 << m.ncols
    for r in rows[len(pivots):]:
        if r & ybit:
            return None
    x = 0
    for i, p in enumerate(pivots):
        if rows[i] & ybit:
            x |= 1 << p
    return x


def solution_space(m: BitMatrix, y: int) -> Tuple[Optional[int], List[int]]:
    """Particular solution plus kernel basis; the affine set is x0 + span(basis)."""
    return solve(m, y), kernel_basis(m)


def in_row_span(rows: List[int], ncols: int, v: int) -> bool:
    """Membership of v in the GF(2) span of the given rows."""
    base = rank_of_rows(rows, ncols)
    return rank_of_rows(rows + [v], ncols) == base


def span(basis: List[int]) -> List[int]:
    """All 2^k elements spanned by k independent bitmasks (small k only)."""
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


__all__ = [
    "BitMatrix",
    "rank",
    "rank_of_rows",
    "kernel_basis",
    "row_space_basis",
    "solve",
    "solution_space",
    "in_row_span",
    "span",
]
