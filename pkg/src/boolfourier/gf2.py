"""GF(2) linear algebra on int-bitmask rows.

A mask is a plain int; bit ``i`` is the coefficient of ``x_{i+1}``.  A matrix
is a list of row masks plus a column count, so row operations are single-word
XORs.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence

import numpy as np

from ._bits import dot, lowest_set_bit
from .errors import DependentInput, DimensionMismatch

__all__ = [
    "Gf2Matrix",
    "LinearMap",
    "gf2_rank",
    "span_dim",
    "complete_basis",
    "apply_linear",
    "gf2_invert",
    "solve_linear_system",
    "echelon_pivots",
    "dickson_matrix",
]


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of a set of bitmask rows over GF(2)."""
    basis: List[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
    return len(basis)


def span_dim(masks: Iterable[int]) -> int:
    """Dimension of the span of a set of masks."""
    return gf2_rank(masks)


def echelon_pivots(rows: Sequence[int]) -> tuple[List[int], List[int]]:
    """Echelonize with lowest-set-bit pivoting; returns (rows, pivot positions).

    Zero rows are dropped; the returned rows are fully reduced against each
    other, one pivot bit per row.
    """
    ech: List[int] = []
    pivots: List[int] = []
    for row in rows:
        for r, p in zip(ech, pivots):
            if (row >> p) & 1:
                row ^= r
        if row:
            p = lowest_set_bit(row)
            for i, r in enumerate(ech):
                if (r >> p) & 1:
                    ech[i] = r ^ row
            ech.append(row)
            pivots.append(p)
    return ech, pivots


class Gf2Matrix:
    """Matrix over GF(2): rows are int masks, ``ncols`` columns."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Sequence[int], ncols: int):
        top = 1 << ncols
        for r in rows:
            if not 0 <= r < top:
                raise DimensionMismatch(f"row {r} does not fit in {ncols} columns")
        self.rows = list(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls([1 << i for i in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def rank(self) -> int:
        return gf2_rank(self.rows)

    def mul_vec(self, x: int) -> int:
        """Matrix-vector product; bit i of the result is <row_i, x>."""
        y = 0
        for i, row in enumerate(self.rows):
            if dot(row, x):
                y |= 1 << i
        return y

    def matmul(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch("inner dimensions differ")
        out = []
        for row in self.rows:
            acc = 0
            j = 0
            while row:
                if row & 1:
                    acc ^= other.rows[j]
                row >>= 1
                j += 1
            out.append(acc)
        return Gf2Matrix(out, other.ncols)

    def transpose(self) -> "Gf2Matrix":
        cols = []
        for j in range(self.ncols):
            col = 0
            for i, row in enumerate(self.rows):
                col |= ((row >> j) & 1) << i
            cols.append(col)
        return Gf2Matrix(cols, self.nrows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __repr__(self) -> str:
        return f"Gf2Matrix({self.rows}, ncols={self.ncols})"


def gf2_invert(matrix: Gf2Matrix) -> Optional[Gf2Matrix]:
    """Inverse via Gauss-Jordan on [M | I]; None if singular."""
    n = matrix.ncols
    if matrix.nrows != n:
        return None
    rows = list(matrix.rows)
    aug = [1 << i for i in range(n)]
    pivot_of_col: dict[int, int] = {}
    order: List[int] = []
    for i in range(n):
        row, inv = rows[i], aug[i]
        for col, j in pivot_of_col.items():
            if (row >> col) & 1:
                row ^= rows[j]
                inv ^= aug[j]
        if row == 0:
            return None
        col = lowest_set_bit(row)
        for j in order:
            if (rows[j] >> col) & 1:
                rows[j] ^= row
                aug[j] ^= inv
        rows[i], aug[i] = row, inv
        pivot_of_col[col] = i
        order.append(i)
    # rows is now a permutation of the identity (one pivot bit per row); the
    # aug row reducing to e_c is row c of the inverse.
    result = [0] * n
    for i, row in enumerate(rows):
        result[lowest_set_bit(row)] = aug[i]
    return Gf2Matrix(result, n)


class LinearMap:
    """Invertible linear change of coordinates on {0,1}^n.

    ``forward`` acts on points: ``apply(x)`` has bit i equal to
    ``<forward.rows[i], x>``.  The inverse matrix is computed on construction.
    """

    __slots__ = ("forward", "inverse")

    def __init__(self, forward: Gf2Matrix):
        if forward.nrows != forward.ncols:
            raise DimensionMismatch("linear map must be square")
        inverse = gf2_invert(forward)
        if inverse is None:
            raise DependentInput("matrix is singular")
        self.forward = forward
        self.inverse = inverse

    @property
    def n(self) -> int:
        return self.forward.ncols

    def apply(self, x: int) -> int:
        return self.forward.mul_vec(x)

    def apply_inverse(self, y: int) -> int:
        return self.inverse.mul_vec(y)

    def __repr__(self) -> str:
        return f"LinearMap(rows={self.forward.rows})"


def complete_basis(masks: Sequence[int], n: int) -> LinearMap:
    """Extend independent masks to a basis of {0,1}^n.

    The forward rows are the input masks verbatim followed by standard basis
    vectors at the non-pivot positions of the echelonized input, in ascending
    position order.  Deterministic given the input.
    """
    ech, pivots = echelon_pivots(masks)
    if len(ech) != len(masks):
        raise DependentInput("input masks are linearly dependent")
    rows = list(masks)
    taken = set(pivots)
    for q in range(n):
        if q not in taken:
            rows.append(1 << q)
    if len(rows) != n:
        raise DimensionMismatch(f"{len(masks)} masks exceed dimension {n}")
    return LinearMap(Gf2Matrix(rows, n))


def apply_linear(f, linear_map: LinearMap):
    """Compose a truth table with an invertible map: (Lf)(x) = f(L x)."""
    from .core import BooleanFunction

    if linear_map.n != f.n:
        raise DimensionMismatch(f"map on {linear_map.n} variables, f on {f.n}")
    n = f.n
    xs = np.arange(1 << n, dtype=np.int64)
    ys = np.zeros(1 << n, dtype=np.int64)
    for i, row in enumerate(linear_map.forward.rows):
        bits = np.bitwise_count(np.bitwise_and(xs, np.int64(row))) & 1
        ys |= bits.astype(np.int64) << i
    return BooleanFunction(n, f.table[ys])


def solve_linear_system(rows: Sequence[int], rhs: Sequence[int], n: int) -> Optional[int]:
    """One solution x of <rows[i], x> = rhs[i], or None if inconsistent.

    Deterministic: lowest-set-bit pivoting with free variables set to zero.
    """
    ech: List[tuple[int, int]] = []  # (row, rhs bit), fully reduced
    for row, b in zip(rows, rhs):
        b &= 1
        for r, rb in ech:
            if (row >> lowest_set_bit(r)) & 1:
                row ^= r
                b ^= rb
        if row == 0:
            if b:
                return None
            continue
        p = lowest_set_bit(row)
        ech = [
            ((r ^ row), rb ^ b) if (r >> p) & 1 else (r, rb) for r, rb in ech
        ]
        ech.append((row, b))
    x = 0
    for r, rb in ech:
        if rb:
            x |= 1 << lowest_set_bit(r)
    return x


def dickson_matrix(anf) -> Gf2Matrix:
    """Symmetric zero-diagonal matrix of the quadratic monomials of an ANF.

    Entry (i, j) is 1 exactly when the monomial x_{i+1} x_{j+1} appears.
    """
    n = anf.n
    rows = [0] * n
    for m in anf.monomials:
        if m.bit_count() == 2:
            i = lowest_set_bit(m)
            j = m.bit_length() - 1
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Gf2Matrix(rows, n)
