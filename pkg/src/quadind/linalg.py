"""Exact matrices over the rationals.

Rank, determinant and kernel go through one Bareiss (fraction-free)
elimination routine.  Rational inputs are first cleared of denominators row by
row, which changes neither rank nor kernel and scales the determinant by a
known factor.  The same routine accepts matrices of :class:`Polynomial`
entries, where the Bareiss divisions become exact polynomial divisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd, lcm
from typing import Callable, Sequence

from .algebra import Rational, as_rational

__all__ = [
    "RationalMatrix",
    "bareiss_echelon",
    "rank",
    "det",
    "kernel",
    "permanent3",
    "det_cofactor",
    "permanent",
    "normalize_integer_vector",
    "mat_vec",
]


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple

    def __init__(self, rows):
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "rows", data)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self):
        return self.nrows, self.ncols

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self.rows for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self.rows))

    T = property(transpose)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.rows))
            return RationalMatrix(
                [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
            )
        return mat_vec(self, other)

    def tolist(self):
        return [list(row) for row in self.rows]

    def __str__(self):
        from .algebra import format_rational

        return "\n".join("[" + ", ".join(format_rational(x) for x in row) + "]" for row in self.rows)


def _as_matrix(m) -> RationalMatrix:
    return m if isinstance(m, RationalMatrix) else RationalMatrix(m)


def mat_vec(m, v: Sequence) -> tuple:
    m = _as_matrix(m)
    if len(v) != m.ncols:
        raise ValueError("vector length does not match column count")
    return tuple(as_rational(sum(a * b for a, b in zip(row, v))) for row in m.rows)


def _integer_rows(m: RationalMatrix):
    """Rows scaled to integers, plus the product of the scale factors."""
    out = []
    scale = 1
    for row in m.rows:
        d = 1
        for x in row:
            if isinstance(x, Fraction):
                d = lcm(d, x.denominator)
        out.append([int(x * d) for x in row])
        scale *= d
    return out, scale


def _int_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("Bareiss step produced an inexact integer division")
    return q


def bareiss_echelon(rows: list, div: Callable | None = None):
    """Fraction-free row echelon form, in place.

    ``rows`` is a list of equal-length lists over an integral domain; ``div``
    performs exact division (defaults to checked integer division).  Pivots are
    the first nonzero entry found scanning rows top to bottom.

    Returns ``(pivot_columns, sign)`` where ``sign`` is the parity of the row
    swaps performed.  After the call, row ``k`` holds the k-th pivot row.
    """
    div = div or _int_div
    n = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    sign = 1
    prev = None
    r = 0
    for c in range(ncols):
        if r == n:
            break
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, n):
            row = rows[i]
            f = row[c]
            if prev is None:
                for j in range(c + 1, ncols):
                    row[j] = p * row[j] - f * prow[j]
            else:
                for j in range(c + 1, ncols):
                    row[j] = div(p * row[j] - f * prow[j], prev)
            row[c] = 0 * p
        pivots.append(c)
        prev = p
        r += 1
    return pivots, sign


def rank(m) -> int:
    m = _as_matrix(m)
    rows, _ = _integer_rows(m)
    # eliminate along the shorter side
    if m.nrows > m.ncols:
        rows = [list(col) for col in zip(*rows)]
    pivots, _ = bareiss_echelon(rows)
    return len(pivots)


def det(m) -> Rational:
    m = _as_matrix(m)
    if m.nrows != m.ncols:
        raise ValueError(f"determinant of a non-square {m.nrows}x{m.ncols} matrix")
    rows, scale = _integer_rows(m)
    pivots, sign = bareiss_echelon(rows)
    if len(pivots) < m.nrows:
        return 0
    return as_rational(Fraction(sign * rows[-1][-1], scale))


def normalize_integer_vector(v: Sequence) -> tuple:
    """Scale to integers with content 1 and first nonzero entry positive."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("cannot normalize the zero vector")
    first = next(x for x in ints if x)
    if first < 0:
        g = -g
    return tuple(x // g for x in ints)


def kernel(m) -> list:
    """Basis of the right null space as normalized integer vectors.

    One vector per free column, in column order; empty when rank = cols.
    """
    m = _as_matrix(m)
    rows, _ = _integer_rows(m)
    pivots, _ = bareiss_echelon(rows)
    ncols = m.ncols
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            row = rows[k]
            s = sum(row[j] * x[j] for j in range(c + 1, ncols))
            x[c] = Fraction(-s, row[c]) if s else Fraction(0)
        basis.append(normalize_integer_vector(x))
    return basis


def det_cofactor(rows: Sequence[Sequence]):
    """Laplace expansion along the first row; works over any commutative ring."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in (list(row) for row in rows[1:])]
        term = a * det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else 0 * rows[0][0]


def permanent(rows: Sequence[Sequence]):
    """Sum over all permutations of products, no signs (any ring, small n)."""
    n = len(rows)
    total = None
    for perm in permutations(range(n)):
        term = rows[0][perm[0]]
        for i in range(1, n):
            term = term * rows[i][perm[i]]
        total = term if total is None else total + term
    return total


def permanent3(m):
    """Permanent of a 3x3 matrix of rationals or polynomials."""
    rows = m.rows if isinstance(m, RationalMatrix) else m
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("permanent3 needs a 3x3 matrix")
    return permanent(rows)
