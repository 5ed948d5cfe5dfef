"""Exact integer matrix kernels.

Everything here works on Python ints (and :class:`fractions.Fraction` for the
rational solver), so no intermediate value ever overflows or rounds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "DimensionError",
    "InconsistentSystemError",
    "IntegerMatrix",
    "SnfResult",
    "as_matrix",
    "det",
    "minors_gcd",
    "smith_normal_form",
    "solve_rational",
    "solve_integer",
    "integer_inverse",
    "MINORS_GCD_MAX_SIZE",
]

# minors_gcd enumerates C(m, t) * C(n, t) determinants; refuse beyond this.
MINORS_GCD_MAX_SIZE = 12


class DimensionError(ValueError):
    """Matrix shapes do not fit the requested operation."""


class InconsistentSystemError(ValueError):
    """A linear system has no (rational) solution."""


class IntegerMatrix:
    """Immutable dense matrix of arbitrary-precision integers.

    Entries are stored row-major. Construct from nested rows with
    :meth:`from_rows` or directly from a flat sequence.
    """

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(x) for x in entries)
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative shape {rows}x{cols}")
        if len(entries) != rows * cols:
            raise DimensionError(
                f"{len(entries)} entries do not fill a {rows}x{cols} matrix"
            )
        self.rows = rows
        self.cols = cols
        self._entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntegerMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            data[i][i] = d
        return cls.from_rows(data, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[int, ...]:
        return self._entries

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {key} out of range for {self.rows}x{self.cols}")
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> list[int]:
        return list(self._entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(
            self.cols, self.rows,
            (self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    T = property(transpose)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntegerMatrix":
        """Select rows and columns by (0-based) index, order preserved."""
        return IntegerMatrix(len(rows), len(cols), (self[i, j] for i in rows for j in cols))

    def matvec(self, x: Sequence) -> list:
        if len(x) != self.cols:
            raise DimensionError(f"vector of length {len(x)} vs {self.cols} columns")
        return [sum(self[i, j] * x[j] for j in range(self.cols)) for i in range(self.rows)]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self.to_rows(), other.to_rows()
        bt = list(zip(*b)) if b else [()] * other.cols
        return IntegerMatrix(
            self.rows, other.cols,
            (sum(x * y for x, y in zip(ra, cb)) for ra in a for cb in bt),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self) -> str:
        return f"IntegerMatrix.from_rows({self.to_rows()!r})"


def as_matrix(m) -> IntegerMatrix:
    """Coerce nested sequences (or an IntegerMatrix) to an IntegerMatrix."""
    if isinstance(m, IntegerMatrix):
        return m
    return IntegerMatrix.from_rows(m)


def _bareiss(a: list[list[int]]) -> int:
    """Determinant of a square list-of-rows matrix; ``a`` is overwritten."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - f * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1] if n else 1


def det(m) -> int:
    """Exact determinant by Bareiss fraction-free elimination.

    Every division in the elimination is exact, so all intermediates are
    integral minors of the input.
    """
    m = as_matrix(m)
    if m.rows != m.cols:
        raise DimensionError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    return _bareiss(m.to_rows())


def minors_gcd(m, t: int, max_size: int = MINORS_GCD_MAX_SIZE) -> int:
    """gcd of the absolute values of all t-by-t minors of ``m``.

    This is brute force over every pair of row and column t-subsets and is
    meant as a test oracle. Matrices with a side longer than ``max_size``
    are refused.
    """
    m = as_matrix(m)
    if not 1 <= t <= min(m.rows, m.cols):
        raise DimensionError(f"minor size t={t} out of range for {m.rows}x{m.cols}")
    if max(m.rows, m.cols) > max_size:
        raise DimensionError(
            f"{m.rows}x{m.cols} exceeds the minors_gcd size guard ({max_size})"
        )
    a = m.to_rows()
    if t == 1:
        return math.gcd(*(x for r in a for x in r))
    g = 0
    for rows in itertools.combinations(range(m.rows), t):
        picked = [a[i] for i in rows]
        for cols in itertools.combinations(range(m.cols), t):
            sub = [[r[j] for j in cols] for r in picked]
            if not all(any(r) for r in sub) or not all(any(col) for col in zip(*sub)):
                continue
            g = math.gcd(g, _bareiss(sub))
            if g == 1:
                return 1
    return g


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form ``U @ A @ V == diag(diag)`` with unimodular U, V."""

    diag: tuple[int, ...]
    rank: int
    left_transform: IntegerMatrix
    right_transform: IntegerMatrix

    @property
    def U(self) -> IntegerMatrix:
        return self.left_transform

    @property
    def V(self) -> IntegerMatrix:
        return self.right_transform

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.diag[:self.rank]

    def diagonal_matrix(self) -> IntegerMatrix:
        return IntegerMatrix.diagonal(self.diag, self.left_transform.rows, self.right_transform.rows)


def smith_normal_form(m) -> SnfResult:
    """Smith normal form with left and right unimodular transforms.

    Pivots on the smallest nonzero entry (in absolute value) of the
    remaining block. After clearing the pivot row and column, any entry not
    divisible by the pivot is folded into the pivot row and the step is
    repeated, so the diagonal comes out as a divisibility chain.
    """
    m = as_matrix(m)
    rows, cols = m.shape
    a = m.to_rows()
    u = IntegerMatrix.identity(rows).to_rows()
    v = IntegerMatrix.identity(cols).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    rank = 0
    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)

            dirty = False
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                # a smaller remainder now exists in row/column t; re-pivot
                continue

            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)

        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        rank += 1

    diag = tuple(a[i][i] for i in range(min(rows, cols)))
    return SnfResult(
        diag=diag,
        rank=rank,
        left_transform=IntegerMatrix.from_rows(u, rows),
        right_transform=IntegerMatrix.from_rows(v, cols),
    )


def _rref(aug: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place Gauss-Jordan on the first ``ncols`` columns; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(aug)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def solve_rational(m, b: Sequence[int]) -> list[Fraction]:
    """One exact rational solution of ``m @ x == b``.

    Free variables are set to zero. Raises :class:`InconsistentSystemError`
    when no solution exists.
    """
    m = as_matrix(m)
    if len(b) != m.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {m.rows}")
    aug = [[Fraction(x) for x in m.row(i)] + [Fraction(b[i])] for i in range(m.rows)]
    pivots = _rref(aug, m.cols)
    for i in range(len(pivots), m.rows):
        if aug[i][m.cols] != 0:
            raise InconsistentSystemError("linear system is inconsistent")
    x = [Fraction(0)] * m.cols
    for r, c in enumerate(pivots):
        x[c] = aug[r][m.cols]
    return x


def solve_integer(m, b: Sequence[int]) -> list[int] | None:
    """An integer solution of ``m @ x == b``, or ``None`` if there is none.

    Uses the Smith form: with ``U m V = D`` solve ``D y = U b`` entrywise
    and return ``x = V y``.
    """
    m = as_matrix(m)
    if len(b) != m.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {m.rows}")
    snf = smith_normal_form(m)
    c = snf.U.matvec([int(x) for x in b])
    y = [0] * m.cols
    for i, ci in enumerate(c):
        d = snf.diag[i] if i < snf.rank else 0
        if d == 0:
            if ci != 0:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    return snf.V.matvec(y)


def integer_inverse(m) -> IntegerMatrix:
    """Inverse of a unimodular integer matrix."""
    m = as_matrix(m)
    if m.rows != m.cols:
        raise DimensionError("inverse of a non-square matrix")
    n = m.rows
    aug = [[Fraction(x) for x in m.row(i)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    if len(_rref(aug, n)) < n:
        raise ValueError("matrix is singular")
    inv = [row[n:] for row in aug]
    if any(x.denominator != 1 for r in inv for x in r):
        raise ValueError("matrix is not unimodular")
    return IntegerMatrix.from_rows([[int(x) for x in r] for r in inv], n)
