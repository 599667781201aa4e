"""Matrices of polynomials over cyclotomic fields, and their exact determinants.

Two determinant routes live here.  ``poly_det`` is the general one: cofactor
expansion up to 6x6, fraction-free (Bareiss) elimination above that.  For the
recurring special shape det(I - u*M) with a scalar matrix M there is a much
faster route through the characteristic polynomial of a Hessenberg reduction;
quadratic pencils det(I + u*A + u^2*B) reduce to it by block companion
linearization.  The two routes are cross-checked in the test suite.
"""
from __future__ import annotations

from fractions import Fraction

from .cyclo import Cyclo, CycloPoly, lcm


class CycloMatrix:
    """Dense rectangular grid of CycloPoly entries sharing one field order."""

    __slots__ = ("rows", "cols", "entries", "order")

    def __init__(self, entries):
        grid = [list(row) for row in entries]
        if not grid or not grid[0]:
            raise ValueError("matrix must have at least one row and column")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise ValueError("ragged matrix")
        order = 1
        for row in grid:
            for entry in row:
                order = lcm(order, entry.order)
        grid = [[e.coerce(order) for e in row] for row in grid]
        self.rows = len(grid)
        self.cols = width
        self.entries = grid
        self.order = order

    @staticmethod
    def from_scalars(grid, order: int = 1) -> CycloMatrix:
        """Build a matrix of degree-0 entries from ints/Fractions/Cyclo."""
        rows = []
        for row in grid:
            out = []
            for value in row:
                if isinstance(value, Cyclo):
                    out.append(CycloPoly(value.order, [value]))
                else:
                    out.append(CycloPoly(order, [Fraction(value)]))
            rows.append(out)
        return CycloMatrix(rows)

    @staticmethod
    def identity(n: int, order: int = 1) -> CycloMatrix:
        one = CycloPoly.one(order)
        zero = CycloPoly.zero(order)
        return CycloMatrix([[one if i == j else zero for j in range(n)] for i in range(n)])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def scalar_grid(self) -> list[list[Cyclo]]:
        """Extract degree-0 entries as Cyclo values; fails on higher degree."""
        out = []
        for row in self.entries:
            line = []
            for e in row:
                if e.degree() > 0:
                    raise ValueError("matrix entry has positive degree")
                line.append(e.coefficient(0))
            out.append(line)
        return out

    def __mul__(self, other: CycloMatrix) -> CycloMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            line = []
            for j in range(other.cols):
                acc = CycloPoly.zero(self.order)
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                line.append(acc)
            out.append(line)
        return CycloMatrix(out)

    def __add__(self, other: CycloMatrix) -> CycloMatrix:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return CycloMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(
                a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
            )
        )

    def __repr__(self) -> str:
        return f"CycloMatrix({self.rows}x{self.cols}, order {self.order})"


def poly_det(m: CycloMatrix) -> CycloPoly:
    """Exact determinant of a square matrix of polynomials.

    Cofactor expansion for size <= 6 (and whenever entries are truncated,
    since Bareiss needs exact division); fraction-free elimination otherwise.
    """
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    truncations = {e.truncation for row in m.entries for e in row}
    truncated = truncations != {None}
    if truncated and len(truncations) != 1:
        raise ValueError("mixed truncation degrees in matrix")
    if m.rows <= 6 or truncated:
        return _det_cofactor(m.entries, m.order)
    return _det_bareiss(m.entries, m.order)


def _det_cofactor(entries, order: int) -> CycloPoly:
    n = len(entries)
    if n == 1:
        return entries[0][0]
    if n == 2:
        return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]
    acc = CycloPoly.zero(order)
    cols = list(range(n))
    for j in range(n):
        pivot = entries[0][j]
        if pivot.is_zero():
            continue
        minor = [[row[c] for c in cols if c != j] for row in entries[1:]]
        term = pivot * _det_cofactor(minor, order)
        acc = acc - term if j % 2 else acc + term
    return acc


def _det_bareiss(entries, order: int) -> CycloPoly:
    """Fraction-free elimination: all intermediate entries are exact minors."""
    a = [list(row) for row in entries]
    n = len(a)
    one = CycloPoly.one(order)
    prev = one
    sign = 1
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if pivot_row is None:
                return CycloPoly.zero(order)
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
            a[i][k] = CycloPoly.zero(order)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def det_one_minus_u(matrix: list[list[Cyclo]], order: int) -> CycloPoly:
    """det(I - u*M) for a scalar matrix M, by Hessenberg characteristic polynomial.

    If p(x) = det(xI - M) = sum a_i x^i (monic of degree n), then
    det(I - u*M) = sum a_i u^(n-i).
    """
    n = len(matrix)
    if n == 0:
        return CycloPoly.one(order)
    charpoly = _charpoly(matrix, order)
    return CycloPoly(order, list(reversed(charpoly)))


def _charpoly(matrix: list[list[Cyclo]], order: int) -> list[Cyclo]:
    """Coefficients of det(xI - M), ascending in x, via similarity reduction
    to upper Hessenberg form followed by the leading-minor recurrence."""
    n = len(matrix)
    h = [[c.coerce(order) if c.order != order else c for c in row] for row in matrix]
    zero = Cyclo.rational(0, order)
    for j in range(n - 2):
        pivot = next((i for i in range(j + 1, n) if not h[i][j].is_zero()), None)
        if pivot is None:
            continue
        if pivot != j + 1:
            h[j + 1], h[pivot] = h[pivot], h[j + 1]
            for row in h:
                row[j + 1], row[pivot] = row[pivot], row[j + 1]
        inv = h[j + 1][j].inverse()
        for i in range(j + 2, n):
            if h[i][j].is_zero():
                continue
            f = h[i][j] * inv
            for c in range(j, n):
                h[i][c] = h[i][c] - f * h[j + 1][c]
            for r in range(n):
                h[r][j + 1] = h[r][j + 1] + f * h[r][i]
    # p_m = (x - h[m-1][m-1]) p_{m-1} - sum_i h[i-1][m-1] (prod subdiag) p_{i-1}
    one = Cyclo.rational(1, order)
    polys: list[list[Cyclo]] = [[one]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [zero] * (m + 1)
        diag = h[m - 1][m - 1]
        for k, c in enumerate(prev):
            cur[k + 1] = cur[k + 1] + c
            cur[k] = cur[k] - diag * c
        running = one
        for i in range(m - 1, 0, -1):
            running = running * h[i][i - 1]
            if running.is_zero():
                break
            coeff = h[i - 1][m - 1] * running
            if coeff.is_zero():
                continue
            for k, c in enumerate(polys[i - 1]):
                cur[k] = cur[k] - coeff * c
        polys.append(cur)
    return polys[n]


def det_quadratic_pencil(a1: list[list[Cyclo]], a2: list[list[Cyclo]], order: int) -> CycloPoly:
    """det(I + u*A1 + u^2*A2) by companion linearization to det(I - u*C) with
    C = [[-A1, -A2], [I, 0]], size 2n."""
    n = len(a1)
    zero = Cyclo.rational(0, order)
    one = Cyclo.rational(1, order)
    big = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            big[i][j] = -a1[i][j].coerce(order)
            big[i][n + j] = -a2[i][j].coerce(order)
        big[n + i][i] = one
    return det_one_minus_u(big, order)
