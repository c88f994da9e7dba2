"""Exact linear algebra over Q and Z.

Elimination is fraction-free (Bareiss): rational input is scaled row by row to
integers, and every division in the elimination is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence]


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def integer_rows(M: Matrix) -> tuple[list[list[int]], list[int]]:
    """Scale each row of a rational matrix to integers; returns rows and scale factors."""
    rows, scales = [], []
    for row in M:
        fr = [Fraction(x) for x in row]
        scale = _lcm(x.denominator for x in fr)
        rows.append([int(x * scale) for x in fr])
        scales.append(scale)
    return rows, scales


def bareiss_det(M: Matrix) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def det(M: Matrix) -> Fraction:
    """Exact determinant of a square rational matrix."""
    rows, scales = integer_rows(M)
    return Fraction(bareiss_det(rows), math.prod(scales))


def echelon(M: Matrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer-scaled copy of M.

    Returns the echelon rows (zero rows dropped) and the pivot columns.
    """
    A, _ = integer_rows(M)
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    r, prev = 0, 1
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        arc = A[r][c]
        rowr = A[r]
        for i in range(r + 1, nrows):
            rowi = A[i]
            aic = rowi[c]
            for j in range(c + 1, ncols):
                rowi[j] = (arc * rowi[j] - aic * rowr[j]) // prev
            rowi[c] = 0
        # A skipped zero column leaves prev unchanged; divisions stay exact.
        prev = arc
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: Matrix) -> int:
    return len(echelon(M)[1])


def primitive_vector(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers, first nonzero entry positive."""
    fr = [Fraction(x) for x in v]
    scale = _lcm(x.denominator for x in fr)
    ints = [int(x * scale) for x in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def kernel(M: Matrix, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of the right kernel, one primitive integer vector per free column."""
    if ncols is None:
        if not M:
            raise ValueError("pass ncols for a matrix with no rows")
        ncols = len(M[0])
    if not M:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    E, pivots = echelon(M)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            row = E[r]
            acc = sum((row[j] * v[j] for j in range(pc + 1, ncols) if row[j]), Fraction(0))
            v[pc] = -acc / row[pc]
        basis.append(primitive_vector(v))
    if len(pivots) + len(basis) != ncols:
        raise AssertionError("rank-nullity failed in kernel computation")
    for v in basis:
        for row in M:
            if sum(Fraction(a) * b for a, b in zip(row, v)) != 0:
                raise AssertionError("kernel vector does not annihilate the matrix")
    return basis


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _integer_echelon(A: list[list[int]], upto: int) -> int:
    """Unimodular row reduction of the first ``upto`` columns in place; returns the rank."""
    nrows = len(A)
    r = 0
    for c in range(upto):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            if A[i][c] == 0:
                continue
            a, b = A[r][c], A[i][c]
            g, s, t = _xgcd(a, b)
            ag, bg = a // g, b // g
            rowr, rowi = A[r], A[i]
            A[r] = [s * x + t * y for x, y in zip(rowr, rowi)]
            A[i] = [ag * y - bg * x for x, y in zip(rowr, rowi)]
        if A[r][c] == 0:
            swap = next((i for i in range(r + 1, nrows) if A[i][c] != 0), None)
            if swap is None:
                continue
            A[r], A[swap] = A[swap], A[r]
        r += 1
    return r


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of an integer lattice basis (zero rows dropped)."""
    A = [list(map(int, row)) for row in rows]
    if not A:
        return []
    ncols = len(A[0])
    rank_ = _integer_echelon(A, ncols)
    A = A[:rank_]
    pivots = []
    for r, row in enumerate(A):
        c = next(j for j, x in enumerate(row) if x != 0)
        if row[c] < 0:
            A[r] = row = [-x for x in row]
        pivots.append(c)
        for k in range(r):
            q = A[k][c] // row[c]
            if q:
                A[k] = [x - q * y for x, y in zip(A[k], row)]
    return [tuple(row) for row in A]


def integer_kernel(M: Sequence[Sequence[int]], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Z-basis, in Hermite normal form, of the integer vectors v with M v = 0."""
    if ncols is None:
        ncols = len(M[0])
    m = len(M)
    # Row-reduce [M^T | I]; rows whose M^T part vanishes span the integer kernel.
    A = [[int(M[i][j]) for i in range(m)] + [int(j == k) for k in range(ncols)] for j in range(ncols)]
    r = _integer_echelon(A, m)
    basis = [row[m:] for row in A[r:]]
    for v in basis:
        if any(sum(a * b for a, b in zip(row, v)) for row in M):
            raise AssertionError("integer kernel vector does not annihilate the matrix")
    return hermite_normal_form(basis)


@dataclass(frozen=True)
class RationalMatrix:
    """A dense exact-rational matrix."""

    entries: tuple[tuple[Fraction, ...], ...]
    cols: int

    @classmethod
    def of(cls, rows: Matrix, cols: int | None = None) -> RationalMatrix:
        entries = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if cols is None:
            if not entries:
                raise ValueError("pass cols for an empty matrix")
            cols = len(entries[0])
        if any(len(row) != cols for row in entries):
            raise ValueError("ragged matrix")
        return cls(entries, cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def kernel(self) -> list[tuple[int, ...]]:
        return kernel(self.entries, self.cols)

    def rank(self) -> int:
        return rank(self.entries) if self.entries else 0

    def det(self) -> Fraction:
        return det(self.entries)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum((a * Fraction(b) for a, b in zip(row, v)), Fraction(0)) for row in self.entries)
