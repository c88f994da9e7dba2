"""Rational points of the projective plane and general-position predicates.

Each predicate returns its boolean together with the integer determinant it
was decided by, computed on the primitive integer coordinates in the order
given.  Over Q these determinants decide the conditions over the algebraic
closure too: a line, conic or singular cubic through rational points exists
over the closure iff the corresponding rational linear system is singular.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .forms import monomials
from .linalg import bareiss_det

STANDARD_FRAME_COORDS = ((0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1))


@dataclass(frozen=True, order=True)
class ProjPointQ:
    """A point of P^2(Q) as its canonical primitive integer triple."""

    x: int
    y: int
    z: int

    def __post_init__(self) -> None:
        c = (self.x, self.y, self.z)
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in c):
            raise TypeError("coordinates must be ints; use ProjPointQ.of for rationals")
        if c == (0, 0, 0):
            raise ValueError("(0:0:0) is not a projective point")
        if math.gcd(*c) != 1:
            raise ValueError(f"{c} is not primitive; use ProjPointQ.of")
        if next(v for v in c if v) < 0:
            raise ValueError(f"{c} is not canonical; use ProjPointQ.of")

    @classmethod
    def of(cls, *coords) -> ProjPointQ:
        """Canonical representative of the point with the given rational coordinates."""
        if len(coords) == 1:
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise ValueError("a plane point has three coordinates")
        fr = [Fraction(c) for c in coords]
        if not any(fr):
            raise ValueError("(0:0:0) is not a projective point")
        scale = math.lcm(*(c.denominator for c in fr))
        ints = [int(c * scale) for c in fr]
        g = math.gcd(*ints)
        ints = [v // g for v in ints]
        if next(v for v in ints if v) < 0:
            ints = [-v for v in ints]
        return cls(*ints)

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def __iter__(self):
        return iter(self.coords)

    def to_json(self) -> list[int]:
        return list(self.coords)

    def __repr__(self) -> str:
        return f"({self.x}:{self.y}:{self.z})"


STANDARD_FRAME = tuple(ProjPointQ(*c) for c in STANDARD_FRAME_COORDS)


def det3(p: Sequence[int], q: Sequence[int], r: Sequence[int]) -> int:
    return (
        p[0] * (q[1] * r[2] - q[2] * r[1])
        - p[1] * (q[0] * r[2] - q[2] * r[0])
        + p[2] * (q[0] * r[1] - q[1] * r[0])
    )


def collinear(p: ProjPointQ, q: ProjPointQ, r: ProjPointQ) -> tuple[bool, int]:
    d = det3(p.coords, q.coords, r.coords)
    return d == 0, d


def _monomial_row(d: int, point: Sequence[int]) -> list[int]:
    x, y, z = point
    return [x**i * y**j * z**k for i, j, k in monomials(d)]


def _gradient_rows(d: int, point: Sequence[int]) -> list[list[int]]:
    x, y, z = point
    rows = []
    for axis in range(3):
        row = []
        for m in monomials(d):
            e = m[axis]
            if e == 0:
                row.append(0)
                continue
            lowered = list(m)
            lowered[axis] -= 1
            row.append(e * x ** lowered[0] * y ** lowered[1] * z ** lowered[2])
        rows.append(row)
    return rows


def conic_matrix(points: Sequence[ProjPointQ]) -> list[list[int]]:
    return [_monomial_row(2, p.coords) for p in points]


def conic_determinant(points: Sequence[ProjPointQ]) -> tuple[bool, int]:
    """Whether six points lie on a common conic, with the 6x6 determinant."""
    if len(points) != 6:
        raise ValueError(f"conic test needs exactly six points, got {len(points)}")
    d = bareiss_det(conic_matrix(points))
    return d == 0, d


def singular_cubic_matrix(points: Sequence[ProjPointQ], i: int) -> list[list[int]]:
    # Euler's relation makes vanishing at points[i] follow from the gradient rows.
    rows = [_monomial_row(3, p.coords) for j, p in enumerate(points) if j != i]
    rows.extend(_gradient_rows(3, points[i].coords))
    return rows


def singular_cubic_exists(points: Sequence[ProjPointQ], i: int) -> tuple[bool, int]:
    """Whether a cubic through all eight points, singular at ``points[i]``, exists."""
    if len(points) != 8:
        raise ValueError(f"singular cubic test needs exactly eight points, got {len(points)}")
    if not 0 <= i < 8:
        raise ValueError(f"base index must be in 0..7, got {i}")
    d = bareiss_det(singular_cubic_matrix(points, i))
    return d == 0, d


@dataclass(frozen=True)
class GeneralPosition:
    """Outcome of a general-position test; falsy on failure."""

    ok: bool
    predicate: str | None = None
    subset: tuple[int, ...] | None = None
    base_index: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def general_position(points: Sequence[ProjPointQ]) -> GeneralPosition:
    """No three on a line, no six on a conic, no eight on a cubic singular at one of them.

    On failure the witness is the lexicographically first failing index subset,
    checking lines, then conics, then singular cubics.
    """
    n = len(points)
    if not 1 <= n <= 8:
        raise ValueError(f"general position is defined here for 1 to 8 points, got {n}")
    if len(set(points)) != n:
        raise ValueError("points must be pairwise distinct")
    for idx in combinations(range(n), 3):
        if collinear(*(points[i] for i in idx))[0]:
            return GeneralPosition(False, "line", idx)
    for idx in combinations(range(n), 6):
        if conic_determinant([points[i] for i in idx])[0]:
            return GeneralPosition(False, "conic", idx)
    if n == 8:
        for i in range(8):
            if singular_cubic_exists(points, i)[0]:
                return GeneralPosition(False, "singular_cubic", tuple(range(8)), i)
    return GeneralPosition(True)


def apply_matrix(M: Sequence[Sequence[int]], p: ProjPointQ) -> ProjPointQ:
    v = p.coords
    return ProjPointQ.of(*(sum(a * b for a, b in zip(row, v)) for row in M))
