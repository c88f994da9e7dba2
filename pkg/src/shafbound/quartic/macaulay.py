"""Macaulay resultant of three ternary forms.

For forms of degrees d0, d1, d2 the construction works in the critical degree
D = d0 + d1 + d2 - 2.  Each degree-D monomial m is assigned to the first form
f_i with x_i^{d_i} dividing m, giving the row (m / x_i^{d_i}) * f_i.  The
resultant is det(M) / det(M'), where M' is the square submatrix on the
monomials divisible by at least two of the x_i^{d_i}.  With this convention
Res(x^a, y^b, z^c) = 1.

When det(M') vanishes the forms are first moved by random unimodular
substitutions.  If that keeps failing, Res(f_i + t x_i^{d_i}) is a monic
polynomial in t of degree d0 d1 d2 whose value at t = 0 is the answer; it is
recovered by interpolation at points where det(M') does not vanish.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import CertificateError, DegeneracyError
from ..geomkernel.forms import TernaryForm, monomial_index, monomials
from ..geomkernel.linalg import bareiss_det

MAX_RETRIES = 4
DEFAULT_SEED = 20240229


@dataclass(frozen=True)
class MacaulayData:
    """The two determinants behind one resultant evaluation."""

    numerator: int
    denominator: int
    size: int
    extraneous_size: int
    transform: tuple[tuple[int, ...], ...] | None


def _integer_form(f: TernaryForm) -> list[tuple[tuple[int, int, int], int]]:
    out = []
    for m, c in f.terms().items():
        if c.denominator != 1:
            raise ValueError("Macaulay matrices need integer coefficients; clear denominators first")
        out.append((m, int(c)))
    return out


def macaulay_matrix(forms: Sequence[TernaryForm]) -> tuple[list[list[int]], list[int]]:
    """The numerator matrix and the indices of its non-reduced monomials."""
    degs = [f.degree for f in forms]
    D = sum(degs) - 2
    mons = monomials(D)
    idx = monomial_index(D)
    terms = [_integer_form(f) for f in forms]
    rows = []
    extraneous = []
    for n, m in enumerate(mons):
        divisible = [i for i in range(3) if m[i] >= degs[i]]
        if len(divisible) >= 2:
            extraneous.append(n)
        i = divisible[0]
        shift = list(m)
        shift[i] -= degs[i]
        row = [0] * len(mons)
        for (a, b, c), coeff in terms[i]:
            row[idx[(a + shift[0], b + shift[1], c + shift[2])]] += coeff
        rows.append(row)
    return rows, extraneous


def _determinants(forms: Sequence[TernaryForm]) -> tuple[int, int, int, int]:
    M, extra = macaulay_matrix(forms)
    num = bareiss_det(M)
    sub = [[M[r][c] for c in extra] for r in extra]
    den = bareiss_det(sub)
    return num, den, len(M), len(extra)


def _random_special_linear(rng: random.Random) -> tuple[tuple[int, ...], ...]:
    """A random 3x3 integer matrix of determinant 1 (product of elementary matrices)."""
    M = [[int(i == j) for j in range(3)] for i in range(3)]
    for _ in range(6):
        i, j = rng.sample(range(3), 2)
        k = rng.choice([-2, -1, 1, 2])
        M[i] = [a + k * b for a, b in zip(M[i], M[j])]
    return tuple(tuple(r) for r in M)


def _perturbed_resultant(forms: Sequence[TernaryForm]) -> int:
    """Res(f) as the constant term of t -> Res(f_i + t x_i^{d_i}), by interpolation."""
    n = math.prod(f.degree for f in forms)
    samples: list[tuple[int, Fraction]] = []
    t = 0
    while len(samples) < n + 2:
        t += 1
        if t > 8 * n + 64:
            raise DegeneracyError("extraneous factor vanished at every perturbation")
        moved = [
            f + TernaryForm.from_terms(f.degree, {tuple(f.degree * (j == i) for j in range(3)): t})
            for i, f in enumerate(forms)
        ]
        num, den, _, _ = _determinants(moved)
        if den == 0:
            continue
        if num % den != 0:
            raise CertificateError("Macaulay extraneous factor does not divide the numerator")
        samples.append((t, Fraction(num // den)))
    # Lagrange through the first n + 1 samples; the last one is a consistency check.
    def interpolate(x: int) -> Fraction:
        pts = samples[: n + 1]
        total = Fraction(0)
        for i, (ti, vi) in enumerate(pts):
            w = vi
            for j, (tj, _) in enumerate(pts):
                if j != i:
                    w *= Fraction(x - tj, ti - tj)
            total += w
        return total

    check_t, check_v = samples[-1]
    if interpolate(check_t) != check_v:
        raise CertificateError("perturbed resultant is not a polynomial of the expected degree")
    value = interpolate(0)
    if value.denominator != 1:
        raise CertificateError("interpolated resultant is not an integer")
    return int(value)


def macaulay_resultant_data(forms: Sequence[TernaryForm], seed: int = DEFAULT_SEED) -> MacaulayData:
    if len(forms) != 3:
        raise ValueError("the ternary resultant takes exactly three forms")
    if any(f.degree < 1 for f in forms):
        raise ValueError("forms must have positive degree")
    num, den, size, esize = _determinants(forms)
    transform = None
    rng = random.Random(seed)
    tries = 0
    while den == 0:
        # Res(F o A) = det(A)^(d0 d1 d2) Res(F) and det(A) = 1.
        if tries == MAX_RETRIES:
            return MacaulayData(_perturbed_resultant(forms), 1, size, esize, None)
        transform = _random_special_linear(rng)
        moved = [f.linear_substitution(transform) for f in forms]
        num, den, size, esize = _determinants(moved)
        tries += 1
    if num % den != 0:
        raise CertificateError("Macaulay extraneous factor does not divide the numerator")
    return MacaulayData(num, den, size, esize, transform)


def macaulay_resultant(forms: Sequence[TernaryForm], seed: int = DEFAULT_SEED) -> int:
    """Res(f0, f1, f2) for integer ternary forms; zero iff they share a projective zero."""
    data = macaulay_resultant_data(forms, seed)
    return data.numerator // data.denominator
