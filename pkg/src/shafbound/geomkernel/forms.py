"""Homogeneous forms in three variables with exact rational coefficients.

Coefficients are stored densely, indexed by exponent triples (i, j, k) with
i + j + k = d in descending lexicographic order:

    d = 2:  x^2, xy, xz, y^2, yz, z^2

This order is fixed; JSON serialization relies on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

Exponent = tuple[int, int, int]


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple[Exponent, ...]:
    if d < 0:
        raise ValueError("degree must be non-negative")
    return tuple((i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(d: int) -> dict[Exponent, int]:
    return {m: n for n, m in enumerate(monomials(d))}


def n_monomials(d: int) -> int:
    return (d + 1) * (d + 2) // 2


def eval_monomial(m: Exponent, point: Sequence) -> object:
    x, y, z = point
    return x ** m[0] * y ** m[1] * z ** m[2]


@dataclass(frozen=True)
class TernaryForm:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != n_monomials(self.degree):
            raise ValueError(f"degree {self.degree} needs {n_monomials(self.degree)} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    # construction

    @classmethod
    def zero(cls, d: int) -> TernaryForm:
        return cls(d, (Fraction(0),) * n_monomials(d))

    @classmethod
    def from_terms(cls, d: int, terms: Mapping[Exponent, object]) -> TernaryForm:
        idx = monomial_index(d)
        coeffs = [Fraction(0)] * n_monomials(d)
        for m, c in terms.items():
            if sum(m) != d:
                raise ValueError(f"monomial {m} is not of degree {d}")
            coeffs[idx[tuple(m)]] += Fraction(c)
        return cls(d, tuple(coeffs))

    @classmethod
    def linear(cls, a, b, c) -> TernaryForm:
        return cls(1, (a, b, c))

    @classmethod
    def variable(cls, axis: int) -> TernaryForm:
        return cls(1, tuple(int(i == axis) for i in range(3)))

    def terms(self) -> dict[Exponent, Fraction]:
        return {m: c for m, c in zip(monomials(self.degree), self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # arithmetic

    def __add__(self, other: TernaryForm) -> TernaryForm:
        self._same_degree(other)
        return TernaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: TernaryForm) -> TernaryForm:
        self._same_degree(other)
        return TernaryForm(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> TernaryForm:
        return TernaryForm(self.degree, tuple(-a for a in self.coeffs))

    def scale(self, c) -> TernaryForm:
        c = Fraction(c)
        return TernaryForm(self.degree, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, TernaryForm):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> TernaryForm:
        if n < 0:
            raise ValueError("negative powers are not forms")
        out = TernaryForm.from_terms(0, {(0, 0, 0): 1})
        base = self
        while n:
            if n & 1:
                out = multiply(out, base)
            n >>= 1
            if n:
                base = multiply(base, base)
        return out

    def _same_degree(self, other: TernaryForm) -> None:
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    # evaluation and calculus

    def evaluate(self, point: Sequence) -> Fraction:
        pt = tuple(point)
        return sum((c * eval_monomial(m, pt) for m, c in zip(monomials(self.degree), self.coeffs) if c), Fraction(0))

    def partial(self, axis: int) -> TernaryForm:
        if axis not in (0, 1, 2):
            raise ValueError("axis must be 0, 1 or 2")
        if self.degree == 0:
            return TernaryForm.zero(0)
        terms: dict[Exponent, Fraction] = {}
        for m, c in self.terms().items():
            e = m[axis]
            if e:
                lowered = list(m)
                lowered[axis] -= 1
                terms[tuple(lowered)] = c * e
        return TernaryForm.from_terms(self.degree - 1, terms)

    def gradient(self) -> tuple[TernaryForm, TernaryForm, TernaryForm]:
        return (self.partial(0), self.partial(1), self.partial(2))

    def compose(self, F0: TernaryForm, F1: TernaryForm, F2: TernaryForm) -> TernaryForm:
        return compose(self, (F0, F1, F2))

    def linear_substitution(self, M: Sequence[Sequence]) -> TernaryForm:
        """``f(M x)``: substitute each variable by the matching row of M as a linear form."""
        return compose(self, tuple(TernaryForm.linear(*row) for row in M))

    # normalization and serialization

    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        nonzero = [c for c in self.coeffs if c]
        if not nonzero:
            raise ValueError("the zero form has no content")
        num = 0
        den = 1
        for c in nonzero:
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> TernaryForm:
        """Coprime integer coefficients with the first nonzero coefficient positive."""
        c = self.content()
        lead = next(a for a in self.coeffs if a)
        if lead < 0:
            c = -c
        return self.scale(1 / c)

    def integer_coeffs(self) -> tuple[int, ...]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("form has non-integral coefficients")
        return tuple(int(c) for c in self.coeffs)

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> TernaryForm:
        try:
            degree = int(data["degree"])
            coeffs = [Fraction(str(c)) for c in data["coeffs"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed form: {exc}") from exc
        return cls(degree, tuple(coeffs))

    def __str__(self) -> str:
        parts = []
        for (i, j, k), c in self.terms().items():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip("xyz", (i, j, k)) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def evaluate(form: TernaryForm, point: Sequence) -> Fraction:
    return form.evaluate(point)


def partial_derivative(form: TernaryForm, axis: int) -> TernaryForm:
    return form.partial(axis)


def multiply(f: TernaryForm, g: TernaryForm) -> TernaryForm:
    d = f.degree + g.degree
    idx = monomial_index(d)
    coeffs = [Fraction(0)] * n_monomials(d)
    gt = list(g.terms().items())
    for (a, b, c), u in f.terms().items():
        for (p, q, r), v in gt:
            coeffs[idx[(a + p, b + q, c + r)]] += u * v
    return TernaryForm(d, tuple(coeffs))


def compose(form: TernaryForm, subs: Sequence[TernaryForm]) -> TernaryForm:
    """Substitute three forms of a common degree e; the result has degree d*e."""
    if len(subs) != 3:
        raise ValueError("compose needs exactly three forms")
    e = subs[0].degree
    if any(s.degree != e for s in subs):
        raise ValueError("substituted forms must share a degree")
    d = form.degree
    powers = [[TernaryForm.from_terms(0, {(0, 0, 0): 1})] for _ in range(3)]
    for axis in range(3):
        for _ in range(d):
            powers[axis].append(multiply(powers[axis][-1], subs[axis]))
    out = TernaryForm.zero(d * e)
    for (i, j, k), c in form.terms().items():
        out = out + multiply(multiply(powers[0][i], powers[1][j]), powers[2][k]).scale(c)
    return out
