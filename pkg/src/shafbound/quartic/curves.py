"""Plane quartics: discriminant, good reduction and reduction mod p.

The discriminant is normalized as disc(f) = Res(f_x, f_y, f_z) with
Res(x^3, y^3, z^3) = 1.  It is homogeneous of degree 27 in the coefficients
and transforms by det(M)^36 under a linear substitution x -> M x.

For an integral quartic this resultant is always divisible by 4^7, and the
quotient is the primitive discriminant polynomial, which vanishes mod p exactly
when the reduction is singular.  Bad primes are read off that quotient: the
Klein quartic has Res = 2^14 7^7 but good reduction at 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import nextprime

from ..errors import CertificateError
from ..geomkernel.forms import TernaryForm
from ..sunit import PrimeSet, prime_support, valuation
from .macaulay import DEFAULT_SEED, macaulay_resultant

# Primes that always deserve a look when factoring discriminants.
SMALL_PRIMES = (2, 3, 5, 7, 11, 13)
# Res of the partials of a degree-d form in 3 variables carries d^(((d-1)^3 + 1)/d).
RESULTANT_CONTENT = 4**7


def _check_quartic(f: TernaryForm) -> None:
    if f.degree != 4:
        raise ValueError(f"expected a quartic, got degree {f.degree}")
    if f.is_zero():
        raise ValueError("the zero form is not a curve")


def quartic_discriminant(f: TernaryForm, seed: int = DEFAULT_SEED) -> Fraction:
    """Res(f_x, f_y, f_z); zero exactly when f is singular over the algebraic closure."""
    _check_quartic(f)
    g = f.primitive()
    i = next(i for i, c in enumerate(g.coeffs) if c)
    scale = f.coeffs[i] / g.coeffs[i]
    return macaulay_resultant(g.gradient(), seed=seed) * scale**27


def primitive_discriminant(f: TernaryForm, seed: int = DEFAULT_SEED) -> int:
    """Res of the partials of the primitive integer multiple of f."""
    _check_quartic(f)
    return macaulay_resultant(f.primitive().gradient(), seed=seed)


def reduced_discriminant(f: TernaryForm, seed: int = DEFAULT_SEED) -> int:
    """primitive_discriminant(f) / 4^7; its prime support is the set of bad primes."""
    res = primitive_discriminant(f, seed)
    if res % RESULTANT_CONTENT:
        raise CertificateError("resultant of the partials is not divisible by 4^7")
    return res // RESULTANT_CONTENT


@dataclass(frozen=True)
class QuarticCurve:
    """A quartic with its discriminant and the primes where it reduces badly."""

    form: TernaryForm
    discriminant: Fraction
    bad_primes: tuple[int, ...]

    @classmethod
    def of(cls, f: TernaryForm, seed: int = DEFAULT_SEED, known: tuple[int, ...] = ()) -> QuarticCurve:
        g = f.primitive()
        i = next(i for i, c in enumerate(g.coeffs) if c)
        red = reduced_discriminant(f, seed)
        support = prime_support(red, tuple(known) + SMALL_PRIMES) if red else ()
        return cls(f, red * RESULTANT_CONTENT * (f.coeffs[i] / g.coeffs[i]) ** 27, support)

    @property
    def smooth(self) -> bool:
        return self.discriminant != 0

    def to_json(self) -> dict:
        return {
            "form": self.form.to_json(),
            "discriminant": f"{self.discriminant.numerator}/{self.discriminant.denominator}",
            "bad_primes": list(self.bad_primes),
            "smooth": self.smooth,
        }


@dataclass(frozen=True)
class DoubleCoverRecord:
    """The surface w^2 = f(x, y, z) in P(1, 1, 1, 2); nothing beyond bookkeeping."""

    quartic: TernaryForm
    bad_primes: tuple[int, ...]
    equation: str = "w^2 = f(x0, x1, x2)"
    ambient: str = "P(1,1,1,2)"


def double_cover_from_quartic(f: TernaryForm, seed: int = DEFAULT_SEED) -> DoubleCoverRecord:
    """Double cover branched along f; it is smooth away from 2 and the bad primes of f."""
    curve = QuarticCurve.of(f, seed)
    if not curve.smooth:
        raise ValueError("the branch quartic is singular")
    return DoubleCoverRecord(f, tuple(sorted(set(curve.bad_primes) | {2})))


@dataclass(frozen=True)
class QuarticVerdict:
    smooth: bool
    verdict: bool
    disc_support: tuple[int, ...]
    cover_requires_2: bool
    singular: bool = field(default=False)

    def to_json(self) -> dict:
        return {
            "smooth": self.smooth,
            "disc_support": list(self.disc_support),
            "cover_requires_2": self.cover_requires_2,
            "verdict": self.verdict,
        }


def good_reduction_verdict(f: TernaryForm, S: PrimeSet, seed: int = DEFAULT_SEED) -> QuarticVerdict:
    """Whether the primitive integral model of f is smooth over Z[1/S].

    ``cover_requires_2`` is set when 2 is missing from S: the curve may still
    have good reduction, but the double cover is only smooth after inverting 2.
    """
    curve = QuarticCurve.of(f, seed, known=tuple(S))
    needs_2 = 2 not in S
    if not curve.smooth:
        return QuarticVerdict(False, False, (), needs_2, singular=True)
    ok = all(p in S for p in curve.bad_primes)
    return QuarticVerdict(True, ok, curve.bad_primes, needs_2)


# reduction modulo p


def _reduced_terms(f: TernaryForm, p: int) -> list[tuple[tuple[int, int, int], int]]:
    g = f.primitive()
    return [(m, int(c) % p) for m, c in g.terms().items() if int(c) % p]


def _eval_mod(terms, p: int, pt: tuple[int, int, int]) -> int:
    x, y, z = pt
    return sum(c * pow(x, i, p) * pow(y, j, p) * pow(z, k, p) for (i, j, k), c in terms) % p


def projective_points_mod_p(p: int):
    """Canonical representatives of P^2(F_p)."""
    for x in range(p):
        for y in range(p):
            yield (x, y, 1)
    for x in range(p):
        yield (x, 1, 0)
    yield (1, 0, 0)


def count_points_mod_p(f: TernaryForm, p: int) -> int:
    """Number of F_p-points on the reduction of the primitive integral model."""
    terms = _reduced_terms(f, p)
    return sum(1 for pt in projective_points_mod_p(p) if _eval_mod(terms, p, pt) == 0)


def singular_points_mod_p(f: TernaryForm, p: int) -> list[tuple[int, int, int]]:
    """F_p-points where the reduction and all three partials vanish."""
    terms = _reduced_terms(f, p)
    g = f.primitive()
    grads = [_reduced_terms(g.partial(a), p) for a in range(3)]
    out = []
    for pt in projective_points_mod_p(p):
        if _eval_mod(terms, p, pt) == 0 and all(_eval_mod(t, p, pt) == 0 for t in grads):
            out.append(pt)
    return out


@dataclass(frozen=True)
class Fingerprint:
    """Invariants used to tell quartics apart; equality proves nothing."""

    disc_support: tuple[int, ...]
    point_counts: tuple[tuple[int, int], ...]
    disc_valuations: tuple[tuple[int, int], ...]


def equivalence_fingerprint(f: TernaryForm, n_primes: int = 5, seed: int = DEFAULT_SEED) -> Fingerprint:
    """Support, F_p point counts at the first good primes, and discriminant valuations.

    Everything is computed on the primitive integral model, so the record is
    unchanged by scaling f and by substitutions in GL_3(Z).  Point counts at a
    prime where two curves both have good reduction also separate them up to
    isomorphism over Q.
    """
    disc = reduced_discriminant(f, seed)
    if disc == 0:
        raise ValueError("fingerprints are defined for smooth quartics only")
    support = prime_support(disc, SMALL_PRIMES)
    counts = []
    p = 1
    while len(counts) < n_primes:
        p = int(nextprime(p))
        if disc % p:
            counts.append((p, count_points_mod_p(f, p)))
    vals = tuple((q, valuation(disc, q)) for q in support)
    return Fingerprint(support, tuple(counts), vals)


def klein_quartic() -> TernaryForm:
    return TernaryForm.from_terms(4, {(3, 1, 0): 1, (0, 3, 1): 1, (1, 0, 3): 1})


def fermat_quartic() -> TernaryForm:
    return TernaryForm.from_terms(4, {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1})


__all__ = [
    "DoubleCoverRecord",
    "Fingerprint",
    "QuarticCurve",
    "QuarticVerdict",
    "count_points_mod_p",
    "double_cover_from_quartic",
    "equivalence_fingerprint",
    "fermat_quartic",
    "good_reduction_verdict",
    "klein_quartic",
    "primitive_discriminant",
    "reduced_discriminant",
    "projective_points_mod_p",
    "quartic_discriminant",
    "singular_points_mod_p",
]
