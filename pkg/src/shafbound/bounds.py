"""Closed-form effective bounds for unit equations and split del Pezzo surfaces.

Every function here is a pure evaluation of an explicit inequality.  Quantities
that are too large to expand are carried as :class:`~shafbound.tower.Magnitude`
logs rounded upward, so every reported number is still an upper bound.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import mpmath
from mpmath import mpf

from .tower import ONE, WORK_DPS, Magnitude, format_ln, round_up

# Orders of the Weyl groups W(E_8), W(E_7), W(E_6), W(D_5), keyed by degree.
WEYL_ORDERS = {1: 696729600, 2: 2903040, 3: 51840, 4: 1920}
STATED_SPLITTING_FACTORIAL = 240


@dataclass(frozen=True)
class FieldInvariants:
    """Degree, discriminant, norm of S and |S| for a number field K."""

    d_K: int
    D_K: int
    N_S: int
    s: int

    def __post_init__(self) -> None:
        for name in ("d_K", "D_K", "N_S", "s"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"{name} must be an int, got {type(value).__name__}")
        if self.d_K < 1 or self.D_K < 1 or self.N_S < 1:
            raise ValueError("d_K, D_K and N_S must be positive")
        if self.s < 0:
            raise ValueError("s must be non-negative")
        if self.s == 0 and self.N_S != 1:
            raise ValueError("an empty S has norm 1")

    @classmethod
    def rationals(cls, primes: tuple[int, ...] | list[int] = ()) -> FieldInvariants:
        """Invariants of Q with S the given primes."""
        return cls(d_K=1, D_K=1, N_S=math.prod(primes), s=len(primes))


@dataclass(frozen=True)
class BoundProvenance:
    formula: str
    l: int
    d_K: int
    D_K: int
    N_S: int
    s: int


@dataclass(frozen=True, eq=False)
class EffectiveBound:
    """The bound ``multiplier * base ** exponent``."""

    base: Magnitude
    exponent: Magnitude
    provenance: BoundProvenance
    multiplier: Magnitude = ONE

    @property
    def exact_exponent(self) -> bool:
        return self.exponent.is_exact

    def ln_bound(self) -> mpf:
        with mpmath.workdps(WORK_DPS):
            if self.exponent.exact is not None:
                e = mpf(self.exponent.exact)
            else:
                e = round_up(mpmath.exp(self.exponent.ln))
            return round_up(self.multiplier.ln + e * self.base.ln)

    def ln_ln_bound(self) -> mpf:
        """``ln(ln(bound))``, computed in log space when there is no multiplier."""
        if self.base.ln <= 0 and self.multiplier.ln <= 0:
            raise ValueError("ln ln is undefined for a bound equal to 1")
        with mpmath.workdps(WORK_DPS):
            if self.multiplier.exact == 1 and self.base.ln > 0:
                return round_up(self.exponent.ln + mpmath.log(self.base.ln))
            return round_up(mpmath.log(self.ln_bound()))

    def value(self, ceiling: int | None = None) -> int:
        """Expand the bound to an integer; raises OverflowError past the ceiling."""
        full = self.base.pow(self.exponent, ceiling).mul(self.multiplier, ceiling)
        if full.exact is None:
            raise OverflowError(f"bound has about {full.digits()} digits, above the ceiling")
        return full.exact

    def to_json(self) -> dict:
        out = {
            "base": self.base.to_json(),
            "exponent": self.exponent.to_json(),
            "ln_bound": format_ln(self.ln_bound()),
            "ln_ln_bound": format_ln(self.ln_ln_bound()),
            "provenance": asdict(self.provenance),
        }
        if self.multiplier.exact != 1:
            out["multiplier"] = self.multiplier.to_json()
        return out


@dataclass(frozen=True)
class ExtensionInvariants:
    """Upper bounds for the invariants of an extension L/K of degree l."""

    d_L: int
    D_L_bound: Magnitude
    N_SL_bound: Magnitude
    h_SL_bound: Magnitude
    N_Sprime_bound: EffectiveBound
    S_prime_card_bound: Magnitude


def lenstra_class_number_bound(inv: FieldInvariants) -> int:
    """Upper bound ``(d_K + D_K) ** d_K`` on the class number of K."""
    return (inv.d_K + inv.D_K) ** inv.d_K


def lenstra_sharp_bound(inv: FieldInvariants) -> mpf:
    """The sharper intermediate class-number bound, rounded upward.

    ``sqrt(D_K) * (d_K - 1 + log(D_K)/2) ** (d_K - 1) / (d_K - 1)!``
    """
    d, D = inv.d_K, inv.D_K
    with mpmath.workdps(WORK_DPS):
        inner = (d - 1) + mpmath.log(D) / 2
        value = mpmath.sqrt(D) * inner ** (d - 1) / mpmath.factorial(d - 1)
        return round_up(value)


def _check_degree(l: int) -> None:
    if not isinstance(l, int) or l < 1:
        raise ValueError(f"extension degree must be a positive integer, got {l!r}")


def _discriminant_bound(l: int, inv: FieldInvariants, ceiling: int | None) -> Magnitude:
    # D_K^l N_S^l l^(l d_K s) == (D_K N_S l^(d_K s))^l
    inner = Magnitude.of(inv.D_K).mul(Magnitude.of(inv.N_S), ceiling)
    inner = inner.mul(Magnitude.of(l).pow(inv.d_K * inv.s, ceiling), ceiling)
    return inner.pow(l, ceiling)


def _class_number_bound(l: int, inv: FieldInvariants, D_L: Magnitude, ceiling: int | None) -> Magnitude:
    # Class-number bound for L applied with D_L replaced by its upper bound.
    return Magnitude.of(l * inv.d_K).add(D_L, ceiling).pow(l * inv.d_K, ceiling)


def _provenance(formula: str, l: int, inv: FieldInvariants) -> BoundProvenance:
    return BoundProvenance(formula, l, inv.d_K, inv.D_K, inv.N_S, inv.s)


def extension_invariants(l: int, inv: FieldInvariants, ceiling: int | None = None) -> ExtensionInvariants:
    _check_degree(l)
    D_L = _discriminant_bound(l, inv, ceiling)
    N_SL = Magnitude.of(inv.N_S).pow(l, ceiling)
    h_SL = _class_number_bound(l, inv, D_L, ceiling)
    N_Sprime = EffectiveBound(
        base=D_L,
        exponent=h_SL,
        multiplier=N_SL,
        provenance=_provenance("N_SL * D_L ** h_SL", l, inv),
    )
    # |S_L| <= s*l since each place of S has at most l places above it.
    s_L = inv.s * l
    card = h_SL if s_L == 0 else Magnitude.of(s_L).add(h_SL, ceiling)
    return ExtensionInvariants(
        d_L=l * inv.d_K,
        D_L_bound=D_L,
        N_SL_bound=N_SL,
        h_SL_bound=h_SL,
        N_Sprime_bound=N_Sprime,
        S_prime_card_bound=card,
    )


def unit_equation_height_bound(
    l: int,
    inv: FieldInvariants,
    ceiling: int | None = None,
    log_only: bool = False,
) -> EffectiveBound:
    """Height bound for solutions of the S'-unit equation in an extension of degree l.

    Returns ``(12 l d_K N_S D_K) ** E`` with
    ``E = 20000 l^6 d_K^2 s (l d_K + D_K^l N_S^l l^(l d_K s))^(l d_K)``.
    The exponent is exact while its decimal expansion stays under the digit
    ceiling; ``log_only`` forces log mode throughout.
    """
    _check_degree(l)
    if inv.s == 0:
        raise ValueError(
            "the unit-equation bound needs a nonempty S (its exponent vanishes for s = 0); "
            "pass the enlarged set instead"
        )
    if log_only:
        ceiling = 0
    D_L = _discriminant_bound(l, inv, ceiling)
    h_SL = _class_number_bound(l, inv, D_L, ceiling)
    prefactor = Magnitude.of(20000 * l**6 * inv.d_K**2 * inv.s)
    if log_only:
        prefactor = prefactor.demote()
    exponent = prefactor.mul(h_SL, ceiling)
    base = Magnitude.of(12 * l * inv.d_K * inv.N_S * inv.D_K)
    return EffectiveBound(
        base=base,
        exponent=exponent,
        provenance=_provenance("(12 l d_K N_S D_K) ** E", l, inv),
    )


def weyl_group_order(d: int) -> int:
    """Order of the Weyl group of E_{9-d}, for degrees 1 through 4."""
    try:
        return WEYL_ORDERS[d]
    except (KeyError, TypeError):
        raise ValueError(f"degree must be one of 1, 2, 3, 4; got {d!r}") from None


def dp_point_height_bound(
    d: int,
    inv: FieldInvariants,
    ceiling: int | None = None,
    log_only: bool = False,
) -> EffectiveBound:
    """Bound on the heights of blow-up coordinates for a split del Pezzo surface of degree d."""
    l = weyl_group_order(d)
    bound = unit_equation_height_bound(l, inv, ceiling=ceiling, log_only=log_only)
    prov = BoundProvenance(f"dp degree {d}: " + bound.provenance.formula, l, inv.d_K, inv.D_K, inv.N_S, inv.s)
    return EffectiveBound(bound.base, bound.exponent, prov, bound.multiplier)


def splitting_degree_bound(d: int) -> int:
    """Bound on the degree of the field over which all lines are defined."""
    return weyl_group_order(d)


def stated_splitting_degree_bound() -> int:
    """The uniform constant 240! quoted for the splitting field degree."""
    return math.factorial(STATED_SPLITTING_FACTORIAL)
