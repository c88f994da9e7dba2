"""S-unit arithmetic over Q and the unit equation a + (1 - a) = 1."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from sympy import factorint, isprime


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of rational primes, stored strictly increasing."""

    primes: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        primes = tuple(self.primes)
        object.__setattr__(self, "primes", primes)
        for p in primes:
            if not isinstance(p, int) or isinstance(p, bool) or not isprime(p):
                raise ValueError(f"{p!r} is not a prime")
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise ValueError("primes must be strictly increasing")

    @classmethod
    def of(cls, primes) -> PrimeSet:
        return cls(tuple(sorted(set(int(p) for p in primes))))

    @classmethod
    def parse(cls, text: str) -> PrimeSet:
        """Parse a comma-separated list such as ``"2,3"``; empty text is the empty set."""
        text = text.strip()
        if not text:
            return cls()
        return cls.of(int(tok) for tok in text.split(","))

    def __iter__(self):
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def __contains__(self, p: object) -> bool:
        return p in self.primes

    @property
    def norm(self) -> int:
        return math.prod(self.primes)

    def split(self, n: int) -> tuple[tuple[int, ...], int]:
        """Return the exponents of the primes of S in ``|n|`` and the cofactor."""
        n = abs(n)
        if n == 0:
            raise ValueError("cannot factor 0")
        exps = []
        for p in self.primes:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            exps.append(e)
        return tuple(exps), n

    def is_smooth(self, n: int) -> bool:
        return n != 0 and self.split(n)[1] == 1


@dataclass(frozen=True)
class SUnitQ:
    """The S-unit ``sign * prod(p_i ** e_i)``."""

    sign: int
    exponents: tuple[int, ...]
    primes: PrimeSet

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if len(self.exponents) != len(self.primes):
            raise ValueError("one exponent per prime of S")

    def value(self) -> Fraction:
        v = Fraction(self.sign)
        for p, e in zip(self.primes, self.exponents):
            v *= Fraction(p) ** e
        return v

    def to_json(self) -> dict:
        return {"sign": self.sign, "exponents": list(self.exponents)}


@dataclass(frozen=True, order=True)
class HeightValue:
    """Exponential height ``max(|m|, n)`` of a rational ``m/n`` in lowest terms."""

    H: int

    def __post_init__(self) -> None:
        if self.H < 1:
            raise ValueError("heights are at least 1")

    @property
    def ln_H(self) -> float:
        return math.log(self.H)


def _as_fraction(a) -> Fraction:
    if isinstance(a, Fraction):
        return a
    if isinstance(a, (int, Rational)):
        return Fraction(a)
    if isinstance(a, str):
        return Fraction(a)
    raise TypeError(f"expected an exact rational, got {type(a).__name__}")


def height(a) -> HeightValue:
    a = _as_fraction(a)
    if a == 0:
        raise ValueError("the height of 0 is not defined here")
    return HeightValue(max(abs(a.numerator), a.denominator))


def is_s_unit(a, S: PrimeSet) -> SUnitQ | None:
    a = _as_fraction(a)
    if a == 0:
        raise ValueError("0 is not a unit")
    num_exp, num_rest = S.split(a.numerator)
    den_exp, den_rest = S.split(a.denominator)
    if num_rest != 1 or den_rest != 1:
        return None
    exps = tuple(e - f for e, f in zip(num_exp, den_exp))
    return SUnitQ(1 if a > 0 else -1, exps, S)


def smooth_numbers(S: PrimeSet, bound: int) -> list[int]:
    """All positive S-smooth integers up to ``bound``, ascending."""
    if bound < 1:
        return []
    out = [1]
    for p in S:
        grown = []
        for x in out:
            while x <= bound:
                grown.append(x)
                x *= p
        out = grown
    return sorted(out)


def canonical_key(a: Fraction) -> tuple[int, int, int]:
    return (max(abs(a.numerator), a.denominator), a.numerator, a.denominator)


def _solve_chunk(primes: tuple[int, ...], smooth: list[int], denominators: list[int]) -> list[Fraction]:
    S = PrimeSet(primes)
    found = []
    for n in denominators:
        for m in smooth:
            if math.gcd(m, n) != 1:
                continue
            for num in (m, -m):
                if num == n:
                    continue
                if S.is_smooth(n - num):
                    found.append(Fraction(num, n))
    return found


def solve_unit_equation(S: PrimeSet, height_cap: HeightValue | int, jobs: int = 1) -> list[Fraction]:
    """Every a with a and 1 - a both S-units and height at most the cap.

    Writing a = m/n in lowest terms, both |m| and n are S-smooth and so is
    n - m, so the search runs over coprime pairs of S-smooth integers up to
    the cap.  The result is sorted by (H, numerator, denominator).
    """
    cap = height_cap.H if isinstance(height_cap, HeightValue) else int(height_cap)
    if cap < 1:
        raise ValueError("height cap must be at least 1")
    smooth = smooth_numbers(S, cap)
    if jobs > 1 and len(smooth) > 1:
        chunks = [smooth[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_solve_chunk, [S.primes] * len(chunks), [smooth] * len(chunks), chunks)
            found = [a for part in parts for a in part]
    else:
        found = _solve_chunk(S.primes, smooth, smooth)
    for a in found:
        if is_s_unit(a, S) is None or is_s_unit(1 - a, S) is None:
            raise AssertionError(f"solver produced a non-solution {a}")
    return sorted(set(found), key=canonical_key)


def symmetry_orbit(a) -> frozenset[Fraction]:
    """Orbit of a under the six maps permuting the solutions of x + y = 1."""
    a = _as_fraction(a)
    if a in (0, 1):
        raise ValueError("the orbit is defined only away from 0 and 1")
    return frozenset({a, 1 - a, 1 / a, 1 / (1 - a), a / (a - 1), (a - 1) / a})


def orbit_partition(solutions) -> list[list[Fraction]]:
    """Group solutions into symmetry orbits, each sorted, ordered by first element."""
    remaining = set(solutions)
    groups = []
    for a in sorted(remaining, key=canonical_key):
        if a not in remaining:
            continue
        members = symmetry_orbit(a) & remaining
        remaining -= members
        groups.append(sorted(members, key=canonical_key))
    return groups


def prime_support(n: int, known: tuple[int, ...] = ()) -> tuple[int, ...]:
    """Sorted primes dividing a nonzero integer.

    The ``known`` primes are divided out first; whatever remains is handed to
    sympy's factorint.
    """
    n = abs(int(n))
    if n == 0:
        raise ValueError("0 has no finite prime support")
    found = set()
    for p in known:
        if n % p == 0:
            found.add(p)
            while n % p == 0:
                n //= p
    if n > 1:
        found.update(int(p) for p in factorint(n))
    return tuple(sorted(found))


def valuation(n: int, p: int) -> int:
    n = abs(int(n))
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
