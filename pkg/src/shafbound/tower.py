"""Positive magnitudes that may be too large to expand.

A :class:`Magnitude` is an upper bound on a positive real quantity.  It is
carried exactly as an integer while the decimal expansion stays below the
digit ceiling, and otherwise only through its natural logarithm.  All
logarithmic arithmetic is done at ``WORK_DPS`` digits and nudged upward after
every operation, so a log-mode magnitude never undercuts the true value.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import gmpy2
import mpmath
from mpmath import mpf

DEFAULT_DIGIT_CEILING = 10**6
CEILING_ENV = "SHAFBOUND_DIGIT_CEILING"

# Working precision for log arithmetic; reported logs keep LN_DIGITS of them.
WORK_DPS = 80
LN_DIGITS = 50
_NUDGE_EXP = -(WORK_DPS - 8)


def digit_ceiling(override: int | None = None) -> int:
    """Return the decimal-digit ceiling for exact expansion."""
    if override is not None:
        if override < 0:
            raise ValueError("digit ceiling must be non-negative")
        return override
    raw = os.environ.get(CEILING_ENV)
    if raw is None:
        return DEFAULT_DIGIT_CEILING
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{CEILING_ENV} must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ValueError(f"{CEILING_ENV} must be non-negative")
    return value


def round_up(x: mpf) -> mpf:
    """Push ``x`` upward by a relative margin far above the working error."""
    with mpmath.workdps(WORK_DPS):
        if x == 0:
            return mpf(0)
        return x + abs(x) * mpf(10) ** _NUDGE_EXP


def ln_int(n: int) -> mpf:
    """Upward-rounded natural log of a positive integer."""
    if n <= 0:
        raise ValueError("ln_int needs a positive integer")
    if n == 1:
        return mpf(0)
    with mpmath.workdps(WORK_DPS):
        return round_up(mpmath.log(mpf(int(n))))


def ln_digits(ln_value: mpf) -> mpf:
    """Approximate decimal digit count of a quantity with log ``ln_value``."""
    with mpmath.workdps(WORK_DPS):
        return ln_value / mpmath.log(10) + 1


def format_ln(x: mpf, digits: int = LN_DIGITS) -> str:
    """Decimal string of ``x`` with ``digits`` significant digits, rounded up.

    ``str`` of an ``mpf`` rounds to nearest, so the value is first nudged by
    one unit in the last reported place.
    """
    with mpmath.workdps(WORK_DPS):
        if x == 0:
            return "0"
        ulp = abs(x) * mpf(10) ** (-(digits - 1))
        bumped = x + ulp if x > 0 else x
        return mpmath.nstr(bumped, digits, strip_zeros=False, min_fixed=-6, max_fixed=digits)


def _fits(ln_value: mpf, ceiling: int) -> bool:
    return ln_digits(ln_value) <= ceiling


@dataclass(frozen=True, eq=False)
class Magnitude:
    """A positive integer bound, exact when small enough, else log-only.

    ``ln`` is always populated.  For exact magnitudes it is the upward-rounded
    logarithm of ``exact``; for log-mode magnitudes ``exact`` is ``None``.
    """

    exact: int | None
    ln: mpf

    @classmethod
    def of(cls, n: int) -> Magnitude:
        n = int(n)
        if n < 1:
            raise ValueError(f"magnitudes are positive integers, got {n}")
        return cls(n, ln_int(n))

    @classmethod
    def from_ln(cls, ln_value: mpf) -> Magnitude:
        with mpmath.workdps(WORK_DPS):
            ln_value = mpf(ln_value)
        if ln_value < 0:
            raise ValueError("magnitudes are at least 1")
        return cls(None, ln_value)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def digits(self) -> int:
        if self.exact is not None:
            return len(gmpy2.mpz(self.exact).digits(10))
        with mpmath.workdps(WORK_DPS):
            return int(mpmath.floor(self.ln / mpmath.log(10))) + 1

    def ln_ln(self) -> mpf:
        """Upward-rounded ``ln(ln(value))``; defined for values above 1."""
        if self.ln <= 0:
            raise ValueError("ln ln is undefined for the value 1")
        with mpmath.workdps(WORK_DPS):
            return round_up(mpmath.log(self.ln))

    def demote(self) -> Magnitude:
        """Return the same bound with the exact integer dropped."""
        return Magnitude(None, self.ln)

    def mul(self, other: Magnitude, ceiling: int | None = None) -> Magnitude:
        with mpmath.workdps(WORK_DPS):
            ln_value = round_up(self.ln + other.ln)
        if self.exact is not None and other.exact is not None and _fits(ln_value, digit_ceiling(ceiling)):
            return Magnitude.of(int(gmpy2.mpz(self.exact) * gmpy2.mpz(other.exact)))
        return Magnitude(None, ln_value)

    def add(self, other: Magnitude, ceiling: int | None = None) -> Magnitude:
        with mpmath.workdps(WORK_DPS):
            hi, lo = (self.ln, other.ln) if self.ln >= other.ln else (other.ln, self.ln)
            ln_value = round_up(hi + mpmath.log1p(mpmath.exp(lo - hi)))
        if self.exact is not None and other.exact is not None and _fits(ln_value, digit_ceiling(ceiling)):
            return Magnitude.of(self.exact + other.exact)
        return Magnitude(None, ln_value)

    def pow(self, exponent: Magnitude | int, ceiling: int | None = None) -> Magnitude:
        if isinstance(exponent, int):
            exponent = Magnitude.of(exponent)
        with mpmath.workdps(WORK_DPS):
            if exponent.exact is not None:
                factor = mpf(exponent.exact)
            else:
                factor = round_up(mpmath.exp(exponent.ln))
            ln_value = round_up(factor * self.ln)
        if self.exact is not None and exponent.exact is not None and _fits(ln_value, digit_ceiling(ceiling)):
            return Magnitude.of(int(gmpy2.mpz(self.exact) ** exponent.exact))
        return Magnitude(None, ln_value)

    def __le__(self, other: Magnitude) -> bool:
        if self.exact is not None and other.exact is not None:
            return self.exact <= other.exact
        return self.ln <= other.ln

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Magnitude):
            return NotImplemented
        if self.exact is not None and other.exact is not None:
            return self.exact == other.exact
        return self.exact == other.exact and self.ln == other.ln

    def __hash__(self) -> int:
        return hash((self.exact, str(self.ln)))

    def to_json(self) -> str | dict[str, str]:
        if self.exact is not None:
            return gmpy2.mpz(self.exact).digits(10)
        return {"ln": format_ln(self.ln)}

    def __repr__(self) -> str:
        if self.exact is not None:
            if self.exact.bit_length() < 200:
                return f"Magnitude({self.exact})"
            return f"Magnitude(<{self.digits()} digits>)"
        return f"Magnitude(ln={mpmath.nstr(self.ln, 15)})"


ONE = Magnitude.of(1)
