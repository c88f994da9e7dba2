"""Independent reference implementations used to cross-check the package.

Nothing here imports the code under test except for plain data types, so a
bug in an algorithm cannot hide in its own oracle.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import mpmath


# unit equation by exponent vectors


def _trial_smooth(n: int, primes) -> bool:
    n = abs(n)
    if n == 0:
        return False
    for p in primes:
        while n % p == 0:
            n //= p
    return n == 1


def brute_unit_solutions(primes, cap: int) -> set[Fraction]:
    """All a = +-u/v with u, v products of the primes, H(a) <= cap, 1 - a an S-unit."""
    exps = []
    for p in primes:
        e = 0
        while p ** (e + 1) <= cap:
            e += 1
        exps.append(range(e + 1))
    values = set()
    for vec in itertools.product(*exps):
        v = 1
        for p, e in zip(primes, vec):
            v *= p**e
        if v <= cap:
            values.add(v)
    out = set()
    for u in values:
        for v in values:
            for sign in (1, -1):
                a = Fraction(sign * u, v)
                if a in (0, 1) or max(abs(a.numerator), a.denominator) > cap:
                    continue
                b = 1 - a
                if _trial_smooth(b.numerator, primes) and _trial_smooth(b.denominator, primes):
                    out.add(a)
    return out


# linear algebra


def naive_rank(rows) -> int:
    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return 0
    r = 0
    ncols = len(M[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def naive_det(rows) -> Fraction:
    M = [[Fraction(x) for x in row] for row in rows]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def naive_kernel(rows, ncols: int) -> list[list[Fraction]]:
    """Reduced row echelon form, then one basis vector per free column."""
    M = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        M[r] = [x / M[r][c] for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][f]
        basis.append(v)
    return basis


def naive_inverse(A) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next(i for i in range(c, n) if M[i][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        M[c] = [x / M[c][c] for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return [row[n:] for row in M]


# general position, by a different route


def _mons(d):
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


def _row(d, p):
    return [Fraction(p[0]) ** i * Fraction(p[1]) ** j * Fraction(p[2]) ** k for i, j, k in _mons(d)]


def oracle_collinear(p, q, r) -> bool:
    return naive_rank([p, q, r]) < 3


def oracle_on_conic(six) -> bool:
    """Fit the conics through the first five points, then test the sixth."""
    ker = naive_kernel([_row(2, p) for p in six[:5]], 6)
    last = _row(2, six[5])
    # Some nonzero kernel combination vanishes at the sixth point iff this 1 x k row is rank deficient.
    return naive_rank([[sum(a * b for a, b in zip(v, last)) for v in ker]]) < len(ker)


def _grad_value(coeffs, d, p, axis):
    total = Fraction(0)
    for c, m in zip(coeffs, _mons(d)):
        if m[axis] == 0 or c == 0:
            continue
        e = list(m)
        k = e[axis]
        e[axis] -= 1
        total += c * k * Fraction(p[0]) ** e[0] * Fraction(p[1]) ** e[1] * Fraction(p[2]) ** e[2]
    return total


def oracle_singular_cubic(eight, i) -> bool:
    """Cubics through the eight points form a linear system; ask whether one is singular at point i."""
    ker = naive_kernel([_row(3, p) for p in eight], 10)
    if not ker:
        return False
    grads = [[_grad_value(v, 3, eight[i], axis) for v in ker] for axis in range(3)]
    return naive_rank(grads) < len(ker)


def oracle_general_position(points) -> tuple[bool, str | None]:
    n = len(points)
    for idx in itertools.combinations(range(n), 3):
        if oracle_collinear(*(points[i] for i in idx)):
            return False, "line"
    for idx in itertools.combinations(range(n), 6):
        if oracle_on_conic([points[i] for i in idx]):
            return False, "conic"
    if n == 8:
        for i in range(8):
            if oracle_singular_cubic(points, i):
                return False, "singular_cubic"
    return True, None


# orbit closure by breadth-first search


FRAME = ((0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1))


def _canon(v) -> tuple[int, int, int]:
    v = [Fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    if next(x for x in ints if x) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def to_frame(points, idx):
    """Send points[idx[0..3]] to the standard frame using an inverse matrix over Q."""
    a, b, c, d = (points[i] for i in idx)
    A = [[Fraction(c[r]), Fraction(b[r]), Fraction(a[r])] for r in range(3)]
    lam = [sum(x * y for x, y in zip(row, d)) for row in naive_inverse(A)]
    scaled = [[A[r][k] * lam[k] for k in range(3)] for r in range(3)]
    T = naive_inverse(scaled)
    return [_canon([sum(T[r][k] * p[k] for k in range(3)) for r in range(3)]) for p in points]


def _key(points):
    return tuple(sorted(points[4:]))


def oracle_neighbours(points):
    n = len(points)
    out = []
    for t in range(4):
        for u in range(t + 1, n):
            perm = list(points)
            perm[t], perm[u] = perm[u], perm[t]
            out.append(_key(to_frame(perm, (0, 1, 2, 3))))
    moved = to_frame(points, (0, 1, 2, 3))  # already framed; base points 0,1,2 are coordinate points
    image = list(moved[:3])
    for p in moved[3:]:
        x, y, z = p
        image.append(_canon((y * z, x * z, x * y)))
    out.append(_key(to_frame(image, (0, 1, 2, 3))))
    return out


def oracle_orbits(keys) -> tuple[list[frozenset], int]:
    """Connected components of the generator graph restricted to ``keys``."""
    universe = set(keys)
    seen = set()
    escapes = set()
    comps = []
    for start in sorted(universe):
        if start in seen:
            continue
        comp = {start}
        queue = [start]
        seen.add(start)
        while queue:
            k = queue.pop()
            for nb in oracle_neighbours(list(FRAME) + list(k)):
                if nb not in universe:
                    escapes.add(nb)
                elif nb not in seen:
                    seen.add(nb)
                    comp.add(nb)
                    queue.append(nb)
        comps.append(frozenset(comp))
    return comps, len(escapes)


# finite fields


class GF2:
    """Arithmetic in GF(p^2) = GF(p)[t] / (t^2 - r) for a non-residue r."""

    def __init__(self, p: int):
        self.p = p
        self.r = next(r for r in range(2, p) if pow(r, (p - 1) // 2, p) == p - 1) if p > 2 else None

    def elements(self):
        return [(a, b) for a in range(self.p) for b in range(self.p)]

    def add(self, x, y):
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def mul(self, x, y):
        p, r = self.p, self.r
        return ((x[0] * y[0] + r * x[1] * y[1]) % p, (x[0] * y[1] + x[1] * y[0]) % p)

    def power(self, x, e):
        out = (1, 0)
        for _ in range(e):
            out = self.mul(out, x)
        return out

    def scalar(self, c):
        return (c % self.p, 0)


def _poly_eval_gf2(F: GF2, terms, pt):
    total = (0, 0)
    for (i, j, k), c in terms:
        v = F.scalar(c)
        for base, e in zip(pt, (i, j, k)):
            v = F.mul(v, F.power(base, e))
        total = F.add(total, v)
    return total


def _derive(terms, axis):
    out = []
    for m, c in terms:
        if m[axis]:
            e = list(m)
            e[axis] -= 1
            out.append((tuple(e), c * m[axis]))
    return out


def singular_points_gf_p2(terms, p: int) -> list:
    """Singular points of a plane curve over GF(p^2), given as [((i, j, k), c), ...]."""
    F = GF2(p)
    grads = [_derive(terms, a) for a in range(3)]
    els = F.elements()
    pts = [(x, y, (1, 0)) for x in els for y in els]
    pts += [(x, (1, 0), (0, 0)) for x in els]
    pts.append(((1, 0), (0, 0), (0, 0)))
    out = []
    for pt in pts:
        if _poly_eval_gf2(F, terms, pt) == (0, 0) and all(_poly_eval_gf2(F, g, pt) == (0, 0) for g in grads):
            out.append(pt)
    return out


# interval arithmetic for the height bound


def interval_ln_exponent(l: int, d: int, D: int, N: int, s: int):
    """Interval enclosure of ln E with E = 20000 l^6 d^2 s (l d + D^l N^l l^(l d s))^(l d)."""
    iv = mpmath.iv
    iv.dps = 60
    inner_ln = l * iv.log(D) + l * iv.log(N) + l * d * s * iv.log(l)
    # ln(l d + e^inner) = inner + ln(1 + l d e^-inner)
    inner = inner_ln + iv.log(1 + l * d * iv.exp(-inner_ln))
    return iv.log(20000) + 6 * iv.log(l) + 2 * iv.log(d) + iv.log(s) + l * d * inner


def interval_ln_bound(l: int, d: int, D: int, N: int, s: int):
    iv = mpmath.iv
    iv.dps = 60
    ln_E = interval_ln_exponent(l, d, D, N, s)
    return iv.exp(ln_E) * iv.log(12 * l * d * N * D)
