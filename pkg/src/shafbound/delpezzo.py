"""Split del Pezzo blow-up configurations over Z[1/S].

A configuration of degree d is the standard frame (0:0:1), (0:1:0), (1:0:0),
(1:1:1) followed by 5 - d further points.  Good reduction outside S is
certified by requiring every line, conic and singular-cubic minor of the
primitive integer coordinates to be an S-unit: then the points stay in
general position modulo every prime outside S.

Enumeration treats the extra points as a set and emits them sorted; that is
the canonical form used by :func:`dedup_orbits`.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .geomkernel.geometry import (
    STANDARD_FRAME,
    ProjPointQ,
    conic_determinant,
    det3,
    general_position,
    singular_cubic_exists,
)
from .sunit import HeightValue, PrimeSet, SUnitQ, is_s_unit, solve_unit_equation

MINOR_KINDS = ("line", "conic", "singular_cubic")


@dataclass(frozen=True)
class BlowupConfig:
    """Degree, prime set and the ordered points to blow up.

    Degree 5 (the bare frame) is accepted as a subroutine shape.
    """

    degree: int
    S: PrimeSet
    points: tuple[ProjPointQ, ...]

    def __post_init__(self) -> None:
        if self.degree not in (1, 2, 3, 4, 5):
            raise ValueError(f"degree must be in 1..4 (5 for the bare frame), got {self.degree}")
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) != 9 - self.degree:
            raise ValueError(f"degree {self.degree} needs {9 - self.degree} points, got {len(pts)}")
        if pts[:4] != STANDARD_FRAME:
            raise ValueError("the first four points must be the standard frame")

    @classmethod
    def from_extras(cls, degree: int, S: PrimeSet, extras: Iterable[ProjPointQ]) -> BlowupConfig:
        return cls(degree, S, STANDARD_FRAME + tuple(extras))

    @property
    def extras(self) -> tuple[ProjPointQ, ...]:
        return self.points[4:]

    def canonical(self) -> BlowupConfig:
        return BlowupConfig(self.degree, self.S, STANDARD_FRAME + tuple(sorted(self.extras)))

    def key(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(p.coords for p in self.canonical().extras)

    def coordinates(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Affine coordinates (a_i, b_i) of the extra points, z normalized to 1."""
        out = []
        for p in self.extras:
            if p.z == 0:
                raise ValueError(f"{p} lies on the line z = 0")
            out.append((Fraction(p.x, p.z), Fraction(p.y, p.z)))
        return tuple(out)

    def unit_coordinates(self) -> tuple[tuple[SUnitQ | None, SUnitQ | None], ...]:
        return tuple((_unit_or_none(a, self.S), _unit_or_none(b, self.S)) for a, b in self.coordinates())

    def check(self) -> None:
        """Raise ValueError unless every configuration invariant holds."""
        for a, b in self.coordinates():
            for v in (a, b, 1 - a, 1 - b):
                if v == 0 or is_s_unit(v, self.S) is None:
                    raise ValueError(f"coordinate data {v} is not an S-unit")
        gp = general_position(self.points)
        if not gp:
            raise ValueError(f"not in general position: {gp.predicate} on {gp.subset}")

    def to_json(self) -> dict:
        return {"points": [p.to_json() for p in self.points]}


def _unit_or_none(v: Fraction, S: PrimeSet) -> SUnitQ | None:
    return None if v == 0 else is_s_unit(v, S)


@dataclass(frozen=True)
class Minor:
    kind: str
    indices: tuple[int, ...]
    value: int
    unit: SUnitQ | None
    base_index: int | None = None

    def to_json(self) -> dict:
        out = {"indices": list(self.indices), "det": str(self.value), "unit": self.unit is not None}
        if self.base_index is not None:
            out["base"] = self.base_index
        return out


@dataclass(frozen=True)
class GoodReductionCertificate:
    """All minors of a configuration together with their S-factorizations."""

    minors: tuple[Minor, ...]
    verdict: bool

    def failures(self) -> list[Minor]:
        return [m for m in self.minors if m.unit is None]

    def values(self, kind: str) -> list[int]:
        return [m.value for m in self.minors if m.kind == kind]

    def to_json(self) -> dict:
        return {kind: [m.to_json() for m in self.minors if m.kind == kind] for kind in MINOR_KINDS}


def _minor(kind: str, indices: tuple[int, ...], value: int, S: PrimeSet, base: int | None = None) -> Minor:
    unit = is_s_unit(value, S) if value else None
    return Minor(kind, indices, value, unit, base)


def integral_general_position(config: BlowupConfig) -> GoodReductionCertificate:
    pts = config.points
    S = config.S
    n = len(pts)
    minors = [_minor("line", idx, det3(*(pts[i].coords for i in idx)), S) for idx in combinations(range(n), 3)]
    if n >= 6:
        for idx in combinations(range(n), 6):
            minors.append(_minor("conic", idx, conic_determinant([pts[i] for i in idx])[1], S))
    if n == 8:
        for i in range(8):
            minors.append(_minor("singular_cubic", tuple(range(8)), singular_cubic_exists(pts, i)[1], S, i))
    return GoodReductionCertificate(tuple(minors), all(m.unit is not None for m in minors))


# projective normalization


def _primitive_matrix(M: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    g = 0
    for row in M:
        for v in row:
            g = gcd(g, v)
    flat = [v // g for row in M for v in row]
    if next(v for v in flat if v) < 0:
        flat = [-v for v in flat]
    return tuple(tuple(flat[3 * r: 3 * r + 3]) for r in range(3))


def _adjugate(A: Sequence[Sequence[int]]) -> list[list[int]]:
    def cof(i: int, j: int) -> int:
        rows = [r for r in range(3) if r != i]
        cols = [c for c in range(3) if c != j]
        m = A[rows[0]][cols[0]] * A[rows[1]][cols[1]] - A[rows[0]][cols[1]] * A[rows[1]][cols[0]]
        return m if (i + j) % 2 == 0 else -m

    return [[cof(j, i) for j in range(3)] for i in range(3)]


def _apply(M: Sequence[Sequence[int]], p: ProjPointQ) -> ProjPointQ:
    v = p.coords
    return ProjPointQ.of(*(sum(a * b for a, b in zip(row, v)) for row in M))


def frame_normalize(
    points: Sequence[ProjPointQ], frame_indices: Sequence[int]
) -> tuple[tuple[ProjPointQ, ...], tuple[tuple[int, ...], ...]]:
    """Apply the projectivity sending the indexed points to the standard frame.

    The points at ``frame_indices`` go, in order, to (0:0:1), (0:1:0), (1:0:0),
    (1:1:1).  Returns the transformed points and the primitive integer matrix.
    """
    if len(frame_indices) != 4 or len(set(frame_indices)) != 4:
        raise ValueError("frame_indices must be four distinct indices")
    p1, p2, p3, p4 = (points[i].coords for i in frame_indices)
    # Columns p3, p2, p1 map e1, e2, e3 onto them.
    Q = [[p3[r], p2[r], p1[r]] for r in range(3)]
    D = det3(*zip(*Q))
    if D == 0:
        raise ValueError("degenerate frame: three frame points are collinear")
    lam = []
    for c in range(3):
        Qc = [row[:] for row in Q]
        for r in range(3):
            Qc[r][c] = p4[r]
        lam.append(det3(*zip(*Qc)))
    if any(v == 0 for v in lam):
        raise ValueError("degenerate frame: the fourth point is collinear with two others")
    A = [[Q[r][c] * lam[c] for c in range(3)] for r in range(3)]
    T = _primitive_matrix(_adjugate(A))
    return tuple(_apply(T, p) for p in points), T


def cremona_involution(config: BlowupConfig, base_indices: Sequence[int]) -> BlowupConfig:
    """Quadratic transformation centred at three of the points.

    The base points are moved to the coordinate points, the remaining points
    are mapped by (x:y:z) -> (yz:xz:xy), and the result is brought back to the
    standard frame.  Point positions are preserved.
    """
    base = tuple(base_indices)
    n = len(config.points)
    if len(base) != 3 or len(set(base)) != 3 or not all(0 <= i < n for i in base):
        raise ValueError("base_indices must be three distinct point indices")
    if det3(*(config.points[i].coords for i in base)) == 0:
        raise ValueError("base points are collinear")
    fourth = next(i for i in range(n) if i not in base)
    try:
        moved, _ = frame_normalize(config.points, base + (fourth,))
    except ValueError as exc:
        raise ValueError(f"base triple violates the general-position precondition: {exc}") from None
    image = []
    for idx, p in enumerate(moved):
        if idx in base:
            image.append(p)
            continue
        x, y, z = p.coords
        if x * y * z == 0:
            raise ValueError(f"point {idx} lies on a line through two base points")
        image.append(ProjPointQ.of(y * z, x * z, x * y))
    normalized, _ = frame_normalize(image, (0, 1, 2, 3))
    return BlowupConfig(config.degree, config.S, normalized)


def permute_config(config: BlowupConfig, perm: Sequence[int]) -> BlowupConfig:
    """Reorder the points by ``perm`` and renormalize the new first four to the frame."""
    pts = [config.points[i] for i in perm]
    normalized, _ = frame_normalize(pts, (0, 1, 2, 3))
    return BlowupConfig(config.degree, config.S, normalized)


# enumeration


def _candidate_points(S: PrimeSet, solutions: Sequence[Fraction]) -> list[ProjPointQ]:
    frame = [p.coords for p in STANDARD_FRAME]
    out = set()
    for a in solutions:
        for b in solutions:
            if a == b:
                continue
            p = ProjPointQ.of(a, b, 1)
            if all(S.is_smooth(det3(f, g, p.coords)) for f, g in combinations(frame, 2)):
                out.add(p)
    return sorted(out)


def _extend(
    primes: tuple[int, ...],
    k: int,
    cands: list[tuple[int, int, int]],
    compat: list[frozenset[int]],
    firsts: list[int],
) -> list[tuple[int, ...]]:
    """Index tuples of length k, increasing, whose points give a good-reduction configuration."""
    S = PrimeSet(primes)
    frame = [p.coords for p in STANDARD_FRAME]
    found: list[tuple[int, ...]] = []

    def new_minors_ok(chain: list[int], r: int) -> bool:
        q = cands[r]
        for a, b in combinations(chain, 2):
            if not S.is_smooth(det3(cands[a], cands[b], q)):
                return False
        points = frame + [cands[i] for i in chain]
        if len(points) + 1 >= 6:
            for sub in combinations(points, 5):
                pts = [ProjPointQ(*c) for c in sub + (q,)]
                if not S.is_smooth(conic_determinant(pts)[1]):
                    return False
        return True

    def full_ok(chain: list[int]) -> bool:
        if len(chain) + 4 != 8:
            return True
        pts = [ProjPointQ(*c) for c in frame + [cands[i] for i in chain]]
        return all(S.is_smooth(singular_cubic_exists(pts, i)[1]) for i in range(8))

    def walk(chain: list[int], allowed: frozenset[int]) -> None:
        if len(chain) == k:
            if full_ok(chain):
                found.append(tuple(chain))
            return
        for r in sorted(allowed):
            if new_minors_ok(chain, r):
                chain.append(r)
                walk(chain, allowed & compat[r])
                chain.pop()

    for first in firsts:
        walk([first], compat[first])
    return found


def enumerate_configs(
    degree: int,
    S: PrimeSet,
    cap: HeightValue | int,
    jobs: int = 1,
    allow_degree_one: bool = False,
) -> list[BlowupConfig]:
    """All canonical configurations whose coordinates come from unit-equation solutions of height <= cap."""
    if degree not in (1, 2, 3, 4):
        raise ValueError(f"degree must be in 1..4, got {degree}")
    if degree == 1 and not allow_degree_one:
        raise ValueError("degree 1 enumeration is expensive; pass allow_degree_one=True")
    solutions = solve_unit_equation(S, cap, jobs=jobs)
    cands = _candidate_points(S, solutions)
    coords = [p.coords for p in cands]
    k = 5 - degree
    if k == 1:
        chains = [(i,) for i in range(len(cands))]
    else:
        compat = []
        for i, p in enumerate(coords):
            ok = {
                j
                for j in range(i + 1, len(coords))
                if all(S.is_smooth(det3(p, coords[j], f.coords)) for f in STANDARD_FRAME)
            }
            compat.append(frozenset(ok))
        firsts = list(range(len(cands)))
        if jobs > 1 and len(firsts) > 1:
            chunks = [firsts[i::jobs] for i in range(jobs)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = pool.map(
                    _extend,
                    [S.primes] * jobs,
                    [k] * jobs,
                    [coords] * jobs,
                    [compat] * jobs,
                    chunks,
                )
                chains = [c for part in parts for c in part]
        else:
            chains = _extend(S.primes, k, coords, compat, firsts)
    configs = [BlowupConfig.from_extras(degree, S, (cands[i] for i in chain)) for chain in chains]
    return sorted(configs, key=BlowupConfig.key)


# orbits


@dataclass(frozen=True)
class Orbit:
    representative: BlowupConfig
    members: tuple[BlowupConfig, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "representative": [p.to_json() for p in self.representative.points],
            "size": self.size,
            "members": [[p.to_json() for p in m.extras] for m in self.members],
        }


@dataclass(frozen=True)
class OrbitPartition:
    orbits: tuple[Orbit, ...]
    boundary_escapes: int


def weyl_generators(n_points: int) -> list[tuple[str, tuple[int, ...]]]:
    """Transpositions that move a frame position, plus the quadratic map at (0, 1, 2)."""
    gens: list[tuple[str, tuple[int, ...]]] = []
    for t in range(min(4, n_points)):
        for u in range(t + 1, n_points):
            perm = list(range(n_points))
            perm[t], perm[u] = perm[u], perm[t]
            gens.append(("perm", tuple(perm)))
    if n_points >= 3:
        gens.append(("cremona", (0, 1, 2)))
    return gens


def apply_generator(config: BlowupConfig, gen: tuple[str, tuple[int, ...]]) -> BlowupConfig:
    kind, data = gen
    if kind == "perm":
        return permute_config(config, data).canonical()
    return cremona_involution(config, data).canonical()


def dedup_orbits(configs: Sequence[BlowupConfig]) -> OrbitPartition:
    """Partition configurations into orbits of the marking group, inside the given set.

    Images that leave the set (typically because they exceed the height cap)
    are counted as boundary escapes rather than explored.
    """
    canon = sorted({c.key(): c.canonical() for c in configs}.values(), key=BlowupConfig.key)
    if not canon:
        return OrbitPartition((), 0)
    degree, S = canon[0].degree, canon[0].S
    if any(c.degree != degree or c.S != S for c in canon):
        raise ValueError("all configurations must share degree and S")
    index = {c.key(): i for i, c in enumerate(canon)}
    parent = list(range(len(canon)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    escaped: set[tuple] = set()
    gens = weyl_generators(9 - degree)
    for i, c in enumerate(canon):
        for gen in gens:
            img = apply_generator(c, gen)
            j = index.get(img.key())
            if j is None:
                escaped.add(img.key())
                continue
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[BlowupConfig]] = {}
    for i, c in enumerate(canon):
        groups.setdefault(find(i), []).append(c)
    orbits = tuple(Orbit(members[0], tuple(members)) for _, members in sorted(groups.items()))
    return OrbitPartition(orbits, len(escaped))
