import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import oracle_collinear, oracle_general_position, oracle_on_conic, oracle_singular_cubic
from shafbound.geomkernel.geometry import (
    STANDARD_FRAME,
    ProjPointQ,
    apply_matrix,
    collinear,
    conic_determinant,
    general_position,
    singular_cubic_exists,
)

coord = st.integers(-6, 6)
point = st.tuples(coord, coord, coord).filter(any).map(ProjPointQ.of)


def test_canonical_points():
    assert ProjPointQ.of(-2, 4, 6) == ProjPointQ(1, -2, -3)
    assert ProjPointQ.of(Fraction(1, 2), 1, 0) == ProjPointQ(1, 2, 0)
    assert ProjPointQ.of((0, -3, 3)).coords == (0, 1, -1)
    assert repr(ProjPointQ(3, 2, 1)) == "(3:2:1)"
    with pytest.raises(ValueError):
        ProjPointQ.of(0, 0, 0)
    with pytest.raises(ValueError):
        ProjPointQ(2, 4, 6)
    with pytest.raises(ValueError):
        ProjPointQ(-1, 0, 0)


def test_frame_plus_321():
    assert general_position(STANDARD_FRAME + (ProjPointQ(3, 2, 1),))


def test_frame_plus_112_fails_on_a_line():
    gp = general_position(STANDARD_FRAME + (ProjPointQ(1, 1, 2),))
    assert not gp
    assert gp.predicate == "line"
    assert gp.subset == (0, 3, 4)


def test_six_points_on_a_conic():
    # Rational points of x^2 + y^2 = z^2.
    pts = [ProjPointQ.of(1 - t * t, 2 * t, 1 + t * t) for t in (0, 1, 2, 3, Fraction(1, 2), -2)]
    assert conic_determinant(pts)[0]
    gp = general_position(pts)
    assert not gp and gp.predicate == "conic"


def test_nodal_cubic_detected():
    # y^2 z = x^2 (x + z) is singular at (0:0:1); pick eight rational points on it.
    pts = [ProjPointQ(0, 0, 1)] + [ProjPointQ.of(t * t - 1, t * (t * t - 1), 1) for t in (2, 3, -2, -3, 4, 5, -4)]
    assert singular_cubic_exists(pts, 0) == (True, 0)


def test_size_guards():
    with pytest.raises(ValueError):
        conic_determinant(STANDARD_FRAME)
    with pytest.raises(ValueError):
        singular_cubic_exists(STANDARD_FRAME, 0)
    with pytest.raises(ValueError):
        general_position(STANDARD_FRAME + (STANDARD_FRAME[0],))
    with pytest.raises(ValueError):
        general_position(())


@settings(max_examples=60)
@given(point, point, point)
def test_collinear_matches_oracle(p, q, r):
    assert collinear(p, q, r)[0] == oracle_collinear(p.coords, q.coords, r.coords)


@settings(max_examples=60, deadline=None)
@given(st.lists(point, min_size=6, max_size=6, unique=True))
def test_conic_matches_oracle(pts):
    assert conic_determinant(pts)[0] == oracle_on_conic([p.coords for p in pts])


@settings(max_examples=25, deadline=None)
@given(st.lists(point, min_size=8, max_size=8, unique=True), st.integers(0, 7))
def test_singular_cubic_matches_oracle(pts, i):
    assert singular_cubic_exists(pts, i)[0] == oracle_singular_cubic([p.coords for p in pts], i)


def test_general_position_matches_oracle_random():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.choice([5, 6, 7])
        pts = set()
        while len(pts) < n:
            c = (rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3))
            if any(c):
                pts.add(ProjPointQ.of(c))
        pts = sorted(pts)
        ok, kind = oracle_general_position([p.coords for p in pts])
        gp = general_position(pts)
        assert gp.ok == ok
        assert gp.predicate == kind


def test_apply_matrix():
    assert apply_matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]], ProjPointQ(3, 2, 1)) == ProjPointQ(1, 2, 3)
