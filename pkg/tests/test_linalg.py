from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_det, naive_rank
from shafbound.geomkernel.linalg import (
    RationalMatrix,
    bareiss_det,
    det,
    echelon,
    hermite_normal_form,
    integer_kernel,
    kernel,
    primitive_vector,
    rank,
)

small = st.integers(-6, 6)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@given(st.integers(1, 6).flatmap(lambda n: matrices(n, n)))
def test_bareiss_matches_naive(M):
    assert bareiss_det(M) == naive_det(M)


@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n)), st.integers(1, 5))
def test_rational_det(M, q):
    R = [[Fraction(x, q) for x in row] for row in M]
    assert det(R) == naive_det(R)


@settings(max_examples=80)
@given(st.tuples(st.integers(1, 6), st.integers(1, 7)).flatmap(lambda rc: matrices(*rc)))
def test_rank_and_kernel(M):
    ncols = len(M[0])
    r = rank(M)
    assert r == naive_rank(M)
    ker = kernel(M, ncols)
    assert len(ker) == ncols - r
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    if ker:
        assert naive_rank(ker) == len(ker)


@settings(max_examples=80)
@given(st.tuples(st.integers(1, 5), st.integers(2, 7)).flatmap(lambda rc: matrices(*rc)))
def test_integer_kernel_is_saturated(M):
    ncols = len(M[0])
    basis = integer_kernel(M, ncols)
    assert len(basis) == ncols - naive_rank(M)
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    # A saturated lattice contains every integer kernel vector; primitive rational ones in particular.
    for v in kernel(M, ncols):
        aug = [list(b) for b in basis] + [list(v)]
        assert naive_rank(aug) == len(basis)
    # Hermite normal form is idempotent.
    assert hermite_normal_form(basis) == basis


def test_integer_kernel_needs_saturation():
    # Kernel of [2, 4] is spanned by (-2, 1); a fraction-free basis could be (4, -2).
    assert integer_kernel([[2, 4]], 2) == [(2, -1)]


def test_echelon_pivots():
    E, piv = echelon([[0, 2, 4], [0, 1, 2], [1, 0, 1]])
    assert piv == [0, 1]
    assert len(E) == 2


def test_primitive_vector():
    assert primitive_vector([Fraction(-2, 3), Fraction(4, 3), 0]) == (1, -2, 0)
    with pytest.raises(ValueError):
        primitive_vector([0, 0])


def test_rational_matrix():
    M = RationalMatrix.of([[1, 2], [2, 4]])
    assert M.rank() == 1
    assert M.det() == 0
    assert M.kernel() == [(2, -1)]
    assert M.apply([1, 1]) == (3, 6)
    with pytest.raises(ValueError):
        RationalMatrix.of([[1, 2], [3]])
