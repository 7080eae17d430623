from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from weil_lab.linalg import RatMatrix, bareiss_rank, kernel_basis, rank, rref


def test_rank_examples():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[0, 0, 0]]) == 0
    assert rank(RatMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [3, 2]])) == 1


def test_rank_against_sympy(rng):
    for _ in range(500):
        r, c = rng.integers(1, 8, size=2)
        density = rng.random()
        M = rng.integers(-4, 5, size=(r, c)) * (rng.random((r, c)) < density)
        rows = M.tolist()
        k = rank(rows)
        assert k == rank(M.T.tolist())
        assert k == sympy.Matrix(rows).rank()


def test_rank_scaling_invariance(rng):
    for _ in range(100):
        M = rng.integers(-3, 4, size=(5, 4)).tolist()
        scaled = [[Fraction(x, 7) for x in row] for row in M]
        assert rank(M) == rank(scaled)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=6))
def test_kernel_basis_property(rows):
    M = RatMatrix.from_rows(rows)
    basis = kernel_basis(M)
    assert len(basis) == 4 - rank(M)
    for v in basis:
        assert all(x == 0 for x in M.apply(v))


def test_rref_pivots():
    R, piv = rref([[0, 2, 4], [1, 1, 1]])
    assert piv == [0, 1]
    assert R[0] == [1, 0, -1] and R[1] == [0, 1, 2]


def test_bareiss_integers():
    assert bareiss_rank([[2, 4, 6], [1, 2, 3], [0, 0, 1]]) == 2
    assert bareiss_rank([]) == 0
