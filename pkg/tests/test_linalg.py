from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from liecontract import RationalMatrix, generic_rank, nullspace
from liecontract.linalg import invert, rref_basis


def M(rows):
    return RationalMatrix.from_rows(rows)


def small_matrices(max_dim=6, bound=5):
    dims = st.tuples(st.integers(1, max_dim), st.integers(1, max_dim))
    return dims.flatmap(lambda rc: st.lists(
        st.lists(st.integers(-bound, bound), min_size=rc[1], max_size=rc[1]),
        min_size=rc[0], max_size=rc[0]))


def test_nullspace_examples():
    # canonical form: positive leading entry, so (-2, 1) is reported as (2, -1)
    assert nullspace(M([[1, 2], [2, 4]])) == [(2, -1)]
    assert nullspace(RationalMatrix.identity(3)) == []
    assert nullspace(RationalMatrix(2, 2)) == [(1, 0), (0, 1)]


def test_rank_examples():
    assert generic_rank(M([[1, 2], [2, 4]])) == 1
    assert generic_rank(RationalMatrix.identity(4)) == 4
    assert generic_rank(RationalMatrix(3, 5)) == 0


def test_rational_entries_scaled_to_integers():
    basis = nullspace(M([[Fraction(1, 2), Fraction(1, 3), 0]]))
    assert basis == [(2, -3, 0), (0, 0, 1)]


def test_big_integers_stay_exact():
    big = 10 ** 40 + 7
    m = M([[big, big + 1, 1], [big + 2, big + 3, 1]])
    (v,) = nullspace(m)
    assert m.apply(v) == [0, 0]
    assert v == (1, -1, 1)


@settings(max_examples=200)
@given(small_matrices())
def test_nullspace_against_sympy(rows):
    m = M(rows)
    basis = nullspace(m)
    ref = sympy.Matrix(rows)
    assert generic_rank(m) == ref.rank()
    assert len(basis) == len(rows[0]) - ref.rank()
    for v in basis:
        assert all(x == 0 for x in m.apply(v))
        assert all(isinstance(x, int) for x in v)
        assert gcd(*v) == 1
        assert next(x for x in v if x) > 0
    # reduced echelon: each pivot column is zero in the other vectors
    pivots = [next(i for i, x in enumerate(v) if x) for v in basis]
    assert pivots == sorted(set(pivots))
    for k, p in enumerate(pivots):
        assert all(basis[j][p] == 0 for j in range(len(basis)) if j != k)


@settings(max_examples=50)
@given(small_matrices())
def test_nullspace_is_deterministic(rows):
    assert nullspace(M(rows)) == nullspace(M([list(r) for r in rows]))


def test_rref_basis_spans_same_space():
    vecs = [[2, 4, 6], [1, 2, 3], [0, 1, 1]]
    assert rref_basis(vecs, 3) == [(1, 0, 1), (0, 1, 1)]


def test_invert():
    m = [[2, 1], [1, 1]]
    inv = invert(m)
    assert inv == [[1, -1], [-1, 2]]
    with pytest.raises(ZeroDivisionError):
        invert([[1, 2], [2, 4]])
