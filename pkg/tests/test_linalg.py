import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qsi.errors import NonSquare, ShapeMismatch
from qsi.linalg import (
    ExactMatrix, column_space_basis, det_mod, determinant, nullspace_basis, random_prime, rank,
    rank_mod, rank_modular,
)
from oracles import to_sympy
from strategies import matrices


def test_rank_examples():
    assert rank(ExactMatrix.identity(3)) == 3
    assert rank(ExactMatrix.from_rows([[1, 1], [1, 1]])) == 1
    assert rank(ExactMatrix.zeros(0, 5)) == 0
    assert rank(ExactMatrix.zeros(4, 0)) == 0


def test_nullspace_examples():
    assert nullspace_basis(ExactMatrix.identity(4)) == []
    (v,) = nullspace_basis(ExactMatrix.from_rows([[1, -1]]))
    assert v.to_rows() == [[1], [1]]
    assert len(nullspace_basis(ExactMatrix.zeros(2, 3))) == 3
    assert len(nullspace_basis(ExactMatrix.zeros(0, 3))) == 3


def test_determinant_examples():
    assert determinant(ExactMatrix.identity(5)) == 1
    assert determinant(ExactMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert determinant(ExactMatrix.from_rows([[7]])) == 7
    assert determinant(ExactMatrix.zeros(0, 0)) == 1
    with pytest.raises(NonSquare):
        determinant(ExactMatrix.zeros(2, 3))


def test_rational_entries():
    m = ExactMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [1, 1]])
    assert m[0, 1] == Fraction(1, 3)
    assert determinant(m) == Fraction(1, 2) - Fraction(1, 3)
    assert rank(m) == 2
    assert (m @ ExactMatrix.identity(2)).to_rows() == m.to_rows()


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        ExactMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(ShapeMismatch):
        ExactMatrix.identity(2) @ ExactMatrix.identity(3)
    with pytest.raises(ShapeMismatch):
        ExactMatrix.identity(2) + ExactMatrix.identity(3)


def test_matrix_ops_against_sympy():
    rng = random.Random(3)
    a = ExactMatrix(3, 4, tuple(rng.randint(-9, 9) for _ in range(12)))
    b = ExactMatrix(4, 2, tuple(rng.randint(-9, 9) for _ in range(8)))
    assert to_sympy(a @ b) == to_sympy(a) * to_sympy(b)
    assert to_sympy(a.transpose()) == to_sympy(a).T
    assert to_sympy(a - a.scale(2)) == -to_sympy(a)
    assert to_sympy(a.hstack(a)) == to_sympy(a).row_join(to_sympy(a))


def test_random_prime_range():
    p = random_prime(random.Random(0))
    assert 2**61 <= p < 2**62 and sympy.isprime(p)


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == to_sympy(m).rank()


@given(matrices())
def test_rank_transpose(m):
    assert rank(m) == rank(m.transpose())


@given(matrices(max_rows=5, max_cols=5))
def test_nullspace_against_sympy(m):
    basis = nullspace_basis(m)
    assert len(basis) == m.cols - to_sympy(m).rank()
    for v in basis:
        assert (m @ v).is_zero()
        assert all(isinstance(x, int) for x in v.entries)
    if basis:
        stacked = basis[0]
        for v in basis[1:]:
            stacked = stacked.hstack(v)
        assert rank(stacked) == len(basis)


@given(st.integers(0, 5).flatmap(lambda n: matrices(rows=n, cols=n)))
def test_determinant_matches_sympy(m):
    d = determinant(m)
    assert d == to_sympy(m).det()
    assert (d != 0) == (rank(m) == m.rows)


@given(st.integers(0, 5).flatmap(lambda n: matrices(rows=n, cols=n, lo=-50, hi=50)))
def test_det_mod_consistent(m):
    p = 1_000_000_007
    assert det_mod(m, p) == int(determinant(m)) % p


@given(matrices())
def test_column_space(m):
    c = column_space_basis(m)
    assert c.cols == rank(m) == rank(c)


def test_modular_rank_agrees_in_random_trials():
    rng = random.Random(11)
    agree = 0
    trials = 1000
    for t in range(trials):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        # low-rank products make rank drops possible
        k = rng.randint(0, min(r, c))
        a = ExactMatrix(r, k, tuple(rng.randint(-20, 20) for _ in range(r * k)))
        b = ExactMatrix(k, c, tuple(rng.randint(-20, 20) for _ in range(k * c)))
        m = a @ b if k else ExactMatrix.zeros(r, c)
        p = random_prime(rng)
        exact = rank(m)
        mod = rank_mod(m, p)
        assert mod <= exact
        agree += mod == exact
    assert agree >= 999


@settings(max_examples=30)
@given(matrices(lo=-1000, hi=1000), st.integers(0, 2**32))
def test_rank_modular_equals_exact(m, seed):
    assert rank_modular(m, seed) == rank(m)
