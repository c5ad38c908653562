from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from wallres import linalg as la

PRIMES = [2, 3, 5, 7]


def mat(p, max_side=7):
    return st.tuples(st.integers(0, max_side), st.integers(0, max_side)).flatmap(
        lambda s: arrays(np.int64, s, elements=st.integers(0, p - 1)))


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        la.PrimeField(4)
    assert la.PrimeField(7).inv(3) == 5


def test_rref_examples():
    R, piv, r = la.rref(np.zeros((2, 2), dtype=np.int64), 2)
    assert r == 0 and list(piv) == []
    R, piv, r = la.rref(la.identity(3), 3)
    assert r == 3 and list(piv) == [0, 1, 2]
    R, piv, r = la.rref([[1, 1], [1, 1]], 2)
    assert r == 1 and list(piv) == [0]
    assert R.tolist() == [[1, 1], [0, 0]]


def test_solve_examples():
    b = np.array([1, 2, 0])
    assert la.solve(la.identity(3), b, 3).tolist() == [1, 2, 0]
    assert la.solve(np.zeros((2, 2), dtype=np.int64), np.array([1, 0]), 2) is None
    x = la.solve([[1, 1]], np.array([1]), 2)
    assert (x[0] + x[1]) % 2 == 1
    with pytest.raises(ValueError):
        la.solve(la.identity(2), np.array([1, 0, 0]), 2)


def test_kernel_examples():
    assert la.kernel_basis(la.identity(4), 5).shape == (4, 0)
    assert la.kernel_basis(np.zeros((2, 3), dtype=np.int64), 2).shape == (3, 3)
    assert la.kernel_basis([[1, 1]], 2).T.tolist() == [[1, 1]]


def test_wide_matrix_crosses_panel_boundary():
    # more than one 64-column panel exercised by the blocked elimination
    rng = np.random.default_rng(1)
    A = rng.integers(0, 3, size=(40, 150))
    K = la.kernel_basis(A, 3)
    assert not la.matmul(A, K, 3).any()
    assert la.rank(A, 3) + K.shape[1] == 150


@pytest.mark.parametrize("p", PRIMES)
def test_inverse_roundtrip(p):
    rng = np.random.default_rng(p)
    while True:
        A = rng.integers(0, p, size=(6, 6))
        if la.rank(A, p) == 6:
            break
    assert np.array_equal(la.matmul(A, la.inverse(A, p), p), la.identity(6))


@pytest.mark.parametrize("p", PRIMES)
@given(data=st.data())
def test_rank_nullity(p, data):
    A = data.draw(mat(p))
    K = la.kernel_basis(A, p)
    assert la.rank(A, p) + K.shape[1] == A.shape[1]
    assert not la.matmul(A, K, p).any()
    assert la.rank(K, p) == K.shape[1]


@pytest.mark.parametrize("p", PRIMES)
@given(data=st.data())
def test_solve_consistent_rhs(p, data):
    A = data.draw(mat(p))
    x = data.draw(arrays(np.int64, A.shape[1], elements=st.integers(0, p - 1)))
    b = la.matmul(A, x.reshape(-1, 1), p).ravel()
    y = la.solve(A, b, p)
    assert y is not None
    assert np.array_equal(la.matmul(A, y.reshape(-1, 1), p).ravel(), b)


@pytest.mark.parametrize("p", PRIMES)
@given(data=st.data())
def test_rref_idempotent(p, data):
    A = data.draw(mat(p))
    R, piv, r = la.rref(A, p)
    R2, piv2, r2 = la.rref(R, p)
    assert np.array_equal(R, R2) and list(piv) == list(piv2) and r == r2 == len(piv)
