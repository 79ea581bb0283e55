import random

import numpy as np
import pytest

from zpinv import Echelon, FpMatrix, FpScalar, kernel_basis, rank
from zpinv.linalg import kernel_rows, rank_mod, rref

PRIMES = (2, 3, 5, 7)


def test_identity_and_zero():
    assert FpMatrix([[1, 0], [0, 1]], 3).kernel_basis() == []
    assert FpMatrix([[1, 0], [0, 1]], 3).rank() == 2
    Z = FpMatrix([[0, 0, 0], [0, 0, 0]], 3)
    assert Z.rank() == 0
    basis = Z.kernel_basis()
    assert basis == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for n in (1, 3, 5):
        assert FpMatrix(np.eye(n, dtype=int), 5).rank() == n


def test_rank_one_example():
    # rows proportional mod 5
    M = FpMatrix([[1, 2], [2, 4]], 5)
    assert rank(M) == 1
    basis = kernel_basis(M)
    assert len(basis) == 1
    v = np.array(basis[0])
    A = M.array
    assert (A @ v % 5 == 0).all()  # the independent check: M v = 0 exactly
    # proportional to (3, 1)
    w = np.array([3, 1])
    assert any(((v - c * w) % 5 == 0).all() for c in range(1, 5)) and v.any()


@pytest.mark.parametrize("p", PRIMES)
def test_rank_nullity_randomized(p):
    rng = random.Random(100 + p)
    for _ in range(40):
        m = rng.randrange(1, 12)
        n = rng.randrange(1, 12)
        A = [[rng.randrange(p) for _ in range(n)] for _ in range(m)]
        M = FpMatrix(A, p)
        K = M.kernel_basis()
        assert M.rank() + len(K) == n
        arr = M.array
        for v in K:
            assert (arr @ np.array(v) % p == 0).all()


@pytest.mark.parametrize("p", PRIMES)
def test_rank_matches_sympy(p):
    # independent oracle: sympy's exact GF(p) matrices
    from sympy import GF
    from sympy.polys.matrices import DomainMatrix

    rng = random.Random(200 + p)
    for _ in range(15):
        m = rng.randrange(1, 9)
        n = rng.randrange(1, 9)
        A = [[rng.randrange(p) for _ in range(n)] for _ in range(m)]
        ours = FpMatrix(A, p).rank()
        theirs = DomainMatrix.from_list(A, GF(p)).rank()
        assert ours == theirs


def test_echelon_canonical_under_batching():
    rng = np.random.default_rng(5)
    for p in PRIMES:
        A = rng.integers(0, p, (60, 23)).astype(np.int64)
        whole = Echelon(p, 23)
        whole.add(A)
        by_rows = Echelon(p, 23)
        for row in A[::-1]:
            by_rows.add(row)
        shuffled = Echelon(p, 23)
        order = rng.permutation(60)
        shuffled.add(A[order])
        assert np.array_equal(whole.sorted_rows(), by_rows.sorted_rows())
        assert np.array_equal(whole.sorted_rows(), shuffled.sorted_rows())
        assert whole.rank == by_rows.rank == shuffled.rank


def test_echelon_reduce_and_contains():
    ech = Echelon(5, 3)
    ech.add([[1, 2, 3], [0, 1, 4]])
    assert ech.contains([1, 2, 3])
    assert ech.contains([2, 4, 6])
    assert ech.contains([1, 3, 2])  # sum of the two rows
    assert not ech.contains([0, 0, 1])
    rem = ech.reduce([[0, 0, 1]])
    assert rem.any()


def test_echelon_rank_cap():
    rng = np.random.default_rng(9)
    A = rng.integers(0, 3, (30, 10)).astype(np.int64)
    full = Echelon(3, 10)
    full.add(A)
    capped = Echelon(3, 10)
    capped.add(A, rank_cap=full.rank)
    assert capped.rank == full.rank
    low = Echelon(3, 10)
    low.add(A, rank_cap=2)
    assert low.rank == 2


def test_rref_pivots_are_clean():
    rng = np.random.default_rng(3)
    A = rng.integers(0, 7, (12, 9)).astype(np.int64)
    R, piv = rref(A, 7)
    assert sorted(piv.tolist()) == piv.tolist()
    for i, c in enumerate(piv):
        col = R[:, c]
        assert col[i] == 1 and (np.delete(col, i) == 0).all()
        # leading entry of each row sits at its pivot
        assert (R[i, : c] == 0).all()


def test_kernel_rows_canonical():
    A = np.array([[1, 1, 0], [0, 0, 1]])
    K = kernel_rows(A, 3)
    assert K.shape == (1, 3)
    assert (A @ K.T % 3 == 0).all()
    assert K[0, (K[0] != 0).argmax()] == 1
    assert rank_mod(A, 3) + K.shape[0] == 3


def test_entry_scalar():
    M = FpMatrix([[1, 9]], 7)
    assert M.entry(0, 1) == FpScalar(2, 7)
