import itertools

import numpy as np
import pytest

from hopfrep.errors import NotContained
from hopfrep.field import field_make
from hopfrep.linalg import (
    Subspace,
    batch_invertible,
    eigenspace,
    inverse,
    kernel,
    quotient_dim,
    rank,
    rref,
    solve,
    spin,
)

F3 = field_make(3, 2)
F4 = field_make(2, 3)


def brute_kernel_size(F, M):
    """Count solutions of M x = 0 by enumerating all vectors."""
    n = M.shape[1]
    count = 0
    for v in itertools.product(range(F.q), repeat=n):
        if not np.any(F.matmul(M, np.array(v, dtype=np.int64))):
            count += 1
    return count


def leibniz_det(F, M):
    d = M.shape[0]
    total = 0
    for perm in itertools.permutations(range(d)):
        sign = 1
        for i in range(d):
            for j in range(i + 1, d):
                if perm[i] > perm[j]:
                    sign = -sign
        term = 1
        for i in range(d):
            term = F.mul(term, M[i, perm[i]])
        total = F.add(total, term if sign > 0 else F.neg(term))
    return total


def test_rref_examples():
    R, r, piv = rref(F3, [[1, 2], [2, 1]])
    assert R.tolist() == [[1, 2], [0, 0]] and r == 1 and piv == [0]
    R, r, _ = rref(F3, np.eye(3, dtype=np.int64))
    assert r == 3 and np.array_equal(R, np.eye(3))
    R, r, _ = rref(F3, np.zeros((2, 3), dtype=np.int64))
    assert r == 0 and not R.any()


def test_kernel_examples():
    K = kernel(F3, [[1, 2], [0, 0]])
    assert K.basis.tolist() == [[1, 1]]
    assert kernel(F3, np.eye(3, dtype=np.int64)).dim == 0
    assert kernel(F3, np.zeros((3, 3), dtype=np.int64)).dim == 3


@pytest.mark.parametrize("F", [F3, F4])
def test_rank_matches_enumeration(F):
    rng = np.random.default_rng(11)
    for _ in range(12):
        rows, cols = rng.integers(1, 4), rng.integers(1, 5)
        M = rng.integers(0, F.q, size=(rows, cols))
        if rng.random() < 0.4:
            M[-1] = F.add(M[0], M[-1] * 0)
        size = brute_kernel_size(F, M)
        assert F.q ** (cols - rank(F, M)) == size
        assert F.q ** kernel(F, M).dim == size


@pytest.mark.parametrize("F", [F3, F4])
def test_batch_invertible_matches_determinant(F):
    rng = np.random.default_rng(5)
    mats = rng.integers(0, F.q, size=(60, 3, 3))
    mats[::4, 2] = mats[::4, 0]
    got = batch_invertible(F, mats)
    want = np.array([leibniz_det(F, M) != 0 for M in mats])
    assert np.array_equal(got, want)


def test_inverse_and_solve():
    M = np.array([[1, 2, 0], [0, 1, 1], [2, 0, 1]])
    Minv = inverse(F3, M)
    assert np.array_equal(F3.matmul(M, Minv), np.eye(3))
    x = solve(F3, M, [1, 2, 0])
    assert np.array_equal(F3.matmul(M, x), [1, 2, 0])
    assert solve(F3, [[1, 1], [1, 1]], [0, 1]) is None
    with pytest.raises(ZeroDivisionError):
        inverse(F3, [[1, 1], [1, 1]])


def test_eigenspace_examples():
    xi = F4.xi
    J = np.array([[xi.code, 1], [0, xi.code]])
    E = eigenspace(F4, J, xi)
    assert E.dim == 1 and E.basis.tolist() == [[1, 0]]
    assert eigenspace(F4, np.diag([xi.code, xi.code]), xi).dim == 2
    assert eigenspace(F4, np.diag([xi.code, 1]), xi).dim == 1


def test_quotient_dim():
    U = Subspace.full(F3, 2)
    V = Subspace.span(F3, [[1, 1]])
    assert quotient_dim(U, V) == 1
    assert quotient_dim(U, U) == 0
    with pytest.raises(NotContained):
        quotient_dim(V, U)


def test_subspace_lattice():
    U = Subspace.span(F3, [[1, 0, 0], [0, 1, 0]])
    V = Subspace.span(F3, [[0, 1, 0], [0, 0, 1]])
    assert (U & V) == Subspace.span(F3, [[0, 1, 0]])
    assert (U + V).dim == 3
    assert [1, 2, 0] in U and [0, 0, 1] not in U
    assert U.coordinates([[2, 1, 0]]).tolist() == [[2, 1]]
    with pytest.raises(NotContained):
        U.coordinates([[0, 0, 1]])
    assert Subspace.span(F3, [[2, 4, 0], [0, 1, 0]]) == U
    assert hash(U) == hash(Subspace.span(F3, [[1, 1, 0], [1, 2, 0]]))


def test_spin_cyclic_shift():
    S = np.roll(np.eye(4, dtype=np.int64), 1, axis=0)
    assert spin(F3, [[1, 0, 0, 0]], [S]).dim == 4
    assert spin(F3, [[1, 1, 1, 1]], [S]).dim == 1
