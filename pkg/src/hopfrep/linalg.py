"""Dense exact linear algebra over a :class:`~hopfrep.field.Field`.

Matrices are 2-D numpy arrays of field codes.  Vectors are stored as rows;
an operator ``L`` acts on a column vector ``v`` as ``L @ v``, so a stack of
row vectors ``V`` is mapped to ``V @ L.T``.
"""

from __future__ import annotations

import numpy as np

from .errors import NotContained
from .field import Field


def _as2d(M, ncols: int | None = None) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(1, -1) if M.size else np.zeros((0, ncols or 0), dtype=np.int64)
    return M


def rref(F: Field, M) -> tuple[np.ndarray, int, list[int]]:
    """Canonical reduced row-echelon form.

    Returns ``(R, rank, pivots)`` where ``R`` has the same shape as ``M``
    with the zero rows at the bottom.
    """
    A = _as2d(M).copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    prime = F.m == 1
    p = F.p
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        pv = A[r, c]
        if pv != 1:
            A[r] = F.mul(A[r], F._inv[pv])
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            if prime:
                A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
            else:
                A[hit] = F.sub(A[hit], F.mul(col[hit, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, r, pivots


def rank(F: Field, M) -> int:
    M = _as2d(M)
    if M.size == 0:
        return 0
    # eliminate along the shorter side
    if M.shape[0] > M.shape[1]:
        M = M.T
    return rref(F, M)[1]


class Subspace:
    """A subspace of ``F^n`` stored by its canonical RREF basis (one row per vector)."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, basis: np.ndarray, pivots: list[int]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, F: Field, vectors, ambient_dim: int | None = None) -> "Subspace":
        V = _as2d(vectors, ambient_dim)
        n = V.shape[1] if ambient_dim is None else ambient_dim
        if V.shape[0] == 0:
            return cls.zero(F, n)
        R, r, piv = rref(F, V)
        return cls(F, n, R[:r].copy(), piv)

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, np.zeros((0, n), dtype=np.int64), [])

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, np.eye(n, dtype=np.int64), list(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def reduce(self, vectors) -> np.ndarray:
        """Residues of the rows of ``vectors`` modulo this subspace."""
        V = _as2d(vectors, self.ambient_dim)
        if self.dim == 0 or V.shape[0] == 0:
            return V.copy()
        F = self.field
        coeffs = V[:, self.pivots]
        return F.sub(V, F.matmul(coeffs, self.basis))

    def contains(self, vectors) -> bool:
        return not np.any(self.reduce(vectors))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def contains_space(self, other: "Subspace") -> bool:
        return other.dim == 0 or self.contains(other.basis)

    def coordinates(self, vectors) -> np.ndarray:
        """Coordinates of vectors lying in the subspace w.r.t. ``basis``."""
        V = _as2d(vectors, self.ambient_dim)
        if not self.contains(V):
            raise NotContained("vector not in subspace")
        return V[:, self.pivots]

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, np.vstack([self.basis, other.basis]), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        F = self.field
        ann = np.vstack([annihilator(self).basis, annihilator(other).basis])
        return kernel(F, ann, ncols=self.ambient_dim)

    def __and__(self, other):
        return self.intersect(other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel(F: Field, M, ncols: int | None = None) -> Subspace:
    """Right null space ``{x : M x = 0}``."""
    M = _as2d(M, ncols)
    n = M.shape[1] if ncols is None else ncols
    if M.shape[0] == 0:
        return Subspace.full(F, n)
    R, r, piv = rref(F, M)
    free = [c for c in range(n) if c not in set(piv)]
    if not free:
        return Subspace.zero(F, n)
    K = np.zeros((len(free), n), dtype=np.int64)
    K[np.arange(len(free)), free] = 1
    if r:
        K[:, piv] = F.neg(R[:r][:, free].T)
    return Subspace.span(F, K, n)


def annihilator(U: Subspace) -> Subspace:
    """Vectors orthogonal to ``U`` under the standard pairing (as rows)."""
    return kernel(U.field, U.basis, ncols=U.ambient_dim)


def solve(F: Field, M, b) -> np.ndarray | None:
    """One solution of ``M x = b`` or ``None``."""
    M = _as2d(M)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    aug = np.hstack([M, b])
    R, r, piv = rref(F, aug)
    n = M.shape[1]
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, c in enumerate(piv):
        x[c] = R[row, n]
    return x


def eigenspace(F: Field, M, alpha) -> Subspace:
    M = _as2d(M)
    a = F.code(alpha)
    shifted = M.copy()
    d = np.arange(M.shape[0])
    shifted[d, d] = F.sub(M[d, d], a)
    return kernel(F, shifted)


def quotient_dim(U: Subspace, V: Subspace) -> int:
    if not U.contains_space(V):
        raise NotContained("second subspace is not contained in the first")
    return U.dim - V.dim


def image(F: Field, op, U: Subspace) -> Subspace:
    """``op(U)`` for an operator acting on column vectors."""
    return Subspace.span(F, F.matmul(U.basis, np.asarray(op).T), U.ambient_dim)


def spin(F: Field, vectors, ops, ambient_dim: int | None = None) -> Subspace:
    """Smallest subspace containing ``vectors`` and stable under every operator in ``ops``."""
    cur = Subspace.span(F, vectors, ambient_dim)
    frontier = cur.basis
    opsT = [np.asarray(op, dtype=np.int64).T for op in ops]
    while frontier.shape[0]:
        imgs = np.vstack([F.matmul(frontier, opT) for opT in opsT])
        res = cur.reduce(imgs)
        res = res[np.any(res, axis=1)]
        if res.shape[0] == 0:
            break
        new = Subspace.span(F, res, cur.ambient_dim)
        cur = cur + new
        frontier = new.basis
    return cur


def batch_invertible(F: Field, mats: np.ndarray) -> np.ndarray:
    """Invertibility of each matrix in a stack of shape ``(N, d, d)``."""
    A = np.array(mats, dtype=np.int64, copy=True)
    N, d, _ = A.shape
    ok = np.ones(N, dtype=bool)
    idx = np.arange(N)
    for c in range(d):
        nz = A[:, c:, c] != 0
        has = nz.any(axis=1)
        ok &= has
        piv = c + np.argmax(nz, axis=1)
        top = A[idx, c].copy()
        A[idx, c] = A[idx, piv]
        A[idx, piv] = top
        pv = A[idx, c, c]
        inv = np.where(has, F._inv[np.where(pv == 0, 1, pv)], 0)
        rowc = F.mul(A[:, c, :], inv[:, None])
        if c + 1 < d:
            factors = A[:, c + 1 :, c]
            A[:, c + 1 :, :] = F.sub(A[:, c + 1 :, :], F.mul(factors[:, :, None], rowc[:, None, :]))
    return ok


def is_invertible(F: Field, M) -> bool:
    M = _as2d(M)
    return M.shape[0] == M.shape[1] and rank(F, M) == M.shape[0]


def inverse(F: Field, M) -> np.ndarray:
    M = _as2d(M)
    n = M.shape[0]
    R, r, piv = rref(F, np.hstack([M, np.eye(n, dtype=np.int64)]))
    if r < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:].copy()


class SparseOp:
    """A sparse operator acting on the first axis of dense code arrays."""

    __slots__ = ("field", "shape", "rows", "cols", "vals")

    def __init__(self, F: Field, M):
        M = np.asarray(M, dtype=np.int64)
        self.field = F
        self.shape = M.shape
        self.rows, self.cols = np.nonzero(M)
        self.vals = M[self.rows, self.cols]

    def apply(self, X) -> np.ndarray:
        """``M @ X`` where X has shape ``(shape[1], ...)``."""
        F = self.field
        X = np.asarray(X, dtype=np.int64)
        tail = X.shape[1:]
        Xf = X.reshape(X.shape[0], -1)
        contrib = F.mul(self.vals[:, None], Xf[self.cols])
        out = F.segment_sum(contrib, self.rows, self.shape[0])
        return out.reshape((self.shape[0],) + tail)

    def apply_right(self, X) -> np.ndarray:
        """``X @ M.T`` acting on the last axis of X."""
        X = np.asarray(X, dtype=np.int64)
        moved = np.moveaxis(X, -1, 0)
        return np.moveaxis(self.apply(moved), 0, -1)
