"""Central idempotents e_i and the block decomposition H = (+) H e_i."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Element
from .errors import DimensionMismatch, VerificationFailed
from .linalg import Subspace
from .report import Report


@dataclass(frozen=True)
class Block:
    index: int
    idempotent: Element
    basis: Subspace

    @property
    def dim(self) -> int:
        return self.basis.dim


def idempotent(A: Algebra, i: int) -> Element:
    """e_i = (1/t) sum_j (xi^(-i p^s) g^(p^s))^j."""
    F = A.F
    t, ps = A.spec.t, A.p**A.spec.s
    c = A.F.xi ** (-(i * ps))
    total = A.zero
    step = c * A.g_power(ps)
    term = A.one
    for _ in range(t):
        total = total + term
        term = term * step
    return F(1) / F(t) * total


def central_idempotents(A: Algebra) -> list[Element]:
    es = [idempotent(A, i) for i in range(A.spec.t)]
    F = A.F
    ps = A.p**A.spec.s
    total = A.zero
    for i, e in enumerate(es):
        if e * e != e:
            raise VerificationFailed(f"e_{i} is not idempotent")
        for name in "gab":
            x = A.gen(name)
            if x * e != e * x:
                raise VerificationFailed(f"e_{i} does not commute with {name}")
        if A.g_power(ps) * e != F.xi ** (i * ps) * e:
            raise VerificationFailed(f"g^(p^s) e_{i} != xi^(i p^s) e_{i}")
        for j in range(i + 1, len(es)):
            if e * es[j]:
                raise VerificationFailed(f"e_{i} e_{j} != 0")
        total = total + e
    if total != A.one:
        raise VerificationFailed("idempotents do not sum to 1")
    return es


def expected_block_dim(A: Algebra) -> int:
    return A.dim // A.spec.t


def block_basis(A: Algebra, i: int, e: Element | None = None) -> Block:
    e = idempotent(A, i) if e is None else e
    R = A.rmul_matrix(e)
    U = Subspace.span(A.F, R.T, A.dim)
    if U.dim != expected_block_dim(A):
        raise DimensionMismatch(f"dim H e_{i} = {U.dim}, expected {expected_block_dim(A)}")
    return Block(i, e, U)


def blocks(A: Algebra) -> list[Block]:
    return [block_basis(A, i, e) for i, e in enumerate(central_idempotents(A))]


def g_nilpotency(A: Algebra, blk: Block) -> int | None:
    """Smallest k with (g - xi^i)^k = 0 on the block, or None if none <= dim."""
    F = A.F
    shift = A.Lg.copy()
    d = np.arange(A.dim)
    shift[d, d] = F.sub(shift[d, d], (F.xi**blk.index).code)
    V = blk.basis.basis
    for k in range(1, blk.dim + 1):
        V = F.matmul(V, shift.T)
        if not np.any(V):
            return k
    return None


def verify_block_decomposition(A: Algebra, blist: list[Block] | None = None) -> Report:
    rep = Report("blocks")
    try:
        blist = blocks(A) if blist is None else blist
    except (VerificationFailed, DimensionMismatch) as exc:
        rep.add("central idempotents", False, observed=str(exc), expected="central orthogonal idempotents", citation="e_i central, orthogonal, summing to 1")
        return rep
    t = A.spec.t
    rep.add(
        "central idempotents",
        True,
        observed=f"{t} idempotents",
        expected=f"{t} central orthogonal idempotents summing to 1",
        citation="e_i = (1/t) sum_j (xi^(-i p^s) g^(p^s))^j",
    )
    dims = [b.dim for b in blist]
    want = expected_block_dim(A)
    rep.add(
        "block dimensions",
        all(d == want for d in dims),
        observed=dims,
        expected=[want] * t,
        citation="dim H e_i = p^(s+2) (2^(s+4) for p = 2)",
    )
    total = Subspace.span(A.F, np.vstack([b.basis.basis for b in blist]), A.dim)
    rep.add(
        "direct sum",
        total.dim == A.dim and sum(dims) == A.dim,
        observed=total.dim,
        expected=A.dim,
        citation="H is the direct sum of the blocks",
    )
    for b in blist:
        k = g_nilpotency(A, b)
        rep.add(
            f"g-eigenvalue on H e_{b.index}",
            k is not None,
            observed=f"(g - xi^{b.index}) nilpotent of index {k}" if k else "other eigenvalues present",
            expected=f"unique eigenvalue xi^{b.index}",
            citation="g acts on H e_i with the single eigenvalue xi^i",
        )
        # two-sided ideal
        F = A.F
        V = b.basis.basis
        imgs = [F.matmul(V, L.T) for L in A.gen_ops.values()]
        imgs += [F.matmul(V, A.rmul_matrix(A.gen(x)).T) for x in "gab"]
        closed = b.basis.contains(np.vstack(imgs))
        rep.add(
            f"H e_{b.index} two-sided",
            closed,
            observed=closed,
            expected=True,
            citation="blocks are two-sided ideals",
        )
    rep.data["blocks"] = blist
    return rep
