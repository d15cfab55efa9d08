"""Coalgebra structure, antipode, integrals and the symmetry verdict."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .algebra import Algebra, Element, Variant
from .errors import IntegralDimensionAnomaly
from .field import Scalar
from .linalg import SparseOp, Subspace, kernel, rank
from .report import Report


class TensorElement:
    """An element of H (x) H stored as a dense ``dim x dim`` coefficient table."""

    __slots__ = ("algebra", "table")

    def __init__(self, algebra: Algebra, table):
        self.algebra = algebra
        self.table = np.asarray(table, dtype=np.int64)

    @classmethod
    def pure(cls, x: Element, y: Element) -> "TensorElement":
        F = x.F
        return cls(x.algebra, F.mul(x.vec[:, None], y.vec[None, :]))

    def __add__(self, other: "TensorElement"):
        return TensorElement(self.algebra, self.algebra.F.add(self.table, other.table))

    def __sub__(self, other: "TensorElement"):
        return TensorElement(self.algebra, self.algebra.F.sub(self.table, other.table))

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        A = self.algebra
        F = A.F
        out = np.zeros_like(other.table)
        for u, v in zip(*np.nonzero(self.table)):
            Lu = A.lmul_matrix(A.basis_element(int(u)))
            Lv = A.lmul_matrix(A.basis_element(int(v)))
            term = F.matmul(F.matmul(Lu, other.table), Lv.T)
            out = F.add(out, F.mul(term, self.table[u, v]))
        return TensorElement(A, out)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.algebra is other.algebra and bool(np.array_equal(self.table, other.table))

    def __bool__(self):
        return bool(np.any(self.table))

    def terms(self) -> list[tuple[str, str, str]]:
        A = self.algebra
        return [
            (A.basis_label(int(u)), A.basis_label(int(v)), A.F.from_code(self.table[u, v]).literal())
            for u, v in zip(*np.nonzero(self.table))
        ]

    def __repr__(self):
        parts = []
        for lu, lv, c in self.terms():
            coef = "" if c == "1" else f"({c})"
            parts.append(f"{coef}{lu}⊗{lv}")
        return " + ".join(parts) if parts else "0"


class HopfStructure:
    """Counit, coproduct and antipode of a built algebra, tabulated on the basis."""

    def __init__(self, algebra: Algebra):
        self.A = algebra
        self.F = algebra.F
        A = algebra
        self._ops = {k: SparseOp(self.F, M) for k, M in A.gen_ops.items()}

    @cached_property
    def eps(self) -> np.ndarray:
        """Counit as a row vector over the basis."""
        e = np.zeros(self.A.dim, dtype=np.int64)
        e[:: self.A.T] = 1
        return e

    def counit(self, x: Element) -> Scalar:
        return self.F.from_code(self.F.sum(self.F.mul(x.vec, self.eps)))

    # -- coproduct ---------------------------------------------------------------

    def _delta_step(self, letter: str, X: np.ndarray) -> np.ndarray:
        """``Delta(letter) * X`` for a tensor table X."""
        F, ops = self.F, self._ops
        g = ops["g"]
        if letter == "g":
            return g.apply_right(g.apply(X))
        L = ops[letter]
        return F.add(L.apply(X), L.apply_right(g.apply(X)))

    @cached_property
    def delta_tails(self) -> np.ndarray:
        A = self.A
        D = np.zeros((A.T, A.dim, A.dim), dtype=np.int64)
        D[0, 0, 0] = 1
        for tl in A.tail_order[1:]:
            letter, child = A.parent[tl]
            D[tl] = self._delta_step(letter, D[child])
        return D

    def delta_basis(self, x: int) -> np.ndarray:
        A = self.A
        i, tl = divmod(x, A.T)
        sh = i * A.T
        return np.roll(np.roll(self.delta_tails[tl], sh, axis=0), sh, axis=1)

    @cached_property
    def delta_all(self) -> np.ndarray:
        """``D[x]`` = table of Delta(basis x); memory dim**3."""
        A = self.A
        dt = np.uint8 if self.F.q <= 256 else np.int32
        D = np.empty((A.dim, A.dim, A.dim), dtype=dt)
        for x in range(A.dim):
            D[x] = self.delta_basis(x)
        return D

    def delta(self, x: Element) -> TensorElement:
        F = self.F
        out = np.zeros((self.A.dim, self.A.dim), dtype=np.int64)
        for k in np.flatnonzero(x.vec):
            out = F.add(out, F.mul(self.delta_basis(int(k)), x.vec[k]))
        return TensorElement(self.A, out)

    # -- antipode ---------------------------------------------------------------------

    @cached_property
    def s_images(self) -> dict[str, Element]:
        A = self.A
        ginv = A.g_power(A.n - 1)
        return {"g": ginv, "a": -(ginv * A.a), "b": -(ginv * A.b)}

    @cached_property
    def antipode_matrix(self) -> np.ndarray:
        """Column x holds S(basis x); S(letter * child) = S(child) S(letter)."""
        A, F = self.A, self.F
        R = {k: A.rmul_matrix(v) for k, v in self.s_images.items()}
        S = np.zeros((A.dim, A.dim), dtype=np.int64)
        S[0, 0] = 1
        for x in sorted(range(1, A.dim), key=A._word_len):
            letter, child = A.parent[x]
            S[:, x] = F.matmul(R[letter], S[:, child])
        return S

    def antipode(self, x: Element) -> Element:
        return Element(self.A, self.F.matmul(self.antipode_matrix, x.vec))

    @cached_property
    def antipode_squared(self) -> np.ndarray:
        S = self.antipode_matrix
        return self.F.matmul(S, S)


def _basis_sample(dim: int, limit: int | None, seed: int) -> np.ndarray:
    if limit is None or limit >= dim:
        return np.arange(dim)
    rng = np.random.default_rng(seed)
    return np.sort(rng.choice(dim, size=limit, replace=False))


class _Columns:
    """Column-sparse view of an operator: the nonzeros of each column."""

    def __init__(self, M: np.ndarray):
        cols, rows = np.nonzero(np.asarray(M).T)
        self.rows = rows
        self.vals = np.asarray(M)[rows, cols].astype(np.int64)
        self.off = np.searchsorted(cols, np.arange(M.shape[1] + 1))

    def expand(self, idx: np.ndarray):
        """For each j, the nonzeros of column idx[j]: (owner j, row, value)."""
        counts = self.off[idx + 1] - self.off[idx]
        owner = np.repeat(np.arange(idx.size), counts)
        starts = np.repeat(self.off[idx] - np.cumsum(counts) + counts, counts)
        pos = starts + np.arange(int(counts.sum()))
        return owner, self.rows[pos], self.vals[pos]


def _canon(F, keys, vals):
    """Sum duplicate keys and drop zeros; returns sorted keys and values."""
    if keys.size == 0:
        return keys, vals
    uniq, inv = np.unique(keys, return_inverse=True)
    summed = F.segment_sum(vals[:, None], inv, uniq.size)[:, 0]
    keep = summed != 0
    return uniq[keep], summed[keep]


def _same(lhs, rhs) -> bool:
    return np.array_equal(lhs[0], rhs[0]) and np.array_equal(lhs[1], rhs[1])


def verify_hopf_axioms(H: HopfStructure, limit: int | None = None, seed: int = 0) -> Report:
    """Coassociativity, counit and antipode axioms on basis elements.

    Coproduct tables are handled as sparse triplets ``(x, u, v, c)`` meaning
    ``c * u (x) v`` in Delta(x).  ``limit`` restricts the scan to a seeded
    sample of basis elements.
    """
    A, F = H.A, H.F
    dim = A.dim
    xs = _basis_sample(dim, limit, seed)
    scope = "full basis" if xs.size == dim else f"{xs.size} sampled basis elements"
    rep = Report("hopf axioms")
    D = H.delta_all
    eps = H.eps
    Dcols = _Columns(D.reshape(dim, dim * dim).T)  # column x -> entries u*dim+v

    def delta_of(idx, coeffs):
        """Triplets of sum_j coeffs[j] Delta(idx[j]), tagged by owner j."""
        owner, uv, c = Dcols.expand(idx)
        return owner, uv // dim, uv % dim, F.mul(c, coeffs[owner])

    xs_c = np.ones(xs.size, dtype=np.int64)
    own, us, vs, cs = delta_of(xs, xs_c)

    # coassociativity: both sides as keys over (x, k, l, m)
    o1, k1, l1, c1 = delta_of(us, cs)
    lhs = _canon(F, ((own[o1] * dim + k1) * dim + l1) * dim + vs[o1], c1)
    o2, k2, l2, c2 = delta_of(vs, cs)
    rhs = _canon(F, ((own[o2] * dim + us[o2]) * dim + k2) * dim + l2, c2)
    ok = _same(lhs, rhs)
    if not ok:
        bad = set(np.setxor1d(lhs[0], rhs[0]) // dim**3)
        both = np.intersect1d(lhs[0], rhs[0])
        bad |= set(both[lhs[1][np.searchsorted(lhs[0], both)] != rhs[1][np.searchsorted(rhs[0], both)]] // dim**3)
        where = A.basis_label(int(xs[min(bad)]))
    rep.add(
        "coassociativity",
        ok,
        observed=scope if ok else f"fails at {where}",
        expected="(Delta (x) id)Delta = (id (x) Delta)Delta",
        citation="coassociativity of the quoted coproduct",
    )

    ident = (np.arange(xs.size) * dim + xs, np.ones(xs.size, dtype=np.int64))
    m = eps[us] != 0
    left_c = _canon(F, own[m] * dim + vs[m], cs[m])
    m = eps[vs] != 0
    right_c = _canon(F, own[m] * dim + us[m], cs[m])
    ok = _same(left_c, ident) and _same(right_c, ident)
    rep.add(
        "counit",
        ok,
        observed=scope if ok else "mismatch",
        expected="(eps (x) id)Delta = id = (id (x) eps)Delta",
        citation="eps(g) = 1, eps(a) = eps(b) = 0",
    )

    # antipode: sum c S(u) v and sum c u S(v) via P[u, v] = S(u) v, Q[u, v] = u S(v)
    S = H.antipode_matrix
    C = A.structure
    P = F.matmul(S.T, C.reshape(dim, dim * dim)).reshape(dim, dim, dim)
    r1 = F.segment_sum(F.mul(cs[:, None], P[us, vs]), own, xs.size)
    del P
    Q = F.matmul(S.T[None], C)
    r2 = F.segment_sum(F.mul(cs[:, None], Q[us, vs]), own, xs.size)
    del Q
    target = np.zeros((xs.size, dim), dtype=np.int64)
    target[:, 0] = eps[xs]
    ok_l = bool(np.array_equal(r1, target))
    ok_r = bool(np.array_equal(r2, target))
    rep.add(
        "antipode (left)",
        ok_l,
        observed=scope if ok_l else "mismatch",
        expected="S(x1) x2 = eps(x) 1",
        citation="S(g) = g^-1, S(a) = -g^-1 a, S(b) = -g^-1 b",
    )
    rep.add(
        "antipode (right)",
        ok_r,
        observed=scope if ok_r else "mismatch",
        expected="x1 S(x2) = eps(x) 1",
        citation="S(g) = g^-1, S(a) = -g^-1 a, S(b) = -g^-1 b",
    )

    # multiplicativity on generator x basis; this implies it on all pairs
    cols = {k: _Columns(L) for k, L in A.gen_ops.items()}

    def act(L, slot, own_, u_, v_, c_):
        src = u_ if slot == 0 else v_
        j, r, val = cols[L].expand(src)
        nu = r if slot == 0 else u_[j]
        nv = v_[j] if slot == 0 else r
        return own_[j], nu, nv, F.mul(c_[j], val)

    def key(t):
        return _canon(F, (t[0] * dim + t[1]) * dim + t[2], t[3])

    ok_d = True
    for letter, L in A.gen_ops.items():
        j, k, val = cols[letter].expand(xs)
        o, u, v, c = delta_of(k, val)
        lhs = key((j[o], u, v, c))
        if letter == "g":
            t = act("g", 1, *act("g", 0, own, us, vs, cs))
            rhs = key(t)
        else:
            t1 = act(letter, 0, own, us, vs, cs)
            t2 = act(letter, 1, *act("g", 0, own, us, vs, cs))
            rhs = key(tuple(np.concatenate([a_, b_]) for a_, b_ in zip(t1, t2)))
        ok_d &= _same(lhs, rhs)
    ok_s = True
    for letter, L in A.gen_ops.items():
        Rs = A.rmul_matrix(H.s_images[letter])
        ok_s &= bool(np.array_equal(F.matmul(S, L), F.matmul(Rs, S)))
    rep.add(
        "Delta multiplicative",
        ok_d,
        observed=scope if ok_d else "mismatch",
        expected="Delta(xy) = Delta(x)Delta(y)",
        citation="Delta is an algebra map",
    )
    rep.add(
        "S anti-multiplicative",
        ok_s,
        observed="all basis" if ok_s else "mismatch",
        expected="S(xy) = S(y)S(x)",
        citation="S is an algebra anti-map",
    )
    return rep


# ---------------------------------------------------------------------------
# integrals and symmetry


def integral_space(A: Algebra, side: str = "left") -> Subspace:
    F = A.F
    eye = np.eye(A.dim, dtype=np.int64)
    if side == "left":
        ops = [F.sub(A.Lg, eye), A.La, A.Lb]
    elif side == "right":
        ops = [F.sub(A.rmul_matrix(A.g), eye), A.rmul_matrix(A.a), A.rmul_matrix(A.b)]
    else:
        raise ValueError(f"side must be left or right, not {side!r}")
    K = kernel(F, np.vstack(ops), ncols=A.dim)
    if K.dim != 1:
        raise IntegralDimensionAnomaly(f"{side} integral space has dimension {K.dim}")
    return K


def expected_integral(A: Algebra) -> Element:
    total = A.zero
    for i in range(A.n):
        total = total + A.g_power(i)
    if A.variant == Variant.CHAR_2:
        return total * A.word("ababbb")
    p = A.p
    return total * A.monomial(0, p - 1, p - 1)


def verify_integrals(A: Algebra, H: HopfStructure | None = None) -> Report:
    rep = Report("integrals")
    F = A.F
    left = integral_space(A, "left")
    right = integral_space(A, "right")
    rep.add("dim left integrals", left.dim == 1, observed=left.dim, expected=1, citation="one-dimensional space of left integrals")
    rep.add("dim right integrals", right.dim == 1, observed=right.dim, expected=1, citation="one-dimensional space of right integrals")
    rep.add("unimodular", left == right, observed=left == right, expected=True, citation="left and right integrals coincide")
    want = A.span([expected_integral(A)])
    shape = "(sum g^i) abab^3" if A.variant == Variant.CHAR_2 else "(sum g^i) a^(p-1) b^(p-1)"
    rep.add(
        "left integral",
        left == want,
        observed=repr(Element(A, left.basis[0])),
        expected=shape,
        citation=f"left integral spanned by {shape}",
    )
    tau = left.basis[0]
    # full-basis absorption x tau = eps(x) tau
    H = H or HopfStructure(A)
    C = A.structure
    prod = F.sum(F.mul(C.astype(np.int64), tau[None, :, None]), axis=1)
    expect = F.mul(H.eps[:, None], tau[None, :])
    rep.add(
        "integral absorption",
        bool(np.array_equal(prod, expect)),
        observed="x tau = eps(x) tau on all basis x" if np.array_equal(prod, expect) else "fails",
        expected="x tau = eps(x) tau",
        citation="defining property of a left integral",
    )
    s_tau = F.matmul(H.antipode_matrix, tau)
    line = A.span([Element(A, s_tau)])
    rep.add("S(integral) nonzero", line.dim == 1, observed=line.dim, expected=1, citation="antipode is bijective")
    return rep


def s2_witness(A: Algebra, H: HopfStructure, max_candidates: int = 10_000, seed: int = 0):
    """Search for an invertible u with u x = S^2(x) u for all x.

    Returns ``(u, solution_dim, tried)``; ``u`` is None when no candidate was
    found, which is inconclusive rather than negative.
    """
    F = A.F
    S2 = H.antipode_squared
    rows = []
    for gname in "gab":
        x = A.gen(gname)
        s2x = Element(A, F.matmul(S2, x.vec))
        rows.append(F.sub(A.rmul_matrix(x), A.lmul_matrix(s2x)))
    sol = kernel(F, np.vstack(rows), ncols=A.dim)
    if sol.dim == 0:
        return None, 0, 0

    def unit(vec):
        return rank(F, A.lmul_matrix(Element(A, vec))) == A.dim

    tried = 0
    preferred = A.g_power(A.n - 1)
    if sol.contains(preferred.vec):
        tried += 1
        if unit(preferred.vec):
            return preferred, sol.dim, tried
    for row in sol.basis:
        tried += 1
        if unit(row):
            return Element(A, row), sol.dim, tried
    rng = np.random.default_rng(seed)
    while tried < max_candidates:
        coeffs = rng.integers(0, F.q, size=sol.dim)
        vec = F.sum(F.mul(coeffs[:, None], sol.basis), axis=0)
        tried += 1
        if unit(vec):
            return Element(A, vec), sol.dim, tried
    return None, sol.dim, tried


def symmetric_verdict(A: Algebra, H: HopfStructure | None = None, seed: int = 0) -> Report:
    H = H or HopfStructure(A)
    F = A.F
    rep = Report("symmetry")
    left = integral_space(A, "left")
    right = integral_space(A, "right")
    unimodular = left == right
    u, sdim, tried = s2_witness(A, H, seed=seed)
    if u is not None:
        # full-basis recheck: u x = S^2(x) u
        lhs = A.lmul_matrix(u)
        rhs = F.matmul(A.rmul_matrix(u), H.antipode_squared)
        if not np.array_equal(lhs, rhs):
            u = None
    symmetric = unimodular and u is not None
    rep.data.update(unimodular=unimodular, s2_inner_witness=u, symmetric=symmetric)
    rep.add("unimodular", unimodular, observed=unimodular, expected=True, citation="left and right integrals coincide")
    if u is None:
        rep.add(
            "S^2 inner",
            "unknown",
            observed=f"no invertible witness among {tried} candidates (solution dim {sdim})",
            expected="invertible u with u x = S^2(x) u",
            citation="S^2 is inner",
        )
    else:
        rep.add("S^2 inner", True, observed=repr(u), expected="invertible u with u x = S^2(x) u", citation="S^2 is inner")
    rep.add(
        "symmetric",
        symmetric if u is not None else "unknown",
        observed=symmetric,
        expected=True,
        citation="symmetric Hopf algebra: unimodular with inner S^2",
    )
    return rep
