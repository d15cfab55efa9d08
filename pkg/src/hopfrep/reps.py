"""Modules as matrix triples (rho(g), rho(a), rho(b)).

Covers the simple census, induced simples, tensor products, intertwiner
spaces, socles, the two-parameter 2-dimensional families, isomorphism
testing and the parameter normalisation lambda -> 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import Algebra, Element, Variant, algebra_build, commutation_coeffs, relation_checks
from .errors import RelationViolation, UnsupportedLambda, ZeroLambda
from .field import Field, Scalar, pth_root
from .hopf import HopfStructure
from .linalg import Subspace, batch_invertible, kernel, rank
from .report import Report


class Module:
    """A left module given by the matrices of g, a and b."""

    def __init__(self, algebra: Algebra, G, A, B, check: bool = True):
        self.algebra = algebra
        self.F = algebra.F
        self.G = np.asarray(G, dtype=np.int64)
        self.A = np.asarray(A, dtype=np.int64)
        self.B = np.asarray(B, dtype=np.int64)
        d = self.G.shape[0]
        for M in (self.G, self.A, self.B):
            if M.shape != (d, d):
                raise ValueError("module matrices must be square of equal size")
        self.dim = d
        if check:
            bad = [name for name, ok in relation_checks(algebra.spec, self.F, self.G, self.A, self.B) if not ok]
            if bad:
                detail = "also " + ", ".join(bad[1:]) if len(bad) > 1 else ""
                raise RelationViolation(bad[0], detail, bad)

    @property
    def mats(self) -> dict[str, np.ndarray]:
        return {"g": self.G, "a": self.A, "b": self.B}

    @cached_property
    def rho_basis(self) -> np.ndarray:
        """``rho(x)`` for every basis element x, shape (dim H, d, d)."""
        return self.algebra.hom_image(self.mats)

    def rho(self, x) -> np.ndarray:
        vec = x.vec if isinstance(x, Element) else np.asarray(x, dtype=np.int64)
        F = self.F
        R = self.rho_basis
        idx = np.flatnonzero(vec)
        return F.sum(F.mul(vec[idx, None, None], R[idx]), axis=0)

    def rho_many(self, vectors) -> np.ndarray:
        """rho of each row of ``vectors``; shape (k, d, d)."""
        V = np.asarray(vectors, dtype=np.int64)
        R = self.rho_basis.reshape(self.algebra.dim, -1)
        return self.F.matmul(V, R).reshape(V.shape[0], self.dim, self.dim)

    def action_span_dim(self) -> int:
        """dim of rho(H) inside End(M)."""
        return rank(self.F, self.rho_basis.reshape(self.algebra.dim, -1))

    def submodule(self, U: Subspace) -> "Module":
        return subquotient(self, U, Subspace.zero(self.F, self.dim))

    def quotient(self, U: Subspace) -> "Module":
        return subquotient(self, Subspace.full(self.F, self.dim), U)

    def serialise(self) -> dict:
        lit = lambda M: [[self.F.from_code(c).literal() for c in row] for row in M]
        return {"dim": self.dim, "g": lit(self.G), "a": lit(self.A), "b": lit(self.B)}

    def __repr__(self):
        return f"Module(dim={self.dim})"


def module_make(algebra: Algebra, G, A, B) -> Module:
    return Module(algebra, G, A, B, check=True)


def subquotient_mats(F: Field, ops: dict[str, np.ndarray], V: Subspace, W: Subspace) -> dict[str, np.ndarray]:
    """Matrices of ``ops`` on V/W, for W <= V both invariant.

    The basis of V/W is the RREF of V's basis reduced modulo W.
    """
    C = Subspace.span(F, W.reduce(V.basis), V.ambient_dim)
    out = {}
    for k, L in ops.items():
        img = W.reduce(F.matmul(C.basis, np.asarray(L).T))
        if not C.contains(img):
            raise ValueError("subspace is not invariant")
        out[k] = img[:, C.pivots].T.copy() if C.dim else np.zeros((0, 0), dtype=np.int64)
    return out


def subquotient(M: Module, V: Subspace, W: Subspace) -> Module:
    mats = subquotient_mats(M.F, M.mats, V, W)
    return Module(M.algebra, mats["g"], mats["a"], mats["b"], check=True)


def regular_subquotient(A: Algebra, V: Subspace, W: Subspace | None = None) -> Module:
    """The left H-module V/W for left ideals W <= V of H."""
    W = W if W is not None else Subspace.zero(A.F, A.dim)
    mats = subquotient_mats(A.F, A.gen_ops, V, W)
    return Module(A, mats["g"], mats["a"], mats["b"], check=True)


# ---------------------------------------------------------------------------
# simple modules


@dataclass(frozen=True)
class SimpleLabel:
    index: int
    dim: int


def _one(F, c):
    return np.array([[F.code(c)]], dtype=np.int64)


def trivial_module(A: Algebra) -> Module:
    F = A.F
    return module_make(A, _one(F, 1), _one(F, 0), _one(F, 0))


def induced_simple(A: Algebra, i: int) -> Module:
    """S_i = H (x)_A X_i on the basis v, b v, ..., b^(p-1) v (lambda = 1, i >= 1)."""
    spec, F, p = A.spec, A.F, A.p
    if spec.variant != Variant.CHAR_P or spec.lam != 1:
        raise UnsupportedLambda("induced simples need lambda = 1 and odd p")
    if not 1 <= i < spec.t:
        raise ValueError("i must lie in 1..t-1")
    z = F.xi**i
    alpha = 1 - z  # a . v
    G = np.zeros((p, p), dtype=np.int64)
    Am = np.zeros((p, p), dtype=np.int64)
    B = np.zeros((p, p), dtype=np.int64)
    G[0, 0] = z.code
    Am[0, 0] = alpha.code
    for m in range(1, p):
        al = commutation_coeffs(F, p, "AB", m)
        be = commutation_coeffs(F, p, "GB", m)
        for r in range(m + 1):
            # a b^m v = sum_r alpha_{m,r} b^(m-r) a^(r+1) v
            Am[m - r, m] = (al[r] * alpha ** (r + 1)).code
            # g b^m v = sum_r beta_{m,r} b^(m-r) g a^r v
            G[m - r, m] = (be[r] * z * alpha**r).code
    for m in range(p - 1):
        B[m + 1, m] = 1
    B[0, p - 1] = (spec.mu * (1 - z**p)).code
    return module_make(A, G, Am, B)


def simple_modules(A: Algebra) -> list[tuple[SimpleLabel, Module]]:
    spec, F = A.spec, A.F
    t = spec.t
    out = []
    if spec.variant == Variant.CHAR_2:
        for i in range(t):
            out.append((SimpleLabel(i, 1), module_make(A, _one(F, F.xi**i), _one(F, 0), _one(F, 0))))
        return out
    if spec.lam == 0:
        r = pth_root(spec.mu)
        for i in range(t):
            z = F.xi**i
            out.append((SimpleLabel(i, 1), module_make(A, _one(F, z), _one(F, 0), _one(F, r * (1 - z)))))
        return out
    if spec.lam == 1:
        out.append((SimpleLabel(0, 1), trivial_module(A)))
        for i in range(1, t):
            out.append((SimpleLabel(i, A.p), induced_simple(A, i)))
        return out
    raise UnsupportedLambda(f"lambda = {spec.lam!r}; normalise to lambda = 1 first")


def end_dim(M: Module) -> int:
    return hom_space(M, M).dim


def simplicity_certificate(M: Module) -> dict:
    """Burnside: rho(H) is all of End(M); absolute irreducibility: End dim 1."""
    span = M.action_span_dim()
    e = end_dim(M)
    return {"action_span": span, "end_dim": e, "simple": span == M.dim**2 and e == 1}


def verify_simples(A: Algebra, census=None) -> Report:
    rep = Report("simples")
    census = simple_modules(A) if census is None else census
    spec = A.spec
    if spec.t == 1:
        want = [1]
        claim = "t = 1: a single simple module (local algebra)"
    elif spec.variant == Variant.CHAR_2:
        want = [1] * spec.t
        claim = "t one-dimensional simples with a, b acting as 0"
    elif spec.lam == 0:
        want = [1] * spec.t
        claim = "t one-dimensional simples T_i"
    else:
        want = [1] + [spec.p] * (spec.t - 1)
        claim = "dim S_0 = 1 and dim S_i = p for i >= 1"
    rep.add("simple dimensions", [M.dim for _, M in census] == want, observed=[M.dim for _, M in census], expected=want, citation=claim)
    for lab, M in census:
        cert = simplicity_certificate(M)
        rep.add(
            f"S_{lab.index} simple",
            cert["simple"],
            observed=f"span {cert['action_span']}, End dim {cert['end_dim']}",
            expected=f"span {M.dim ** 2}, End dim 1",
            citation="simple and absolutely irreducible",
        )
    F = A.F
    if spec.variant == Variant.CHAR_P and spec.lam == 0:
        r = pth_root(spec.mu)
        got = [F.from_code(M.B[0, 0]).literal() for _, M in census]
        want_b = [(r * (1 - F.xi**lab.index)).literal() for lab, _ in census]
        rep.add("b-eigenvalues", got == want_b, observed=got, expected=want_b, citation="b acts on T_i by mu^(1/p)(1 - xi^i)")
    distinct = True
    for x in range(len(census)):
        for y in range(x + 1, len(census)):
            if iso_test(census[x][1], census[y][1]):
                distinct = False
    rep.add("pairwise non-isomorphic", distinct, observed=distinct, expected=True, citation="the simples are pairwise non-isomorphic")
    if spec.variant == Variant.CHAR_P and spec.lam == 1:
        for lab, M in census[1:]:
            joint = kernel(F, np.vstack([_shift(F, M.G, F.xi**lab.index), _shift(F, M.A, 1 - F.xi**lab.index)]), ncols=M.dim)
            e0 = np.zeros(M.dim, dtype=np.int64)
            e0[0] = 1
            ok = joint.dim == 1 and joint.contains(e0)
            rep.add(
                f"S_{lab.index} common eigenvector",
                ok,
                observed=f"joint eigenspace dim {joint.dim}",
                expected="span{v}",
                citation="v is the unique common eigenvector of g and a",
            )
    rep.data["census"] = census
    return rep


def _shift(F, M, c) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64).copy()
    d = np.arange(M.shape[0])
    M[d, d] = F.sub(M[d, d], F.code(c))
    return M


# ---------------------------------------------------------------------------
# tensor products, hom spaces, socles


def tensor_module(M: Module, N: Module) -> Module:
    F = M.F
    IN = np.eye(N.dim, dtype=np.int64)
    G = F.kron(M.G, N.G)
    A = F.add(F.kron(M.A, IN), F.kron(M.G, N.A))
    B = F.add(F.kron(M.B, IN), F.kron(M.G, N.B))
    return module_make(M.algebra, G, A, B)


def hom_space(M: Module, N: Module) -> Subspace:
    """Intertwiners F: M -> N as row-major flattened dN x dM matrices."""
    Fd = M.F
    dM, dN = M.dim, N.dim
    rows = []
    IM = np.eye(dM, dtype=np.int64)
    IN = np.eye(dN, dtype=np.int64)
    for key in "gab":
        X = M.mats[key]
        Y = N.mats[key]
        # vec(F X) = (I (x) X^T) vec F ; vec(Y F) = (Y (x) I) vec F
        rows.append(Fd.sub(Fd.kron(IN, X.T), Fd.kron(Y, IM)))
    return kernel(Fd, np.vstack(rows), ncols=dM * dN)


def annihilated(M: Module, gens) -> Subspace:
    """{v in M : x v = 0 for x in gens}, gens given as algebra vectors."""
    gens = np.asarray(gens, dtype=np.int64)
    if gens.size == 0:
        return Subspace.full(M.F, M.dim)
    mats = M.rho_many(gens)
    return kernel(M.F, mats.reshape(-1, M.dim), ncols=M.dim)


def socle(M: Module, radical_gens, census) -> tuple[Subspace, dict[int, int]]:
    """Socle as the annihilator of J (given by left-ideal generators) and its census."""
    soc = annihilated(M, radical_gens)
    S = M.submodule(soc)
    counts = {}
    for lab, T in census:
        h = hom_space(T, S).dim
        e = end_dim(T)
        if h:
            counts[lab.index] = h // e
    return soc, counts


def g_eigen_census(M: Module) -> dict[int, tuple[int, int]]:
    """For each i with xi^i an eigenvalue of rho(g): (algebraic mult, geometric mult)."""
    F = M.F
    out = {}
    for i in range(M.algebra.spec.t):
        sh = _shift(F, M.G, F.xi**i)
        geo = M.dim - rank(F, sh)
        if geo:
            alg = M.dim - rank(F, F.matpow(sh, M.dim))
            out[i] = (alg, geo)
    return out


def g_eigenspace_on_tensor(si: Module, sj: Module, i: int, j: int) -> Report:
    A = si.algebra
    t, p = A.spec.t, A.p
    T = tensor_module(si, sj)
    census = g_eigen_census(T)
    k = (i + j) % t
    rep = Report("tensor eigenspace")
    sole = list(census) == [k] and census[k][0] == T.dim
    rep.add(
        f"S_{i}(x)S_{j} sole g-eigenvalue",
        sole,
        observed={f"xi^{e}": list(v) for e, v in census.items()},
        expected=f"xi^{k} only",
        citation="xi^(i+j) is the unique eigenvalue of g",
    )
    geo = census.get(k, (0, 0))[1]
    rep.add(
        f"S_{i}(x)S_{j} eigenspace dim",
        geo == p,
        observed=geo,
        expected=p,
        citation="dim V_{xi^(i+j)} = p",
    )
    return rep


def g_jordan_type(M: Module) -> list[tuple[int, int, int]]:
    """Jordan blocks of rho(g): list of (i, size, count) for eigenvalue xi^i."""
    F = M.F
    out = []
    for i in range(M.algebra.spec.t):
        sh = _shift(F, M.G, F.xi**i)
        ranks = [M.dim]
        P = np.eye(M.dim, dtype=np.int64)
        while True:
            P = F.matmul(P, sh)
            r = rank(F, P)
            ranks.append(r)
            if r == ranks[-2]:
                break
        # number of blocks of size >= k is ranks[k-1] - ranks[k]
        ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
        for size in range(1, len(ge) + 1):
            cnt = ge[size - 1] - (ge[size] if size < len(ge) else 0)
            if cnt:
                out.append((i, size, cnt))
    return out


# ---------------------------------------------------------------------------
# isomorphism testing


@dataclass
class IsoResult:
    isomorphic: bool
    definitive: bool
    method: str
    witness: np.ndarray | None = None

    def __bool__(self):
        return self.isomorphic

    @property
    def verdict(self) -> str:
        if self.isomorphic:
            return "isomorphic"
        return "not-isomorphic" if self.definitive else "probably-not-isomorphic"


def iso_test(M: Module, N: Module, seed: int = 0, exhaustive_limit: int = 10**6, samples: int = 200) -> IsoResult:
    if M.dim != N.dim:
        return IsoResult(False, True, "dimension")
    F = M.F
    H = hom_space(M, N)
    d = M.dim
    h = H.dim
    if h == 0:
        return IsoResult(False, True, "hom space zero")
    if F.q**h <= exhaustive_limit:
        total = F.q**h
        for start in range(0, total, 50_000):
            idx = np.arange(start, min(total, start + 50_000))
            coeffs = (idx[:, None] // (F.q ** np.arange(h))) % F.q
            mats = F.matmul(coeffs, H.basis).reshape(-1, d, d)
            ok = batch_invertible(F, mats)
            if ok.any():
                return IsoResult(True, True, "exhaustive", mats[int(np.argmax(ok))])
        return IsoResult(False, True, "exhaustive")
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, F.q, size=(samples, h))
    mats = F.matmul(coeffs, H.basis).reshape(-1, d, d)
    ok = batch_invertible(F, mats)
    if ok.any():
        return IsoResult(True, True, "sampled", mats[int(np.argmax(ok))])
    return IsoResult(False, False, "sampled")


# ---------------------------------------------------------------------------
# two-parameter families


def two_param_module(A: Algebra, i: int, beta, gamma) -> Module:
    """g -> [[xi^i, beta], [0, xi^i]], a -> 0, b -> [[d, gamma], [0, d]].

    d = 0 for p = 2 and d = mu^(1/p)(1 - xi^i) for lambda = 0.
    """
    F = A.F
    spec = A.spec
    if spec.variant == Variant.CHAR_2:
        delta = F(0)
    elif spec.lam == 0:
        delta = pth_root(spec.mu) * (1 - F.xi**i)
    else:
        raise UnsupportedLambda("two-parameter families need p = 2 or lambda = 0")
    z = F.xi**i
    G = np.array([[z.code, F.code(beta)], [0, z.code]], dtype=np.int64)
    Am = np.zeros((2, 2), dtype=np.int64)
    B = np.array([[delta.code, F.code(gamma)], [0, delta.code]], dtype=np.int64)
    return module_make(A, G, Am, B)


def family_scan(A: Algebra, i: int = 0) -> Report:
    """Exhaustive check of the proportionality law for the 2-dim families."""
    F = A.F
    rep = Report("two-parameter families")
    pairs = [(b, c) for b in range(F.q) for c in range(F.q)]
    mods = {pc: two_param_module(A, i, F.from_code(pc[0]), F.from_code(pc[1])) for pc in pairs}
    bad = []
    for x in pairs:
        for y in pairs:
            if y < x:
                continue
            prop = any(
                F.mul(a, y[0]) == x[0] and F.mul(a, y[1]) == x[1] for a in range(1, F.q)
            )
            res = iso_test(mods[x], mods[y])
            if not res.definitive or bool(res) != prop:
                bad.append((x, y))
    name = "M" if A.variant == Variant.CHAR_2 else "N"
    rep.add(
        f"{name}(beta,gamma) iso law",
        not bad,
        observed=f"{len(pairs) * (len(pairs) + 1) // 2} pairs checked, {len(bad)} violations",
        expected="iso iff proportional",
        citation="M(beta,gamma) = M(beta',gamma') iff (beta,gamma) = alpha(beta',gamma')",
    )
    zero = mods[(0, 0)]
    S = simple_modules(A)[i][1] if A.spec.variant == Variant.CHAR_2 or A.spec.lam == 0 else None
    if S is not None:
        ss = direct_sum(S, S)
        res = iso_test(zero, ss)
        rep.add(f"{name}(0,0) semisimple", bool(res), observed=res.verdict, expected="isomorphic to S_i + S_i", citation="M(0,0) = S_i + S_i")
    if A.variant == Variant.CHAR_2:
        bad = []
        for g1 in range(F.q):
            for g2 in range(F.q):
                res = iso_test(mods[(1, g1)], mods[(1, g2)])
                if bool(res) != (g1 == g2) or not res.definitive:
                    bad.append((g1, g2))
        rep.add(
            "M(gamma) injectivity",
            not bad,
            observed=f"{F.q * F.q} pairs, {len(bad)} violations",
            expected="M(gamma1) = M(gamma2) iff gamma1 = gamma2",
            citation="M(gamma1) = M(gamma2) iff gamma1 = gamma2",
        )
    return rep


def direct_sum(M: Module, N: Module) -> Module:
    def blk(X, Y):
        out = np.zeros((X.shape[0] + Y.shape[0],) * 2, dtype=np.int64)
        out[: X.shape[0], : X.shape[0]] = X
        out[X.shape[0] :, X.shape[0] :] = Y
        return out

    return module_make(M.algebra, blk(M.G, N.G), blk(M.A, N.A), blk(M.B, N.B))


# ---------------------------------------------------------------------------
# lambda normalisation


@dataclass
class Normalization:
    source: Algebra
    target: Algebra
    root: Scalar
    images: dict[str, Element]
    matrix: np.ndarray
    report: Report

    def pull_back(self, M: Module) -> Module:
        """A target module viewed as a source module along the isomorphism."""
        F = self.source.F
        r = self.root.code
        return module_make(self.source, M.G, F.mul(M.A, r), F.mul(M.B, r))


def normalize_parameters(source: Algebra, target: Algebra | None = None) -> Normalization:
    spec = source.spec
    F = source.F
    if spec.variant != Variant.CHAR_P:
        raise UnsupportedLambda("normalisation applies to odd p only")
    if not spec.lam:
        raise ZeroLambda("lambda must be nonzero")
    tspec = spec.with_params(1, spec.mu / spec.lam)
    T = target if target is not None else algebra_build(tspec)
    r = pth_root(spec.lam)
    images = {"g": T.g, "a": r * T.a, "b": r * T.b}
    L = {k: T.lmul_matrix(v) for k, v in images.items()}
    rep = Report("normalisation")
    checks = relation_checks(spec, F, L["g"], L["a"], L["b"])
    bad = [n for n, ok in checks if not ok]
    rep.add(
        "relations preserved",
        not bad,
        observed="all relations hold" if not bad else bad,
        expected="images satisfy the source relations",
        citation="H(lambda,mu) = H(1, mu/lambda)",
    )
    # matrix of the induced map on bases: column x = phi(basis x)
    Phi = np.zeros((T.dim, source.dim), dtype=np.int64)
    Phi[0, 0] = 1
    for x in sorted(range(1, source.dim), key=source._word_len):
        letter, child = source.parent[x]
        Phi[:, x] = F.matmul(L[letter], Phi[:, child])
    rk = rank(F, Phi)
    rep.add("bijective", rk == source.dim, observed=rk, expected=source.dim, citation="induced basis map has full rank")
    Hs, Ht = HopfStructure(source), HopfStructure(T)
    coalg = True
    for name in "gab":
        lhs = Ht.delta(images[name]).table
        Dx = Hs.delta(source.gen(name)).table
        rhs = F.matmul(F.matmul(Phi, Dx), Phi.T)
        coalg &= bool(np.array_equal(lhs, rhs))
    rep.add("coalgebra map", coalg, observed=coalg, expected=True, citation="Delta(phi(x)) = (phi (x) phi)Delta(x) on generators")
    return Normalization(source, T, r, images, Phi, rep)


def transported_simples(norm: Normalization) -> list[tuple[SimpleLabel, Module]]:
    return [(lab, norm.pull_back(M)) for lab, M in simple_modules(norm.target)]
