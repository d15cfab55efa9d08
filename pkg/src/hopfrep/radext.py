"""Jacobson radical, radical layers, projective covers, Ext^1 and wildness."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra, Element, Variant
from .blocks import Block, blocks
from .errors import CensusIncomplete, UnsupportedLambda, UnsupportedParameterRegion
from .field import pth_root
from .hopf import HopfStructure, symmetric_verdict
from .linalg import Subspace, kernel, spin
from .reps import Module, SimpleLabel, end_dim, hom_space, iso_test, regular_subquotient, simple_modules, socle
from .report import Report

SMALL_PRIMES_B1 = (3, 5, 7, 11)


def census_or_raise(A: Algebra):
    try:
        return simple_modules(A)
    except UnsupportedLambda as exc:
        raise CensusIncomplete(str(exc)) from exc


def jacobson_radical(A: Algebra, census=None) -> Subspace:
    """Intersection of the annihilators of the simple modules."""
    census = census_or_raise(A) if census is None else census
    F = A.F
    R = np.hstack([M.rho_basis.reshape(A.dim, -1) for _, M in census])
    return kernel(F, R.T, ncols=A.dim)


def two_sided_generators(A: Algebra, U: Subspace) -> np.ndarray:
    """A small set of elements generating the two-sided ideal U (greedy)."""
    F = A.F
    ops = list(A.gen_ops.values()) + [A.rmul_matrix(A.gen(x)) for x in "gab"]
    gens = []
    cur = Subspace.zero(F, A.dim)
    for row in U.basis:
        if cur.contains(row):
            continue
        gens.append(row)
        cur = spin(F, np.vstack([cur.basis, row]), ops, A.dim)
        if cur.dim == U.dim:
            break
    return np.array(gens, dtype=np.int64).reshape(-1, A.dim)


def left_generators(A: Algebra, U: Subspace) -> np.ndarray:
    """A small set of elements generating the left ideal U (greedy)."""
    F = A.F
    ops = list(A.gen_ops.values())
    gens = []
    cur = Subspace.zero(F, A.dim)
    for row in U.basis:
        if cur.contains(row):
            continue
        gens.append(row)
        cur = spin(F, np.vstack([cur.basis, row]), ops, A.dim)
        if cur.dim == U.dim:
            break
    return np.array(gens, dtype=np.int64).reshape(-1, A.dim)


def left_ideal_product(A: Algebra, X: np.ndarray, V: Subspace) -> Subspace:
    """H X V for elements X (rows) and a subspace V: spans {x v} then spins on the left."""
    F = A.F
    if V.dim == 0 or X.shape[0] == 0:
        return Subspace.zero(F, A.dim)
    prods = np.vstack([F.matmul(V.basis, A.lmul_matrix(Element(A, x)).T) for x in X])
    return spin(F, prods, list(A.gen_ops.values()), A.dim)


@dataclass
class RadicalFiltration:
    scope: str
    chain: list[Subspace]
    ambient: Subspace | None = None

    @property
    def dims(self) -> list[int]:
        return [U.dim for U in self.chain]

    def layer(self, k: int) -> int:
        """dim J^k / J^(k+1) for k >= 1 (k = 0 gives the top)."""
        top = self.ambient.dim if self.ambient is not None else None
        seq = [top] + self.dims + [0]
        return seq[k] - seq[k + 1]

    @property
    def loewy_length(self) -> int:
        return len(self.chain) + 1


@dataclass
class RadicalData:
    algebra: Algebra
    census: list
    J: Subspace
    gens: np.ndarray
    left_gens: np.ndarray
    powers: list[Subspace] = field(default_factory=list)

    def power(self, k: int) -> Subspace:
        """J^k for k >= 1 (computed lazily)."""
        A = self.algebra
        if not self.powers:
            self.powers.append(self.J)
        while len(self.powers) < k:
            nxt = left_ideal_product(A, self.gens, self.powers[-1])
            self.powers.append(nxt)
        return self.powers[k - 1]

    def filtration(self, blk: Block | None = None) -> RadicalFiltration:
        A = self.algebra
        chain = []
        k = 1
        while True:
            U = self.power(k)
            if blk is not None:
                U = restrict(A, U, blk)
            if U.dim == 0:
                break
            if chain and U.dim >= chain[-1].dim:
                raise RuntimeError("radical power chain stalled; J is not nilpotent")
            chain.append(U)
            k += 1
        if blk is None:
            return RadicalFiltration("algebra", chain, Subspace.full(A.F, A.dim))
        return RadicalFiltration(f"block {blk.index}", chain, blk.basis)


def restrict(A: Algebra, U: Subspace, blk: Block) -> Subspace:
    """U e_i for a two-sided ideal U."""
    R = A.rmul_matrix(blk.idempotent)
    return Subspace.span(A.F, A.F.matmul(U.basis, R.T), A.dim)


def radical(A: Algebra, census=None) -> RadicalData:
    census = census_or_raise(A) if census is None else census
    J = jacobson_radical(A, census)
    return RadicalData(A, census, J, two_sided_generators(A, J), left_generators(A, J))


def radical_powers(rd: RadicalData, blk: Block | None = None) -> RadicalFiltration:
    return rd.filtration(blk)


def verify_radical(A: Algebra, rd: RadicalData) -> Report:
    rep = Report("radical")
    F = A.F
    J = rd.J
    top = sum(M.dim**2 for _, M in rd.census)
    rep.add(
        "Wedderburn count",
        A.dim - J.dim == top,
        observed=f"dim H - dim J = {A.dim - J.dim}",
        expected=f"sum of (dim S)^2 = {top}",
        citation="H/J is split semisimple with the listed simples",
    )
    ops = list(A.gen_ops.values()) + [A.rmul_matrix(A.gen(x)) for x in "gab"]
    closed = all(J.contains(F.matmul(J.basis, L.T)) for L in ops) if J.dim else True
    rep.add("two-sided ideal", closed, observed=closed, expected=True, citation="J is a two-sided ideal")
    filt = rd.filtration()
    rep.add(
        "nilpotent",
        True,
        observed=f"J^k dims {filt.dims}, J^{len(filt.chain) + 1} = 0",
        expected="chain reaches 0",
        citation="J is nilpotent",
    )
    rep.add("1 not in J", not J.contains(A.one.vec), observed=not J.contains(A.one.vec), expected=True, citation="J is proper")
    if A.variant == Variant.CHAR_P:
        inside = J.contains(A.a.vec) and J.contains(A.b.vec)
        if A.spec.t == 1:
            rep.add("a, b in J", inside, observed=inside, expected=True, citation="t = 1: a, b lie in J")
        elif A.spec.lam == 1:
            rep.add(
                "a, b not in J",
                not J.contains(A.a.vec) and not J.contains(A.b.vec),
                observed={"a": J.contains(A.a.vec), "b": J.contains(A.b.vec)},
                expected={"a": False, "b": False},
                citation="t > 1, lambda = 1: a, b not in J",
            )
    rep.data["radical"] = rd
    rep.data["filtration"] = filt
    return rep


# ---------------------------------------------------------------------------
# claimed radical layers


def _claimed_sets(A: Algebra, blk: Block):
    """The explicit spanning sets N (for J^2) and M (for J^3) inside H e_i."""
    F = A.F
    i = blk.index
    e = blk.idempotent
    n = A.n
    Gp = A.g - F.xi**i
    p = A.p
    if A.variant == Variant.CHAR_2:
        from .algebra import CHAR2_WORDS

        N, M = [], []
        for j in range(n):
            Gj = Gp**j
            for w in CHAR2_WORDS:
                x = Gj * A.word(w) * e if w else Gj * e
                deg = j + len(w)
                if deg >= 2:
                    N.append(x)
                if deg >= 3:
                    M.append(x)
        N.append(A.a * e)
        M += [Gp * A.a * e, A.a * A.b * e, A.b * A.a * e]
        return N, M
    delta = pth_root(A.spec.mu) * (1 - F.xi**i) if A.spec.lam == 0 else F(0)
    Bp = A.b - delta
    N, M = [], []
    for i1 in range(n):
        Gi = Gp**i1
        for j1 in range(p):
            for k1 in range(p):
                x = Gi * A.a**j1 * Bp**k1 * e
                deg = i1 + j1 + k1
                if deg >= 2:
                    N.append(x)
                if deg >= 3:
                    M.append(x)
    N.append(A.a * e)
    M += [Gp * A.a * e, A.a * A.a * e, A.a * Bp * e]
    return N, M


def claimed_layers_apply(A: Algebra, blk: Block) -> bool:
    if A.variant == Variant.CHAR_2:
        return True
    return A.spec.lam == 0 or (A.spec.lam == 1 and blk.index == 0)


def verify_claimed_radical_layers(A: Algebra, rd: RadicalData, blist: list[Block] | None = None) -> Report:
    rep = Report("radical layers")
    blist = blocks(A) if blist is None else blist
    for blk in blist:
        filt = rd.filtration(blk)
        J2 = filt.chain[1] if len(filt.chain) > 1 else Subspace.zero(A.F, A.dim)
        J3 = filt.chain[2] if len(filt.chain) > 2 else Subspace.zero(A.F, A.dim)
        l1, l2 = filt.layer(1), filt.layer(2)
        rep.add(
            f"dim J/J^2 on H e_{blk.index}",
            l1 == 2 if claimed_layers_apply(A, blk) else "unknown",
            observed=l1,
            expected=2 if claimed_layers_apply(A, blk) else None,
            citation="dim J/J^2 = dim Ext(S_i, S_i) = 2",
        )
        if A.variant == Variant.CHAR_2:
            want2 = 3 if A.spec.s == 1 else 4
            cite = "dim J^2/J^3 = 3 (s = 1), 4 (s >= 2): (g - xi^i)^2 e_i vanishes only when s = 1"
        elif claimed_layers_apply(A, blk):
            want2 = 4
            cite = "dim J^2/J^3 = 4"
        else:
            want2 = None
            cite = ""
        rep.add(
            f"dim J^2/J^3 on H e_{blk.index}",
            l2 == want2 if want2 is not None else "unknown",
            observed=l2,
            expected=want2,
            citation=cite or "no claim for this block",
        )
        if not claimed_layers_apply(A, blk):
            continue
        N, M = _claimed_sets(A, blk)
        Ns = A.span(N)
        Ms = A.span(M)
        rep.add(
            f"N = J^2 on H e_{blk.index}",
            Ns == J2,
            observed=f"dim N = {Ns.dim}, dim J^2 = {J2.dim}, dim(N + J^2) = {(Ns + J2).dim}",
            expected="N = J^2",
            citation="J^2 = N, spanned by shifted monomials of degree >= 2 and a e_i",
        )
        rep.add(
            f"M = J^3 on H e_{blk.index}",
            Ms == J3,
            observed=f"dim M = {Ms.dim}, dim J^3 = {J3.dim}, dim(M + J^3) = {(Ms + J3).dim}",
            expected="M = J^3",
            citation="J^3 = M, spanned by shifted monomials of degree >= 3 and three degree-2 terms",
        )
    return rep


# ---------------------------------------------------------------------------
# projective covers


@dataclass
class ProjectiveCover:
    label: SimpleLabel
    generator: Element
    space: Subspace
    shape: str
    module: Module | None = None

    @property
    def dim(self) -> int:
        return self.space.dim


def cover_generator(A: Algebra, i: int, e: Element) -> tuple[Element, str]:
    """y with P(S_i) = H y."""
    spec = A.spec
    if A.variant == Variant.CHAR_2 or spec.lam == 0 or i == 0:
        return e, "H e_i"
    if spec.lam != 1:
        raise UnsupportedLambda("normalise to lambda = 1 first")
    p = A.p
    if spec.mu == 0:
        return A.b ** (p - 1) * e, "H b^(p-1) e_i"
    F = A.F
    r = pth_root(spec.mu)
    if spec.s == 1:
        b0 = A.b + r * (F.xi**i - 1)
        return b0 ** (p - 1) * e, "H b0^(p-1) e_i"
    if p in SMALL_PRIMES_B1:
        b1 = A.b + r * (A.g - 1)
        return b1 ** (p - 1) * e, "H b1^(p-1) e_i"
    raise UnsupportedParameterRegion("lambda = 1, mu != 0, s > 1 needs p in {3, 5, 7, 11}")


def expected_cover_dim(A: Algebra, i: int) -> int:
    if A.variant == Variant.CHAR_2:
        return 2 ** (A.spec.s + 4)
    ps2 = A.p ** (A.spec.s + 2)
    if A.spec.lam == 1 and i >= 1:
        return ps2 // A.p
    return ps2


def projective_idempotent(A: Algebra, i: int, e: Element) -> tuple[Element, Element]:
    """(alpha^-1 a^(p^s - p + 1) y, alpha) where y is the cover generator."""
    spec = A.spec
    if spec.lam != 1 or i < 1 or A.variant != Variant.CHAR_P:
        raise ValueError("explicit idempotent needs lambda = 1 and i >= 1")
    F = A.F
    p = A.p
    y, _ = cover_generator(A, i, e)
    alpha = F(math.factorial(p - 1)) / F(2) ** (p - 1) * (1 - F.xi ** (i * p**spec.s))
    assert alpha != 0
    return (1 / alpha) * (A.a ** (p**spec.s - p + 1) * y), alpha


def projective_cover(A: Algebra, lab: SimpleLabel, blk: Block) -> ProjectiveCover:
    y, shape = cover_generator(A, lab.index, blk.idempotent)
    R = A.rmul_matrix(y)
    P = Subspace.span(A.F, R.T, A.dim)
    return ProjectiveCover(lab, y, P, shape)


def verify_projectives(A: Algebra, rd: RadicalData, blist: list[Block] | None = None) -> Report:
    rep = Report("projectives")
    blist = blocks(A) if blist is None else blist
    F = A.F
    covers = {}
    for (lab, S), blk in zip(rd.census, blist):
        try:
            pc = projective_cover(A, lab, blk)
        except UnsupportedParameterRegion as exc:
            rep.add(f"P(S_{lab.index})", "unsupported", observed=str(exc), expected=None, citation="no cover construction for this region")
            continue
        covers[lab.index] = pc
        want = expected_cover_dim(A, lab.index)
        rep.add(
            f"dim P(S_{lab.index})",
            pc.dim == want,
            observed=pc.dim,
            expected=want,
            citation=f"P(S_i) = {pc.shape}, dim {'p^(s+1)' if want < blk.dim else 'of the whole block'}",
        )
        rep.add(
            f"multiplicity on H e_{lab.index}",
            blk.dim == S.dim * pc.dim,
            observed=f"{blk.dim} = {S.dim} x {pc.dim}" if blk.dim == S.dim * pc.dim else f"{blk.dim} != {S.dim} x {pc.dim}",
            expected="dim H e_i = dim S_i * dim P(S_i)",
            citation="H e_i = P(S_i)^(dim S_i)",
        )
        JP = _rad_of(A, rd, pc)
        top = regular_subquotient(A, pc.space, JP)
        res = iso_test(top, S)
        rep.add(f"top P(S_{lab.index})", bool(res), observed=res.verdict, expected=f"isomorphic to S_{lab.index}", citation="P/JP = S_i")
        Pmod = regular_subquotient(A, pc.space)
        pc.module = Pmod
        soc, counts = socle(Pmod, rd.left_gens, rd.census)
        ok = counts == {lab.index: 1} and soc.dim == S.dim
        rep.add(
            f"soc P(S_{lab.index})",
            ok,
            observed={f"S_{k}": v for k, v in counts.items()},
            expected={f"S_{lab.index}": 1},
            citation="soc P(S_i) = S_i (symmetric block)",
        )
        if A.variant == Variant.CHAR_P and A.spec.lam == 1 and lab.index >= 1:
            eh, alpha = projective_idempotent(A, lab.index, blk.idempotent)
            rep.add(
                f"idempotent for P(S_{lab.index})",
                eh * eh == eh,
                observed=f"alpha = {alpha.literal()}",
                expected="e^2 = e",
                citation="alpha^-1 a^(p^s-p+1) b^(p-1) e_i is idempotent",
            )
            same = Subspace.span(F, A.rmul_matrix(eh).T, A.dim) == pc.space
            rep.add(
                f"H e = P(S_{lab.index})",
                same,
                observed=same,
                expected=True,
                citation="H e_hat = H b^(p-1) e_i",
            )
            if A.spec.mu != 0 and A.spec.s == 1:
                r = pth_root(A.spec.mu)
                b0 = A.b + r * (F.xi**lab.index - 1)
                z = b0**A.p * blk.idempotent
                rep.add(f"b0^p e_{lab.index} = 0", not z, observed=repr(z), expected="0", citation="b0^p e_i = 0")
            elif pc.shape == "H b1^(p-1) e_i":
                # used only after it is seen to hold on this instance
                z = pc.generator * (A.b + pth_root(A.spec.mu) * (A.g - 1)) * blk.idempotent
                rep.add(f"b1^p e_{lab.index} = 0", not z, observed=repr(z), expected="0", citation="b1^p = 0 for p = 3, 5, 7, 11")
    rep.data["covers"] = covers
    return rep


def _rad_of(A: Algebra, rd: RadicalData, pc: ProjectiveCover) -> Subspace:
    """J P = J y."""
    return Subspace.span(A.F, A.F.matmul(rd.J.basis, A.rmul_matrix(pc.generator).T), A.dim)


def _rad2_of(A: Algebra, rd: RadicalData, pc: ProjectiveCover) -> Subspace:
    J2 = rd.power(2)
    return Subspace.span(A.F, A.F.matmul(J2.basis, A.rmul_matrix(pc.generator).T), A.dim)


def ext_dim(A: Algebra, rd: RadicalData, pc: ProjectiveCover, target: Module) -> int:
    """dim Ext^1(S_i, S_j) as the multiplicity of S_j in rad P(S_i) / rad^2 P(S_i)."""
    layer = regular_subquotient(A, _rad_of(A, rd, pc), _rad2_of(A, rd, pc))
    return hom_space(layer, target).dim // end_dim(target)


def ext_matrix(A: Algebra, rd: RadicalData, covers: dict[int, ProjectiveCover]) -> dict[tuple[int, int], int]:
    out = {}
    for i, pc in covers.items():
        layer = regular_subquotient(A, _rad_of(A, rd, pc), _rad2_of(A, rd, pc))
        for lab, S in rd.census:
            out[(i, lab.index)] = hom_space(layer, S).dim // end_dim(S)
    return out


def verify_ext(A: Algebra, rd: RadicalData, covers: dict[int, ProjectiveCover], blist: list[Block] | None = None) -> Report:
    rep = Report("ext")
    blist = blocks(A) if blist is None else blist
    E = ext_matrix(A, rd, covers)
    local_family = A.variant == Variant.CHAR_2 or A.spec.lam == 0
    for (i, j), v in sorted(E.items()):
        if local_family:
            want = 2 if i == j else 0
            rep.add(f"ext({i},{j})", v == want, observed=v, expected=want, citation="dim Ext(S_i, S_j) = 2 if i = j, 0 otherwise")
        elif i == 0 and j == 0:
            rep.add("ext(0,0)", v == 2, observed=v, expected=2, citation="dim Ext(S_0, S_0) = 2 over H(1, mu) e_0")
        else:
            rep.add(f"ext({i},{j})", "unknown", observed=v, expected=None, citation="no claim for this pair")
    for blk in blist:
        i = blk.index
        if (i, i) not in E:
            continue
        if local_family or i == 0:
            l1 = rd.filtration(blk).layer(1)
            rep.add(
                f"ext({i},{i}) = dim J/J^2 on H e_{i}",
                E[(i, i)] == l1,
                observed=f"{E[(i, i)]} vs {l1}",
                expected="equal",
                citation="local basic block: dim Ext(S_i, S_i) = dim J/J^2",
            )
    rep.data["ext"] = E
    return rep


# ---------------------------------------------------------------------------
# wildness


def block_simples(rd: RadicalData, blk: Block) -> list[int]:
    """Indices of simples on which e_i acts nonzero."""
    out = []
    for lab, M in rd.census:
        if np.any(M.rho(blk.idempotent)):
            out.append(lab.index)
    return out


def wildness_report(A: Algebra, rd: RadicalData, blist: list[Block] | None = None, symmetric: bool | None = None) -> Report:
    rep = Report("wildness")
    blist = blocks(A) if blist is None else blist
    if symmetric is None:
        symmetric = bool(symmetric_verdict(A, HopfStructure(A)).data["symmetric"])
    verdicts = []
    for blk in blist:
        simp = block_simples(rd, blk)
        local = len(simp) == 1 and rd.census[simp[0]][1].dim == 1
        filt = rd.filtration(blk)
        l1, l2 = filt.layer(1), filt.layer(2)
        hyp = {"local": local, "symmetric": symmetric, "dim J/J^2": l1, "dim J^2/J^3": l2}
        if not local:
            verdict = "UNKNOWN"
            status = "unknown"
        elif symmetric and l1 == 2 and l2 >= 3:
            verdict = "WILD"
            status = "pass"
        else:
            verdict = "UNKNOWN"
            status = "fail"
        verdicts.append(verdict)
        rep.add(
            f"H e_{blk.index}",
            status,
            observed={"verdict": verdict, **hyp},
            expected="WILD" if local else "UNKNOWN (open)",
            citation="local symmetric, dim J/J^2 = 2, dim J^2/J^3 >= 3 implies wild"
            if local
            else "representation type of H(1, mu) e_i, i >= 1, is open",
        )
    rep.data["wildness"] = verdicts
    return rep
