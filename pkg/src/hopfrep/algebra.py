"""The algebras H(lambda, mu) (odd p) and B(V)#kG (p = 2).

Both are realised on a normal-form basis ``g^i * tail`` where ``tail`` runs
over ``a^j b^k`` (odd p, ``T = p^2`` tails) or over sixteen reduced words in
``a, b`` (p = 2).  Basis index = ``i * T + tail``.

The left action of each generator on the basis is computed by rewriting,
giving three ``dim x dim`` operator matrices.  Every other product is derived
from these: each basis element ``x`` factors as ``letter * child`` with
``child`` earlier in a fixed generator-word order, and multiplication by a
``g``-power is a cyclic shift of the basis.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import FieldError, RelationCheckFailed
from .field import Field, Scalar, field_make, pth_root
from .linalg import Subspace
from .report import Check, Report


class Variant(str, enum.Enum):
    CHAR_P = "CharPLifting"
    CHAR_2 = "Char2Nichols"


# p = 2 normal words, in the fixed basis order
CHAR2_WORDS = (
    "", "a", "b", "ab", "ba", "bb", "aba", "abb", "bab", "bbb",
    "abab", "abbb", "babb", "ababb", "babbb", "ababbb",
)
_CHAR2_RULES = (("aa", ""), ("bbbb", ""), ("bba", "abb+aba"), ("baba", "abab"))


def _rewrite_char2(word: str) -> dict[str, int]:
    """Reduce a word in a, b to a GF(2)-combination of normal words."""
    done: dict[str, int] = {}
    todo = [word]
    while todo:
        w = todo.pop()
        for lhs, rhs in _CHAR2_RULES:
            pos = w.find(lhs)
            if pos < 0:
                continue
            if rhs:
                for piece in rhs.split("+"):
                    todo.append(w[:pos] + piece + w[pos + len(lhs):])
            break
        else:
            done[w] = done.get(w, 0) ^ 1
    return {w: c for w, c in done.items() if c}


def char2_tables() -> tuple[np.ndarray, np.ndarray]:
    """16x16 GF(2) matrices of left multiplication by a and b on the normal words.

    Raises RelationCheckFailed if rewriting leaves the word list.
    """
    index = {w: k for k, w in enumerate(CHAR2_WORDS)}
    tabs = []
    for letter in "ab":
        M = np.zeros((16, 16), dtype=np.int64)
        for k, w in enumerate(CHAR2_WORDS):
            for r in _rewrite_char2(letter + w):
                if r not in index:
                    raise RelationCheckFailed("closure", f"{letter}*{w or '1'} reduces to {r}")
                M[index[r], k] ^= 1
        tabs.append(M)
    return tabs[0], tabs[1]


@dataclass(frozen=True)
class AlgebraSpec:
    variant: Variant
    p: int
    s: int
    t: int
    lam: Scalar
    mu: Scalar
    field: Field

    def __post_init__(self):
        if self.s < 1:
            raise FieldError("s must be at least 1")
        if self.t < 1 or self.t % self.p == 0:
            raise FieldError("t must be positive and prime to p")
        if self.variant == Variant.CHAR_2:
            if self.p != 2:
                raise FieldError("the char-2 variant requires p = 2")
            if self.lam or self.mu:
                raise FieldError("the char-2 variant has lambda = mu = 0")
        elif self.p == 2:
            raise FieldError("the lifting variant requires an odd prime")

    @classmethod
    def make(cls, p: int, s: int, t: int, lam=0, mu=0, field: Field | None = None) -> "AlgebraSpec":
        F = field if field is not None else field_make(p, t)
        variant = Variant.CHAR_2 if p == 2 else Variant.CHAR_P
        return cls(variant, p, s, t, F(lam), F(mu), F)

    @property
    def n(self) -> int:
        return self.p**self.s * self.t

    @property
    def tails(self) -> int:
        return 16 if self.variant == Variant.CHAR_2 else self.p * self.p

    @property
    def dim(self) -> int:
        return self.n * self.tails

    def with_params(self, lam, mu) -> "AlgebraSpec":
        return AlgebraSpec(self.variant, self.p, self.s, self.t, self.field(lam), self.field(mu), self.field)

    def label(self) -> str:
        return f"(p={self.p}, s={self.s}, t={self.t}, lambda={self.lam.literal()}, mu={self.mu.literal()})"


class Element:
    """An algebra element: a dense coefficient vector over the normal-form basis."""

    __slots__ = ("algebra", "vec")

    def __init__(self, algebra: "Algebra", vec):
        self.algebra = algebra
        v = np.asarray(vec, dtype=np.int64)
        v.setflags(write=False)
        self.vec = v

    @property
    def F(self) -> Field:
        return self.algebra.F

    def _other(self, other):
        if isinstance(other, Element):
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        o = self._other(other)
        return Element(self.algebra, self.F.add(self.vec, o.vec))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return Element(self.algebra, self.F.sub(self.vec, o.vec))

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return Element(self.algebra, self.F.neg(self.vec))

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.algebra.mul(self, other)
        c = self.F.code(other)
        return Element(self.algebra, self.F.mul(self.vec, c))

    def __rmul__(self, other):
        c = self.F.code(other)
        return Element(self.algebra, self.F.mul(self.vec, c))

    def __pow__(self, e: int):
        result = self.algebra.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra is other.algebra and bool(np.array_equal(self.vec, other.vec))
        if isinstance(other, (int, Scalar)):
            return self == self.algebra.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.vec.tobytes())

    def __bool__(self):
        return bool(np.any(self.vec))

    def support(self) -> list[tuple[int, Scalar]]:
        idx = np.flatnonzero(self.vec)
        return [(int(k), self.F.from_code(self.vec[k])) for k in idx]

    def terms(self) -> list[tuple[str, str]]:
        """Serialisation: (basis label, scalar literal) pairs."""
        return [(self.algebra.basis_label(k), c.literal()) for k, c in self.support()]

    def __repr__(self):
        parts = []
        for k, c in self.support():
            lab, c = self.algebra.basis_label(k), repr(c)
            if lab == "1":
                parts.append(c)
            else:
                parts.append(lab if c == "1" else f"({c}){lab}")
        return " + ".join(parts) if parts else "0"


class Algebra:
    """A built algebra: basis, generator operators and products."""

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.F = spec.field
        self.p = spec.p
        self.n = spec.n
        self.T = spec.tails
        self.dim = spec.dim
        self.variant = spec.variant
        if self.variant == Variant.CHAR_2:
            self._build_char2()
        else:
            self._build_charp()
        self._build_words()

    # -- construction ------------------------------------------------------------

    def index(self, i: int, *tail) -> int:
        """Basis index of ``g^i a^j b^k`` (odd p) or ``g^i w`` (p = 2, w a word)."""
        i %= self.n
        if self.variant == Variant.CHAR_2:
            (w,) = tail
            return i * self.T + CHAR2_WORDS.index(w)
        j, k = tail
        return (i * self.p + j) * self.p + k

    def unindex(self, x: int) -> tuple:
        i, tl = divmod(x, self.T)
        if self.variant == Variant.CHAR_2:
            return i, CHAR2_WORDS[tl]
        return (i,) + divmod(tl, self.p)

    def basis_label(self, x: int) -> str:
        parts = []
        if self.variant == Variant.CHAR_2:
            i, w = self.unindex(x)
            if i:
                parts.append("g" if i == 1 else f"g^{i}")
            if w:
                parts.append(_compress(w))
            return "·".join(parts) if parts else "1"
        i, j, k = self.unindex(x)
        for sym, e in (("g", i), ("a", j), ("b", k)):
            if e:
                parts.append(sym if e == 1 else f"{sym}^{e}")
        return " ".join(parts) if parts else "1"

    def _shift_g(self) -> np.ndarray:
        L = np.zeros((self.dim, self.dim), dtype=np.int64)
        src = np.arange(self.dim)
        L[(src + self.T) % self.dim, src] = 1
        return L

    def _build_charp(self) -> None:
        F, p, dim = self.F, self.p, self.dim
        lam, mu = self.spec.lam.code, self.spec.mu.code
        half = F(1) / F(2)
        La = np.zeros((dim, dim), dtype=np.int64)
        Lb = np.zeros((dim, dim), dtype=np.int64)

        def put(L, row, col, c):
            L[row, col] = F.add(L[row, col], c)

        for x in range(dim):
            i, j, k = self.unindex(x)
            # a * g^i a^j b^k
            self._put_a_power(La, x, i, j + 1, k, 1, lam, put)
            # b * g^i a^j b^k = (i + j/2) g^i a^(j+1) b^k + g^i a^j b^(k+1)
            coef = (F(i) + F(j) * half).code
            if coef:
                self._put_a_power(Lb, x, i, j + 1, k, coef, lam, put)
            if k + 1 < p:
                put(Lb, self.index(i, j, k + 1), x, 1)
            elif mu:
                put(Lb, self.index(i, j, 0), x, mu)
                put(Lb, self.index(i + p, j, 0), x, F.neg(mu))
        self.Lg = self._shift_g()
        self.La = La
        self.Lb = Lb
        self._half = half

    def _put_a_power(self, L, col, i, j, k, coef, lam, put) -> None:
        F, p = self.F, self.p
        if j < p:
            put(L, self.index(i, j, k), col, coef)
        elif lam:
            # a^p = lambda (1 - g^p)
            c = F.mul(coef, lam)
            put(L, self.index(i, 0, k), col, c)
            put(L, self.index(i + p, 0, k), col, F.neg(c))

    def _build_char2(self) -> None:
        ta, tb = char2_tables()
        self.char2_a, self.char2_b = ta, tb
        eye_n = np.eye(self.n, dtype=np.int64)
        La = np.kron(eye_n, ta)
        # b g^i w = g^i (b w) + i g^i (a w)
        parity = np.diag(np.arange(self.n) % 2)
        Lb = (np.kron(eye_n, tb) + np.kron(parity, ta)) % 2
        self.Lg = self._shift_g()
        self.La = La
        self.Lb = Lb

    def _build_words(self) -> None:
        """Factor every basis element as ``letter * child`` exactly."""
        parent = [None] * self.dim
        for x in range(self.dim):
            if x == 0:
                continue
            u = self.unindex(x)
            i = u[0]
            if i:
                parent[x] = ("g", self.index(i - 1, *u[1:]))
            elif self.variant == Variant.CHAR_2:
                w = u[1]
                parent[x] = (w[0], self.index(0, w[1:]))
            else:
                _, j, k = u
                if j:
                    parent[x] = ("a", self.index(0, j - 1, k))
                else:
                    parent[x] = ("b", self.index(0, 0, k - 1))
        ops = self.gen_ops
        for x in range(1, self.dim):
            letter, child = parent[x]
            col = ops[letter][:, child]
            expect = np.zeros(self.dim, dtype=np.int64)
            expect[x] = 1
            if not np.array_equal(col, expect):
                raise RelationCheckFailed("basis factorisation", self.basis_label(x))
        self.parent = parent
        # tails in an order where every child precedes its parent
        self.tail_order = sorted(range(self.T), key=lambda tl: self._tail_len(tl))

    def _tail_len(self, tl: int) -> int:
        if self.variant == Variant.CHAR_2:
            return len(CHAR2_WORDS[tl])
        j, k = divmod(tl, self.p)
        return j + k

    @property
    def gen_ops(self) -> dict[str, np.ndarray]:
        return {"g": self.Lg, "a": self.La, "b": self.Lb}

    # -- elements -------------------------------------------------------------------

    def element(self, vec) -> Element:
        return Element(self, vec)

    def basis_element(self, x: int) -> Element:
        v = np.zeros(self.dim, dtype=np.int64)
        v[x] = 1
        return Element(self, v)

    def monomial(self, i: int, *tail) -> Element:
        return self.basis_element(self.index(i, *tail))

    def scalar(self, c) -> Element:
        v = np.zeros(self.dim, dtype=np.int64)
        v[0] = self.F.code(c)
        return Element(self, v)

    @property
    def zero(self) -> Element:
        return Element(self, np.zeros(self.dim, dtype=np.int64))

    @property
    def one(self) -> Element:
        return self.scalar(1)

    @property
    def g(self) -> Element:
        return self.basis_element(self.index(1, "") if self.variant == Variant.CHAR_2 else self.index(1, 0, 0))

    @property
    def a(self) -> Element:
        return self.basis_element(self.index(0, "a") if self.variant == Variant.CHAR_2 else self.index(0, 1, 0))

    @property
    def b(self) -> Element:
        return self.basis_element(self.index(0, "b") if self.variant == Variant.CHAR_2 else self.index(0, 0, 1))

    def gen(self, name: str) -> Element:
        return {"g": self.g, "a": self.a, "b": self.b}[name]

    def word(self, text: str) -> Element:
        """Product of generators spelled as a string, e.g. ``"abab"``."""
        x = self.one
        for ch in reversed(text):
            x = self.lmul_gen(ch, x)
        return x

    # -- products ---------------------------------------------------------------

    def lmul_gen(self, gen: str, x: Element) -> Element:
        return Element(self, self.F.matmul(self.gen_ops[gen], x.vec))

    @cached_property
    def tail_ops(self) -> np.ndarray:
        """``LT[tl]``: left multiplication by the tail monomial ``tl`` (i = 0)."""
        F = self.F
        LT = np.zeros((self.T, self.dim, self.dim), dtype=np.int64)
        LT[0] = np.eye(self.dim, dtype=np.int64)
        for tl in self.tail_order[1:]:
            letter, child = self.parent[tl]
            LT[tl] = F.matmul(self.gen_ops[letter], LT[child])
        return LT

    def mul(self, x: Element, y: Element) -> Element:
        F = self.F
        X2 = x.vec.reshape(self.n, self.T)
        rows = np.flatnonzero(np.any(X2, axis=1))
        if rows.size == 0:
            return self.zero
        W = F.matmul(self.tail_ops.reshape(self.T * self.dim, self.dim), y.vec).reshape(self.T, self.dim)
        Z = F.matmul(X2[rows], W)
        out = np.zeros(self.dim, dtype=np.int64)
        for r, i in enumerate(rows):
            out = F.add(out, np.roll(Z[r], int(i) * self.T))
        return Element(self, out)

    def lmul_matrix(self, x: Element) -> np.ndarray:
        """Matrix of ``y -> x y``."""
        F = self.F
        X2 = x.vec.reshape(self.n, self.T)
        LT = self.tail_ops.reshape(self.T, self.dim * self.dim)
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i in np.flatnonzero(np.any(X2, axis=1)):
            Mi = F.matmul(X2[i], LT).reshape(self.dim, self.dim)
            out = F.add(out, np.roll(Mi, int(i) * self.T, axis=0))
        return out

    def rmul_matrix(self, y: Element) -> np.ndarray:
        """Matrix of ``x -> x y``."""
        F = self.F
        W = F.matmul(self.tail_ops.reshape(self.T * self.dim, self.dim), y.vec).reshape(self.T, self.dim)
        R = np.empty((self.dim, self.dim), dtype=np.int64)
        for i in range(self.n):
            R[:, i * self.T : (i + 1) * self.T] = np.roll(W, i * self.T, axis=1).T
        return R

    @cached_property
    def structure(self) -> np.ndarray:
        """``C[x, y, k]``: coefficient of basis k in ``x * y``.  Memory dim**3."""
        dt = np.uint8 if self.F.q <= 256 else np.int32
        C = np.empty((self.dim, self.dim, self.dim), dtype=dt)
        for x in range(self.dim):
            i, tl = divmod(x, self.T)
            C[x] = np.roll(self.tail_ops[tl], i * self.T, axis=0).T
        return C

    def span(self, elements: Iterable[Element]) -> Subspace:
        rows = [e.vec for e in elements]
        if not rows:
            return Subspace.zero(self.F, self.dim)
        return Subspace.span(self.F, np.vstack(rows), self.dim)

    def left_ideal(self, gens: Iterable[Element]) -> Subspace:
        from .linalg import spin

        rows = [e.vec for e in gens]
        if not rows:
            return Subspace.zero(self.F, self.dim)
        return spin(self.F, np.vstack(rows), [self.Lg, self.La, self.Lb], self.dim)

    def subspace_product(self, U: Subspace, V: Subspace) -> Subspace:
        """``span{u v}`` for u in U, v in V (naive, dim U * dim V products)."""
        rows = []
        for y in V.basis:
            R = self.rmul_matrix(Element(self, y))
            rows.append(self.F.matmul(U.basis, R.T))
        if not rows:
            return Subspace.zero(self.F, self.dim)
        return Subspace.span(self.F, np.vstack(rows), self.dim)

    def hom_image(self, images: dict[str, np.ndarray], anti: bool = False, x: Element | None = None):
        """Evaluate the (anti-)multiplicative extension of generator images.

        ``images`` maps each letter to a square matrix ``M`` so that the
        image of ``letter * child`` is ``M @ image(child)`` (or, for
        anti-maps, ``image(child) @ M``).  Returns the list of images of all
        basis elements as a ``(dim, r, c)`` array, or the image of ``x``.
        """
        F = self.F
        first = next(iter(images.values()))
        shape = first.shape
        out = np.zeros((self.dim,) + shape, dtype=np.int64)
        out[0] = np.eye(shape[0], dtype=np.int64)
        order = sorted(range(1, self.dim), key=self._word_len)
        for xb in order:
            letter, child = self.parent[xb]
            M = images[letter]
            out[xb] = F.matmul(out[child], M) if anti else F.matmul(M, out[child])
        if x is None:
            return out
        return F.sum(F.mul(x.vec[:, None, None], out), axis=0)

    def _word_len(self, x: int) -> int:
        i, tl = divmod(x, self.T)
        return i + self._tail_len(tl)

    def gen_matrix_images(self, images: dict[str, np.ndarray]) -> np.ndarray:
        """Stack of ``rho(basis_x)`` for a representation given on generators."""
        return self.hom_image(images)

    def g_power(self, k: int) -> Element:
        return self.basis_element((k % self.n) * self.T)


def _compress(w: str) -> str:
    out, k = [], 0
    while k < len(w):
        ch = w[k]
        r = k
        while r < len(w) and w[r] == ch:
            r += 1
        e = r - k
        out.append(ch if e == 1 else f"{ch}^{e}")
        k = r
    return "".join(out)


def algebra_build(spec: AlgebraSpec, check: bool = True) -> Algebra:
    A = Algebra(spec)
    if check:
        failed = relation_failures(spec, A.F, A.Lg, A.La, A.Lb)
        if failed:
            raise RelationCheckFailed(failed[0][0], failed[0][1])
    return A


# ---------------------------------------------------------------------------
# defining relations, shared by the regular representation and modules


def relation_checks(spec: AlgebraSpec, F: Field, G, A, B) -> list[tuple[str, bool]]:
    """Evaluate every defining relation on matrices G, A, B."""
    G, A, B = (np.asarray(M, dtype=np.int64) for M in (G, A, B))
    d = G.shape[0]
    eye = np.eye(d, dtype=np.int64)
    mm = F.matmul
    out = []
    out.append(("g^n = 1", np.array_equal(F.matpow(G, spec.n), eye)))
    out.append(("g^-1 a g = a", np.array_equal(mm(A, G), mm(G, A))))
    out.append(("g^-1 b g = a + b", np.array_equal(mm(B, G), mm(G, F.add(A, B)))))
    if spec.variant == Variant.CHAR_2:
        AB = mm(A, B)
        BA = mm(B, A)
        BB = mm(B, B)
        out.append(("a^2 = 0", not np.any(mm(A, A))))
        out.append(("b^4 = 0", not np.any(mm(BB, BB))))
        out.append(("baba = abab", np.array_equal(mm(BA, BA), mm(AB, AB))))
        out.append(("b^2 a = a b^2 + a b a", np.array_equal(mm(BB, A), F.add(mm(A, BB), mm(AB, A)))))
    else:
        p = spec.p
        gp = F.matpow(G, p)
        one_minus = F.sub(eye, gp)
        half = (F(1) / F(2)).code
        out.append(("a^p = lambda(1 - g^p)", np.array_equal(F.matpow(A, p), F.mul(one_minus, spec.lam.code))))
        out.append(("b^p = mu(1 - g^p)", np.array_equal(F.matpow(B, p), F.mul(one_minus, spec.mu.code))))
        lhs = mm(B, A)
        rhs = F.add(mm(A, B), F.mul(mm(A, A), half))
        out.append(("ba = ab + a^2/2", np.array_equal(lhs, rhs)))
    return [(name, bool(ok)) for name, ok in out]


def relation_failures(spec, F, G, A, B) -> list[tuple[str, str]]:
    return [(name, "matrices do not satisfy it") for name, ok in relation_checks(spec, F, G, A, B) if not ok]


# ---------------------------------------------------------------------------
# commutation coefficients


@dataclass(frozen=True)
class CoeffTable:
    kind: str
    m: int
    entries: tuple

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)


def commutation_coeffs(F: Field, p: int, kind: str, m: int) -> CoeffTable:
    """alpha_{m,i} (kind "AB") or beta_{m,i} (kind "GB") by the two-term recursion."""
    kind = kind.upper()
    if kind not in ("AB", "GB"):
        raise ValueError(f"unknown kind {kind!r}")
    if p == 2 or not 1 <= m <= p - 1:
        raise ValueError(f"m must lie in 1..{p - 1}")
    half = F(1) / F(2)
    row = [F(1), F(-1) * half] if kind == "AB" else [F(1), F(-1)]
    for r in range(1, m):
        new = [row[0]]
        for i in range(1, r + 1):
            w = F(i) * half if kind == "AB" else F(i + 1) * half
            new.append(row[i] - w * row[i - 1])
        top = F(r + 1) * half if kind == "AB" else F(r + 2) * half
        new.append(-top * row[r])
        row = new
    return CoeffTable(kind, m, tuple(row))


# ---------------------------------------------------------------------------
# verification suites


def _show(x: Element) -> str:
    return repr(x)


def _identity_check(name: str, lhs: Element, rhs: Element, claim: str) -> Check:
    ok = lhs == rhs
    return Check(
        name=name,
        status="pass" if ok else "fail",
        observed=_show(lhs),
        expected=_show(rhs),
        citation=claim,
    )


def verify_identities(A: Algebra) -> Report:
    spec, F = A.spec, A.F
    rep = Report("identities")
    g, a, b = A.g, A.a, A.b
    p, n = A.p, A.n
    # b g^i = i g^i a + g^i b
    bad = []
    for i in range(n):
        gi = A.g_power(i)
        lhs = b * gi
        rhs = F(i) * (gi * a) + gi * b
        if lhs != rhs:
            bad.append(i)
    rep.add(
        "b g^i expansion",
        not bad,
        observed=f"{n - len(bad)}/{n} exponents",
        expected=f"{n}/{n} exponents",
        citation="b g^i = i g^i a + g^i b",
    )
    central = A.g_power(p if spec.variant == Variant.CHAR_P else 2)
    Lc = A.lmul_matrix(central)
    Rc = A.rmul_matrix(central)
    rep.add(
        f"g^{p if spec.variant == Variant.CHAR_P else 2} central",
        bool(np.array_equal(Lc, Rc)),
        observed="commutes with every basis element" if np.array_equal(Lc, Rc) else "fails to commute",
        expected="commutes with every basis element",
        citation="g^p is central (g^2 for p = 2)",
    )
    if spec.variant == Variant.CHAR_2:
        return rep
    for m in range(1, p):
        al = commutation_coeffs(F, p, "AB", m)
        be = commutation_coeffs(F, p, "GB", m)
        lhs = a * b**m
        rhs = A.zero
        for i in range(m + 1):
            rhs = rhs + al[i] * (b ** (m - i) * a ** (i + 1))
        rep.checks.append(_identity_check(f"a b^{m} expansion", lhs, rhs, "a b^m = sum_i alpha_{m,i} b^(m-i) a^(i+1)"))
        lhs = g * b**m
        rhs = A.zero
        for i in range(m + 1):
            rhs = rhs + be[i] * (b ** (m - i) * g * a**i)
        rep.checks.append(_identity_check(f"g b^{m} expansion", lhs, rhs, "g b^m = sum_i beta_{m,i} b^(m-i) g a^i"))
        closed = [
            ("alpha", 1, al[1], -F(m) / F(2)),
            ("beta", 1, be[1], -F(m)),
        ]
        if m >= 2:
            closed += [
                ("alpha", 2, al[2], F(m * (m - 1)) / F(4)),
                ("beta", 2, be[2], F(3 * m * (m - 1)) / F(4)),
            ]
        for nm, i, got, want in closed:
            rep.add(
                f"{nm}_{{{m},{i}}}",
                got == want,
                observed=got.literal(),
                expected=want.literal(),
                citation=f"closed form of {nm}_{{m,{i}}}",
            )
    if spec.lam == 1 and spec.mu == 0:
        bp1 = b ** (p - 1)
        for m in range(p):
            lhs = b**m * a * bp1
            coef = F(math.factorial(m)) / F(2**m)
            rhs = coef * (a ** (m + 1) * bp1)
            rep.checks.append(
                _identity_check(f"b^{m} a b^{p - 1} reduction", lhs, rhs, "b^m a b^(p-1) = (m!/2^m) a^(m+1) b^(p-1) in H(1,0)")
            )
    if spec.mu and p in (3, 5, 7, 11):
        b1 = b + pth_root(spec.mu) * (g - 1)
        val = b1**p
        rep.add(
            "b1^p = 0",
            not val,
            observed=_show(val),
            expected="0",
            citation="(b + mu^(1/p)(g - 1))^p = 0 for p in {3,5,7,11}",
        )
    return rep


def verify_associativity(A: Algebra, mode: str = "full", samples: int = 100_000, seed: int = 0) -> Report:
    if mode not in ("full", "sampled"):
        raise ValueError(f"mode must be full or sampled, not {mode!r}")
    rep = Report("associativity")
    F = A.F
    C = A.structure
    dim = A.dim
    exact_int = int(C.max(initial=0)) < F.p
    if mode == "full":
        Cf = C.reshape(dim, dim * dim)
        Cg = C.reshape(dim * dim, dim)
        first = None
        for x in range(dim):
            Cx = C[x]
            lhs = F.matmul(Cx, Cf) if not exact_int else _fmm(Cx, Cf, F.p)
            rhs = F.matmul(Cg, Cx) if not exact_int else _fmm(Cg, Cx, F.p)
            lhs = lhs.reshape(dim, dim, dim)
            rhs = rhs.reshape(dim, dim, dim)
            if not np.array_equal(lhs, rhs):
                y, z, _ = np.argwhere(lhs != rhs)[0]
                first = (x, int(y), int(z))
                break
        total = dim**3
    else:
        rng = np.random.default_rng(seed)
        trip = rng.integers(0, dim, size=(samples, 3))
        first = None
        for start in range(0, samples, 5000):
            blk = trip[start : start + 5000]
            x, y, z = blk[:, 0], blk[:, 1], blk[:, 2]
            lhs = _gather_apply(F, C, C[x, y, :], None, z)
            rhs = _gather_apply(F, C, C[y, z, :], x, None)
            diff = np.flatnonzero(np.any(lhs != rhs, axis=1))
            if diff.size:
                r = diff[0]
                first = (int(x[r]), int(y[r]), int(z[r]))
                break
        total = samples
    if first is None:
        rep.add(
            f"associativity ({mode})",
            True,
            observed=f"{total} triples",
            expected="(xy)z = x(yz)",
            citation="rewriting system consistent with the normal-form basis",
        )
    else:
        x, y, z = first
        rep.add(
            f"associativity ({mode})",
            False,
            observed="(" + ", ".join(A.basis_label(k) for k in first) + ")",
            expected="(xy)z = x(yz)",
            citation="rewriting system consistent with the normal-form basis",
        )
    return rep


def _fmm(a, b, p):
    return np.fmod(a.astype(np.float64) @ b.astype(np.float64), p).astype(np.int64)


def _gather_apply(F: Field, C, coeffs, left, right) -> np.ndarray:
    """Rows ``sum_k coeffs[r, k] * C[k, right[r]]`` or ``C[left[r], k]``."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    rows, ks = np.nonzero(coeffs)
    vals = coeffs[rows, ks]
    if right is not None:
        gathered = C[ks, right[rows], :].astype(np.int64)
    else:
        gathered = C[left[rows], ks, :].astype(np.int64)
    contrib = F.mul(vals[:, None], gathered)
    return F.segment_sum(contrib, rows, coeffs.shape[0])
