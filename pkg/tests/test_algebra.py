import numpy as np
import pytest

from desk import algebra
from rewriting import Rewriter
from hopfrep.algebra import (
    CHAR2_WORDS,
    Algebra,
    AlgebraSpec,
    Variant,
    algebra_build,
    commutation_coeffs,
    relation_checks,
    verify_associativity,
    verify_identities,
)
from hopfrep.errors import FieldError, RelationCheckFailed


def word_of(A, x):
    if A.variant == Variant.CHAR_2:
        i, w = A.unindex(x)
        return "g" * i + w
    i, j, k = A.unindex(x)
    return "g" * i + "a" * j + "b" * k


def oracle_vector(A, rw, word):
    vec = np.zeros(A.dim, dtype=np.int64)
    for w, c in rw.normal(word).items():
        i = w.count("g")
        rest = w.replace("g", "")
        if A.variant == Variant.CHAR_2:
            x = A.index(i, rest)
        else:
            x = A.index(i, rest.count("a"), rest.count("b"))
            assert rest == "a" * rest.count("a") + "b" * rest.count("b")
        vec[x] = A.F.add(vec[x], c % A.p)
    return vec


@pytest.mark.parametrize(
    "name,lam,mu",
    [("A", 0, 0), ("A", 1, 1), ("A", 0, 1), ("A", 2, 1), ("C", 1, 1), ("B", 1, 0), ("D", 0, 0), ("E", 0, 0)],
)
def test_products_match_rewriting_oracle(name, lam, mu):
    A = algebra(name, lam, mu) if lam in (0, 1) else algebra_build(AlgebraSpec.make(3, 1, 2, lam, mu))
    rw = Rewriter(A.p, A.n, lam, mu, char2=A.variant == Variant.CHAR_2)
    rng = np.random.default_rng(7)
    pairs = rng.integers(0, A.dim, size=(300, 2))
    for x, y in pairs:
        got = A.mul(A.basis_element(int(x)), A.basis_element(int(y))).vec
        want = oracle_vector(A, rw, word_of(A, int(x)) + word_of(A, int(y)))
        assert np.array_equal(got, want), (A.basis_label(int(x)), A.basis_label(int(y)))


def test_char2_normal_words_are_the_basis():
    rw = Rewriter(2, 1, char2=True)
    seen = set()
    for w in CHAR2_WORDS:
        assert rw.normal(w) == {w: 1}
    for length in range(1, 6):
        for k in range(2**length):
            w = "".join("ab"[(k >> d) & 1] for d in range(length))
            seen |= set(rw.normal(w))
    assert seen <= set(CHAR2_WORDS)
    assert len(CHAR2_WORDS) == 16


def test_dimensions():
    assert algebra_build(AlgebraSpec.make(3, 1, 2)).dim == 54
    assert algebra_build(AlgebraSpec.make(2, 1, 3)).dim == 96
    assert algebra_build(AlgebraSpec.make(3, 2, 2)).dim == 162


def test_spec_validation():
    with pytest.raises(FieldError):
        AlgebraSpec.make(2, 1, 3, 1, 0)
    with pytest.raises(FieldError):
        AlgebraSpec.make(3, 0, 2)
    with pytest.raises(FieldError):
        AlgebraSpec.make(3, 1, 3)
    spec = AlgebraSpec.make(3, 1, 2, 1, 2)
    assert spec.n == 6 and spec.tails == 9 and spec.dim == 54
    assert spec.variant == Variant.CHAR_P
    assert AlgebraSpec.make(2, 1, 1).variant == Variant.CHAR_2


def test_left_multiplication_examples():
    A = algebra("A")
    assert A.lmul_gen("b", A.g * A.a) == A.g * A.a * A.b
    assert A.b * A.a == A.a * A.b + 2 * A.a**2
    A1 = algebra("A", 1, 0)
    assert A1.b * A1.a**2 == 1 - A1.g**3 + A1.a**2 * A1.b
    D = algebra("D")
    assert D.b * D.word("bab") == D.word("ab") * D.word("bb") + D.word("abab")
    assert D.b * D.word("aba") == D.word("abab")
    assert A.one * A.b == A.b


def test_element_arithmetic():
    A = algebra("A", 1, 1)
    x = A.g + 2 * A.a
    assert x - x == A.zero
    assert x * A.one == x
    assert (x**3) == x * x * x
    assert A.g ** A.n == 1
    assert A.monomial(1, 2, 0) == A.g * A.a**2
    assert A.basis_label(A.index(2, 1, 2)) == "g^2 a b^2"
    assert repr(A.zero) == "0"


def test_commutation_coeffs_examples():
    A = algebra("A")
    F = A.F
    half = F(1) / F(2)
    assert list(commutation_coeffs(F, 3, "AB", 2)) == [F(1), F(-1), half]
    assert list(commutation_coeffs(F, 3, "GB", 2)) == [F(1), F(-2), F(3) * half]
    assert list(commutation_coeffs(F, 3, "AB", 1)) == [F(1), -half]
    with pytest.raises(ValueError):
        commutation_coeffs(F, 3, "AB", 3)
    with pytest.raises(ValueError):
        commutation_coeffs(F, 3, "XY", 1)


def test_identities_report():
    rep = verify_identities(algebra("A", 1, 0))
    assert rep.ok
    assert "g^3 central" in rep
    assert rep["b^2 a b^2 reduction"].status == "pass"
    A = algebra("A")
    assert A.b * A.g**2 == 2 * A.g**2 * A.a + A.g**2 * A.b


def test_associativity_modes():
    A = algebra("A", 1, 1)
    assert (A.b * A.a) * A.a == A.b * (A.a * A.a)
    assert verify_associativity(A, mode="sampled", samples=2000, seed=1).ok
    with pytest.raises(ValueError):
        verify_associativity(A, mode="bogus")


def test_relation_checks_on_regular_rep():
    for name in ("A", "D"):
        A = algebra(name)
        assert all(ok for _, ok in relation_checks(A.spec, A.F, A.Lg, A.La, A.Lb))


def test_build_detects_corrupted_operator(monkeypatch):
    orig = Algebra._build_charp

    def broken(self):
        orig(self)
        self.Lb = self.Lb.copy()
        self.Lb[0, 0] = 1

    monkeypatch.setattr(Algebra, "_build_charp", broken)
    with pytest.raises(RelationCheckFailed) as info:
        algebra_build(AlgebraSpec.make(3, 1, 2))
    assert info.value.relation


def test_naive_product_agrees_with_ideal_spin():
    from hopfrep.radext import left_ideal_product

    from desk import rad

    A = algebra("A", 0, 1)
    rd = rad("A", 0, 1)
    assert A.subspace_product(rd.J, rd.J) == left_ideal_product(A, rd.gens, rd.J) == rd.power(2)
