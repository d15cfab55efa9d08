import itertools

import numpy as np
import pytest

from hopfrep.errors import FieldError
from hopfrep.field import Field, field_make, is_irreducible, parse_scalar, pth_root


def naive_mul(x, y, modulus, p):
    """Schoolbook product of coefficient lists reduced by a monic modulus."""
    m = len(modulus) - 1
    prod = [0] * (2 * m)
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            prod[i + j] = (prod[i + j] + a * b) % p
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            for k in range(m + 1):
                prod[d - m + k] = (prod[d - m + k] - c * modulus[k]) % p
    return prod[:m]


@pytest.mark.parametrize("p,t", [(2, 3), (3, 4), (2, 7), (3, 8), (5, 3)])
def test_multiplication_matches_schoolbook(p, t):
    F = field_make(p, t)
    for x in range(F.q):
        for y in range(F.q):
            want = naive_mul(F.from_code(x).coeffs, F.from_code(y).coeffs, list(F.modulus), p)
            assert F.from_code(F.mul(x, y)).coeffs == want


def test_field_make_examples():
    F = field_make(3, 2)
    assert (F.q, F.m) == (3, 1)
    assert F.xi == 2
    F = field_make(3, 1)
    assert F.xi == 1
    F = field_make(2, 3)
    assert (F.q, F.m) == (4, 2)
    w = F.xi
    assert w**3 == 1 and w != 1
    assert w * w + w + 1 == 0


def test_xi_has_exact_order():
    for p, t in [(3, 2), (5, 2), (2, 3), (3, 4), (2, 5), (7, 3)]:
        F = field_make(p, t)
        assert F.xi**t == 1
        assert all(F.xi**d != 1 for d in range(1, t))


def test_modulus_is_first_irreducible():
    F = field_make(3, 4)
    assert list(F.modulus) == [1, 0, 1]
    # every monic quadratic before it has a root
    for c0, c1 in itertools.product(range(3), repeat=2):
        if (c1, c0) < (0, 1):
            assert any((x * x + c1 * x + c0) % 3 == 0 for x in range(3))
    assert is_irreducible([1, 1, 1], 2)
    assert not is_irreducible([1, 0, 1], 2)


@pytest.mark.parametrize("p,t", [(4, 1), (1, 1), (3, 3), (3, 6)])
def test_field_make_rejects(p, t):
    with pytest.raises(FieldError):
        field_make(p, t)


def test_pth_root():
    F = field_make(3, 2)
    assert pth_root(F(0)) == 0
    assert pth_root(F(2)) == 2
    F4 = field_make(2, 3)
    w = F4.xi
    assert pth_root(w) == w + 1
    for x in F4.elements():
        assert pth_root(x) ** 2 == x


def test_scalar_arithmetic():
    F = field_make(5, 2)
    x, y = F(3), F(4)
    assert x + y == 2
    assert x - y == 4
    assert x * y == 2
    assert x / y == F(3) * F(4).inverse()
    assert F(4).inverse() == 4
    assert -x == 2
    assert 1 - x == 3
    with pytest.raises(ZeroDivisionError):
        F(0).inverse()


def test_scalar_literals():
    F = field_make(2, 3)
    assert parse_scalar(F, "1,1") == F.xi + 1
    assert parse_scalar(F, "1") == 1
    assert F([0, 1]).literal() == "0,1"
    with pytest.raises(FieldError):
        parse_scalar(F, "1,2,3")
    with pytest.raises(FieldError):
        parse_scalar(F, "x")


def test_scalars_are_immutable():
    F = field_make(3, 2)
    with pytest.raises(AttributeError):
        F(1).code = 2


def test_matmul_matches_loop():
    rng = np.random.default_rng(3)
    for F in (field_make(3, 2), field_make(2, 3), field_make(3, 4)):
        a = rng.integers(0, F.q, size=(5, 7))
        b = rng.integers(0, F.q, size=(7, 4))
        want = np.zeros((5, 4), dtype=np.int64)
        for i in range(5):
            for j in range(4):
                acc = 0
                for k in range(7):
                    acc = F.add(acc, F.mul(a[i, k], b[k, j]))
                want[i, j] = acc
        assert np.array_equal(F.matmul(a, b), want)


def test_non_default_modulus():
    F = Field(3, [2, 2, 1])
    assert F.q == 9
    for x in range(9):
        for y in range(9):
            want = naive_mul(F.from_code(x).coeffs, F.from_code(y).coeffs, [2, 2, 1], 3)
            assert F.from_code(F.mul(x, y)).coeffs == want
