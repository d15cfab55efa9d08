import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from desk import algebra, hopf
from hopfrep.field import field_make
from hopfrep.linalg import Subspace, batch_invertible
from hopfrep.reps import simple_modules, tensor_module

FIELDS = [field_make(5, 2), field_make(2, 3), field_make(3, 4), field_make(2, 7)]


@st.composite
def scalars(draw, F):
    return F.from_code(draw(st.integers(0, F.q - 1)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(F, data):
    x, y, z = (data.draw(scalars(F)) for _ in range(3))
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    if x:
        assert x * x.inverse() == 1
    assert x ** F.q == x


def sparse_element(data, A, terms=3):
    F = A.F
    vec = np.zeros(A.dim, dtype=np.int64)
    for _ in range(terms):
        k = data.draw(st.integers(0, A.dim - 1))
        vec[k] = data.draw(st.integers(1, F.q - 1))
    return A.element(vec)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([("A", 1, 1), ("A", 0, 1), ("D", 0, 0)]), st.data())
def test_ring_laws(inst, data):
    A = algebra(*inst)
    x, y, z = (sparse_element(data, A) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([("A", 1, 1), ("D", 0, 0)]), st.data())
def test_bialgebra_and_antipode_laws(inst, data):
    A, H = algebra(*inst), hopf(*inst)
    x, y = (sparse_element(data, A, terms=2) for _ in range(2))
    assert H.delta(x * y) == H.delta(x) * H.delta(y)
    assert H.counit(x * y) == H.counit(x) * H.counit(y)
    assert H.antipode(x * y) == H.antipode(y) * H.antipode(x)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([("A", 1, 0), ("A", 1, 1), ("A", 0, 1), ("D", 0, 0)]), st.data())
def test_tensor_products_are_modules(inst, data):
    census = simple_modules(algebra(*inst))
    i = data.draw(st.integers(0, len(census) - 1))
    j = data.draw(st.integers(0, len(census) - 1))
    T = tensor_module(census[i][1], census[j][1])
    assert T.dim == census[i][1].dim * census[j][1].dim


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIELDS[:3]), st.data())
def test_span_is_invariant_under_row_operations(F, data):
    rows = data.draw(st.integers(1, 4))
    cols = data.draw(st.integers(1, 5))
    M = np.array(data.draw(st.lists(st.integers(0, F.q - 1), min_size=rows * cols, max_size=rows * cols))).reshape(rows, cols)
    P = np.array(data.draw(st.lists(st.integers(0, F.q - 1), min_size=rows * rows, max_size=rows * rows))).reshape(rows, rows)
    U = Subspace.span(F, M)
    assert Subspace.span(F, U.basis) == U
    if batch_invertible(F, P[None])[0]:
        assert Subspace.span(F, F.matmul(P, M)) == U
    else:
        assert Subspace.span(F, F.matmul(P, M)).dim <= U.dim
