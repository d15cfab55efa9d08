import importlib

import pytest

from desk import algebra
from hopfrep.blocks import block_basis, blocks, central_idempotents, g_nilpotency, verify_block_decomposition
from hopfrep.errors import DimensionMismatch

blocks_mod = importlib.import_module("hopfrep.blocks")


def test_idempotents_at_3_1_2():
    A = algebra("A")
    e0, e1 = central_idempotents(A)
    g3 = A.g**3
    assert e0 == 2 + 2 * g3
    assert e1 == 2 + g3
    assert e0 * e1 == 0
    assert e0 + e1 == 1
    assert e0 * e0 == e0


def test_trivial_t():
    E = algebra("E")
    assert central_idempotents(E) == [E.one]
    (b,) = blocks(E)
    assert b.dim == E.dim


@pytest.mark.parametrize("name,dim", [("A", 27), ("B", 81), ("C", 125), ("D", 32)])
def test_block_dims(name, dim):
    bl = blocks(algebra(name))
    assert [b.dim for b in bl] == [dim] * len(bl)
    assert sum(b.dim for b in bl) == algebra(name).dim


def test_block_report():
    A = algebra("A", 0, 1)
    rep = verify_block_decomposition(A)
    assert rep.ok
    assert rep["g-eigenvalue on H e_1"].status == "pass"
    b1 = rep.data["blocks"][1]
    assert g_nilpotency(A, b1) == 3
    D = algebra("D")
    rep = verify_block_decomposition(D)
    assert rep.ok and len(rep.data["blocks"]) == 3


def test_dimension_mismatch(monkeypatch):
    monkeypatch.setattr(blocks_mod, "expected_block_dim", lambda A: 1)
    with pytest.raises(DimensionMismatch):
        block_basis(algebra("A"), 0)
    rep = verify_block_decomposition(algebra("A"))
    assert rep["central idempotents"].status == "fail"
