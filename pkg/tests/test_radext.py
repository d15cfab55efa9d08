import importlib

import numpy as np
import pytest

from desk import algebra, block_list, rad
from hopfrep.algebra import AlgebraSpec, algebra_build
from hopfrep.errors import CensusIncomplete, UnsupportedParameterRegion
from hopfrep.radext import (
    cover_generator,
    ext_dim,
    jacobson_radical,
    projective_cover,
    projective_idempotent,
    radical,
    verify_claimed_radical_layers,
    verify_projectives,
    verify_radical,
    wildness_report,
)
from hopfrep.linalg import quotient_dim

radext_mod = importlib.import_module("hopfrep.radext")


def test_radical_dimensions():
    assert jacobson_radical(algebra("A", 0, 0)).dim == 52
    assert jacobson_radical(algebra("A", 1, 0)).dim == 44
    assert jacobson_radical(algebra("D")).dim == 93
    with pytest.raises(CensusIncomplete):
        jacobson_radical(algebra_build(AlgebraSpec.make(3, 1, 2, 2, 1)))


def test_generators_in_or_out_of_radical():
    A = algebra_build(AlgebraSpec.make(3, 1, 1, 1, 1))
    J = jacobson_radical(A)
    assert J.contains(A.a.vec) and J.contains(A.b.vec)
    B = algebra("A", 1, 1)
    J = rad("A", 1, 1).J
    assert not J.contains(B.a.vec) and not J.contains(B.b.vec)
    rep = verify_radical(B, rad("A", 1, 1))
    assert rep.ok and rep["a, b not in J"].status == "pass"


def test_radical_report_and_chain():
    for name, lam, mu in [("A", 0, 1), ("A", 1, 0), ("D", 0, 0), ("E", 0, 0)]:
        A, rd = algebra(name, lam, mu), rad(name, lam, mu)
        rep = verify_radical(A, rd)
        assert rep.ok, rep.failures
        dims = rep.data["filtration"].dims
        assert all(x > y for x, y in zip(dims, dims[1:]))


def test_quotient_dim_on_block():
    rd = rad("A", 0, 1)
    b = block_list("A", 0, 1)[1]
    filt = rd.filtration(b)
    assert quotient_dim(filt.chain[0], filt.chain[1]) == 2


def test_claimed_layers():
    rep = verify_claimed_radical_layers(algebra("A", 0, 1), rad("A", 0, 1), block_list("A", 0, 1))
    assert rep["N = J^2 on H e_1"].status == "pass"
    assert rep["M = J^3 on H e_1"].status == "pass"
    rep = verify_claimed_radical_layers(algebra("D"), rad("D"), block_list("D"))
    assert rep.ok
    assert rep["dim J^2/J^3 on H e_0"].observed == 3


def test_claimed_layers_detect_wrong_set(monkeypatch):
    real = radext_mod._claimed_sets

    def drop_a(A, blk):
        N, M = real(A, blk)
        return N[:-1], M

    monkeypatch.setattr(radext_mod, "_claimed_sets", drop_a)
    rep = verify_claimed_radical_layers(algebra("A", 0, 1), rad("A", 0, 1), block_list("A", 0, 1))
    assert rep["N = J^2 on H e_0"].status == "fail"


def test_projective_dims():
    A = algebra("A", 1, 0)
    rd, bl = rad("A", 1, 0), block_list("A", 1, 0)
    P0 = projective_cover(A, rd.census[0][0], bl[0])
    P1 = projective_cover(A, rd.census[1][0], bl[1])
    assert (P0.dim, P1.dim) == (27, 9)
    assert bl[1].dim // P1.dim == 3
    B = algebra("A", 0, 1)
    rdb, blb = rad("A", 0, 1), block_list("A", 0, 1)
    assert projective_cover(B, rdb.census[1][0], blb[1]).dim == 27


def test_projective_idempotent_at_3_1_2():
    A = algebra("A", 1, 0)
    e1 = block_list("A", 1, 0)[1].idempotent
    e_hat, alpha = projective_idempotent(A, 1, e1)
    assert alpha == 1
    assert e_hat == A.a * A.b**2 * e1
    assert e_hat * e_hat == e_hat


def test_b0_kills_block():
    A = algebra("A", 1, 1)
    e1 = block_list("A", 1, 1)[1].idempotent
    y, shape = cover_generator(A, 1, e1)
    assert shape == "H b0^(p-1) e_i"
    b0 = A.b + (A.F.xi - 1)
    assert not (b0**3 * e1)
    rep = verify_projectives(A, rad("A", 1, 1), block_list("A", 1, 1))
    assert rep.ok


def test_unsupported_region(monkeypatch):
    monkeypatch.setattr(radext_mod, "SMALL_PRIMES_B1", ())
    A = algebra("B", 1, 1)
    with pytest.raises(UnsupportedParameterRegion):
        cover_generator(A, 1, block_list("B", 1, 1)[1].idempotent)
    rep = verify_projectives(A, rad("B", 1, 1), block_list("B", 1, 1))
    assert rep["P(S_1)"].status == "unsupported"
    assert rep.ok


def test_ext_examples():
    D = algebra("D")
    rd, bl = rad("D"), block_list("D")
    covers = {lab.index: projective_cover(D, lab, b) for (lab, _), b in zip(rd.census, bl)}
    assert ext_dim(D, rd, covers[0], rd.census[0][1]) == 2
    assert ext_dim(D, rd, covers[0], rd.census[1][1]) == 0
    A = algebra("A", 1, 1)
    rda, bla = rad("A", 1, 1), block_list("A", 1, 1)
    P0 = projective_cover(A, rda.census[0][0], bla[0])
    assert ext_dim(A, rda, P0, rda.census[0][1]) == 2


def test_wildness_verdicts():
    rep = wildness_report(algebra("A", 0, 1), rad("A", 0, 1), block_list("A", 0, 1))
    assert rep.data["wildness"] == ["WILD", "WILD"]
    rep = wildness_report(algebra("A", 1, 1), rad("A", 1, 1), block_list("A", 1, 1))
    assert rep.data["wildness"] == ["WILD", "UNKNOWN"]
    assert rep["H e_1"].status == "unknown"
    # without symmetry the criterion cannot be invoked
    rep = wildness_report(algebra("D"), rad("D"), block_list("D"), symmetric=False)
    assert rep.data["wildness"] == ["UNKNOWN"] * 3
    assert not rep.ok


def test_radical_from_scratch_is_deterministic():
    a = radical(algebra("A", 0, 1))
    b = radical(algebra("A", 0, 1))
    assert a.J == b.J
    assert np.array_equal(a.gens, b.gens)
