import json

import numpy as np
import pytest

from conftest import double, hopf
from cosetcat.cat_d import is_dmorphism
from cosetcat.hopf_d import build_D, spot_check_hopf, verify_hopf
from cosetcat.cli import main


def test_dimensions_and_preconditions():
    assert hopf("ex3").dim == 36
    assert hopf("d6").dim == 144
    with pytest.raises(ValueError, match="no left division"):
        build_D(double("ex2"))
    with pytest.raises(ValueError, match="identity"):
        build_D(double("ex1"))


def test_grade_equation():
    D = hopf("d6")
    ds = D.ds
    assert np.array_equal(ds.circ[D.y_of, D.ygrades], ds.tilde_ract[D.y_of, D.x_of])


def test_coproduct_of_grouplike_deltas():
    D = hopf("d6")
    X = D.cs.group
    e = X.identity
    for y in range(D.n):
        expected = {}
        for z in range(D.n):
            w = X.mul[X.inv[z], y]
            expected[(D.index(w, e), D.index(z, e))] = 1
        assert D.coproduct({D.index(y, e): 1}) == expected


def test_coproduct_support_and_unit():
    D = hopf("d6")
    T1, T2 = D.coproduct_images(np.arange(D.dim))
    assert T1.shape == (D.dim, D.n) and (T1 >= 0).all() and (T2 >= 0).all()
    I = D.unit_vector()
    assert D.coproduct(I) == {(i, j): 1 for i in I for j in I}


def test_antipode_on_commuting_pairs():
    D = hopf("d6")
    X = D.cs.group
    for y in range(D.n):
        for x in range(D.n):
            if X.mul[x, y] == X.mul[y, x]:
                assert D.S({D.index(y, x): 1}) == {D.index(X.inv[y], X.inv[x]): 1}
    assert D.S(D.unit_vector()) == D.unit_vector()


def test_product_and_counit():
    D = hopf("d6")
    X = D.cs.group
    e = X.identity
    y, x = D.cs.x_index("y"), D.cs.x_index("x")
    w = D.cs.x_index("x")
    assert D.ds.tilde_ract[y, x] != w
    assert D.product({D.index(y, x): 1}, {D.index(w, e): 1}) == {}
    for x in range(D.n):
        assert D.counit({D.index(e, x): 1}) == 1
    assert D.counit(D.unit_vector()) == 1
    h = {D.index(3, 5): 2, D.index(7, 1): -1}
    assert D.product(D.unit_vector(), h) == h == D.product(h, D.unit_vector())


def test_product_commuting_same_delta():
    D = hopf("d6")
    X = D.cs.group
    e = X.identity
    for y in range(D.n):
        for z in range(D.n):
            if X.mul[z, y] == X.mul[y, z]:
                assert D.product({D.index(y, e): 1}, {D.index(y, z): 1}) == {D.index(y, z): 1}


def test_maps_are_dmorphisms():
    D = hopf("ex3")
    for f in (D.mu(), D.unit_map(), D.counit_map()):
        assert is_dmorphism(f).passed, f.name


def test_verify_hopf_ex3():
    rep = verify_hopf(hopf("ex3"))
    assert rep.passed, [c.line() for c in rep.failures]


def test_wrong_sign_antipode_is_caught(monkeypatch):
    D = hopf("ex3")
    good = D.antipode
    monkeypatch.setattr(D, "antipode", lambda: good().scaled(-1))
    rep = verify_hopf(D, include_g=False)
    failed = {c.name for c in rep.failures}
    assert "(f) mu(I x S)Delta = I eps" in failed
    assert "(f) mu(S x I)Delta = I eps" in failed


def test_swapped_coproduct_is_caught(monkeypatch):
    D = hopf("ex3")
    good = D.coproduct_images
    monkeypatch.setattr(D, "coproduct_images", lambda idx: good(idx)[::-1])
    rep = verify_hopf(D, include_g=False)
    assert any(c.name.startswith("(c)") for c in rep.failures)


def test_spot_check_s5():
    rep = spot_check_hopf(hopf("s5"), count=30, rng=np.random.default_rng(3))
    assert rep.passed


def test_export_schema(capsys):
    assert main(["export", "--preset", "ex3", "--what", "D"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["basis"]) == 36 and data["basis"][0] == ["e", "e"]
    assert all(len(row) == 4 and row[3] == [1, 1] for row in data["mu"])
    assert all(len(terms) == 6 for _, terms in data["delta"])
    assert [row[0] for row in data["S"]] == list(range(36))
