import numpy as np
import pytest

from conftest import double, hopf
from cosetcat.cat_d import (
    TableDModule,
    braiding,
    braiding_inverse,
    braiding_via_hat,
    conjugation_dobject,
    from_x_action,
    is_dmorphism,
    tensor_d,
    unit_dobject,
    validate_dobject,
    verify_braided,
    verify_hexagons,
    verify_tensor_hat,
    ygrade,
)
from cosetcat.linear import identity_map


def copy_object(V, **changes):
    fields = dict(
        grades=V.grades, ggrades=V.ggrades, act_T=V.act_T, act_C=V.act_C,
        mact_T=V.mact_T, mact_C=V.mact_C,
    )
    fields.update(changes)
    return TableDModule(V.ds, labels=[V.label(i) for i in range(V.dim)], name=V.name + "*", **fields)


def test_unit_object_is_valid():
    ds = double("d6")
    k = unit_dobject(ds)
    assert validate_dobject(k).passed
    with pytest.raises(ValueError, match="identity"):
        unit_dobject(double("ex1"))


@pytest.mark.parametrize("name", ["ex3", "d6", "s5"])
def test_conjugation_object(name):
    ds = double(name)
    V = conjugation_dobject(ds)
    assert V.dim == ds.n
    assert np.array_equal(ygrade(V, np.arange(V.dim)), np.arange(ds.n))


def test_d_and_its_square_are_valid():
    D = hopf("d6").module
    assert D.dim == 144
    assert validate_dobject(D).passed
    assert validate_dobject(tensor_d(D, D)).passed


def test_ygrade_multiplicative():
    ds = double("d6")
    V = conjugation_dobject(ds)
    VV = tensor_d(V, V)
    i, j = np.divmod(np.arange(VV.dim), V.dim)
    assert np.array_equal(ygrade(VV, np.arange(VV.dim)), ds.circ[ygrade(V, i), ygrade(V, j)])


def test_tensor_with_unit_keeps_grades():
    ds = double("d6")
    V = conjugation_dobject(ds)
    Vk = tensor_d(V, unit_dobject(ds))
    idx = np.arange(V.dim)
    assert np.array_equal(Vk.grade(idx), V.grade(idx))
    assert np.array_equal(Vk.ggrade(idx), V.ggrade(idx))


def test_corrupted_ggrade_is_rejected():
    V = conjugation_dobject(double("d6"))
    gg = V.ggrades.copy()
    gg[5] = V.cs.gmul[gg[5], 1]
    rep = validate_dobject(copy_object(V, ggrades=gg))
    assert not rep.passed
    assert all(c.witness for c in rep.failures)


def test_from_x_action_checks():
    ds = double("d6")
    V = conjugation_dobject(ds)
    y = np.arange(ds.n)
    T = ds.tilde_ract.T[:, :, None]
    with pytest.raises(ValueError, match="not an object"):
        from_x_action(ds, np.roll(y, 1), T, np.ones_like(T))
    assert from_x_action(ds, y, T, np.ones_like(T)).dim == V.dim


def test_braiding_trivial_grades_is_transposition():
    ds = double("d6")
    k = unit_dobject(ds)
    V = conjugation_dobject(ds)
    psi = braiding(k, V)
    for j in range(V.dim):
        assert psi.images(np.array([j]))[0][0, 0] == j
    psi = braiding(V, k)
    e = ds.base.e_m
    for i in np.flatnonzero(V.grade(np.arange(V.dim)) == e):
        assert psi.images(np.array([i]))[0][0, 0] == V.act_images(np.array([i]), ds.base.g_id)[0][0, 0]


def test_braiding_forms_agree_and_invert():
    V = conjugation_dobject(double("d6"))
    VV = tensor_d(V, V)
    psi = braiding(V, V)
    assert psi.difference(braiding_via_hat(V, V)) is None
    assert (braiding_inverse(V, V) @ psi).difference(identity_map(VV)) is None
    assert is_dmorphism(psi).passed


def test_braided_coherence_on_conjugation_objects():
    ds = double("s5")
    V = conjugation_dobject(ds)
    rep = verify_hexagons(V, V, unit_dobject(ds))
    assert rep.passed
    rep = verify_braided((conjugation_dobject(double("d6")),) * 3)
    assert rep.passed, [c.line() for c in rep.failures]


def test_tensor_hat_action():
    D = hopf("ex3").module
    assert verify_tensor_hat(D, D).passed


def test_corrupted_mact_breaks_hexagon():
    V = conjugation_dobject(double("d6"))
    mT = V.mact_T.copy()
    s = V.cs.m_index("x")
    mT[s, [0, 1]] = mT[s, [1, 0]]
    bad = copy_object(V, mact_T=mT)
    rep = verify_hexagons(bad, bad, bad)
    assert not rep.passed
    assert rep.failures[0].witness.startswith("fails on")
