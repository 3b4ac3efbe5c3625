import dataclasses

import numpy as np

from conftest import double, hopf
from cosetcat.cat_d import conjugation_dobject, ygrade
from cosetcat.double import hat_action, hat_images, verify_double, y_factorize


def test_circ_d6():
    ds = double("d6")
    cs = ds.base
    x = cs.x_index("x")
    assert ds.circ[x, x] == cs.x_index("x^2")
    yx = cs.x_index("yx")
    assert ds.tilde_tau[yx, x] == cs.x_index("x^2")


def test_tilde_ract_fixes_commuting_elements():
    ds = double("d6")
    X = ds.group
    for y in range(ds.n):
        for x in range(ds.n):
            if X.mul[x, y] == X.mul[y, x]:
                assert ds.tilde_ract[y, x] == y


def test_identities():
    ds = double("s5")
    assert ds.ey == ds.group.identity and ds.fy == ds.group.identity
    assert np.all(ds.circ[ds.ey] == np.arange(ds.n))


def test_y_factorize():
    ds = double("d6")
    cs = ds.base
    assert y_factorize(ds, ds.ey) == (cs.g_id, cs.e_in_m)
    x = cs.x_index("x")
    assert y_factorize(ds, x) == (cs.g_id, cs.m_index("x"))
    y = cs.x_index("yx^5")
    gbar, s = y_factorize(ds, y)
    assert cs.g_label(gbar) == "yx^4" and cs.m_label(s) == "x"
    assert ds.y_of(gbar, s) == y


def test_verify_double_presets():
    for name in ("ex1", "ex2", "ex3", "d6"):
        assert verify_double(double(name)).passed, name


def test_corrupted_circ_is_caught():
    ds = double("ex2")
    circ = ds.circ.copy()
    circ[[1, 2]] = circ[[2, 1]]
    rep = verify_double(dataclasses.replace(ds, circ=circ))
    assert not rep.passed
    assert all(c.witness for c in rep.failures)


def test_hat_action_basics():
    ds = double("d6")
    cs = ds.base
    V = conjugation_dobject(ds)
    idx = np.arange(V.dim)
    T, C = hat_images(V, idx, ds.ey)
    assert np.array_equal(T[:, :1], idx[:, None])
    for u in range(cs.nG):
        T1, _ = hat_images(V, idx, cs.g_elems[u])
        T2, _ = V.act_images(idx, u)
        assert np.array_equal(T1, T2)


def test_hat_action_law_on_D():
    D = hopf("d6").module
    ds = D.ds
    X = ds.group
    rng = np.random.default_rng(2)
    for i in rng.choice(D.dim, 20, replace=False):
        for x1, x2 in rng.integers(0, ds.n, (10, 2)):
            lhs = hat_action(D, hat_action(D, {int(i): 1}, x1), x2)
            assert lhs == hat_action(D, {int(i): 1}, X.mul[x1, x2])
            (j,) = lhs
            assert ygrade(D, np.array([j]))[0] == ds.tilde_ract[ygrade(D, np.array([i]))[0], X.mul[x1, x2]]


def test_hat_action_sparse_vectors():
    ds = double("ex3")
    V = conjugation_dobject(ds)
    v = {0: 2, 3: -1}
    assert hat_action(V, v, ds.ey) == v
    assert hat_action(V, {}, 1) == {}
