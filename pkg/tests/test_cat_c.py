import dataclasses

import numpy as np
import pytest

from conftest import system
from cosetcat.algebra_h import build_H
from cosetcat.cat_c import (
    associator,
    associator_inverse,
    coevaluation,
    dual,
    evaluation,
    is_morphism,
    m_regular_object,
    random_morphism,
    tensor,
    unit_maps,
    unit_object,
    validate_object,
    verify_naturality,
    verify_pentagon,
    verify_snake,
    verify_triangle,
)
from cosetcat.linear import identity_map, stored_map


def reg(name):
    cs = system(name)
    return cs, m_regular_object(cs)


def test_regular_object_ex1():
    cs, R = reg("ex1")
    assert R.dim == 3
    s = cs.m_index("(13)")
    assert R.grade(np.array([s]))[0] == s
    assert validate_object(R).passed


def test_regular_action_ex2_swaps():
    cs, R = reg("ex2")
    u = cs.g_index("(12)")
    assert R.act_images(np.array([cs.m_index("(13)")]), u)[0][0, 0] == cs.m_index("(23)")
    assert np.array_equal(R.action_matrix(cs.g_id), np.eye(3, dtype=np.int64))


def test_tensor_grade_ex1():
    cs, R = reg("ex1")
    RR = tensor(R, R)
    i = cs.m_index("(13)") * 3 + cs.m_index("(12)")
    assert cs.m_label(RR.grade(np.array([i]))[0]) == "(23)"
    assert validate_object(RR).passed


def test_scrambled_map_is_not_a_morphism():
    cs, R = reg("ex1")
    T = np.array([[1], [0], [2]])
    f = stored_map(R, R, T, np.ones_like(T), "swap")
    rep = is_morphism(f)
    assert not rep.passed
    assert "grade not preserved" in rep.failures[0].witness
    assert is_morphism(identity_map(R)).passed


def test_associator_ex1_acts_by_12():
    cs, R = reg("ex1")
    phi = associator(R, R, R)
    u = cs.g_index("(12)")
    for a in range(3):
        for bc in range(9):
            T, _ = phi.images(np.array([a * 9 + bc]))
            b = R.act_images(np.array([a]), u)[0][0, 0]
            assert T[0, 0] == b * 9 + bc
    assert (associator_inverse(R, R, R) @ phi).difference(identity_map(phi.source)) is None
    assert is_morphism(phi).passed


def test_unit_maps():
    cs, R = reg("ex1")
    l, r = unit_maps(R)
    u = cs.g_index("(12)")
    for s in range(3):
        assert l.images(np.array([s]))[0][0, 0] == cs.ract[s, u]
        assert r.images(np.array([s]))[0][0, 0] == s
    assert is_morphism(l).passed and is_morphism(r).passed
    _, R2 = reg("ex2")
    l2, _ = unit_maps(R2)
    assert l2.difference(identity_map(R2)) is None


@pytest.mark.parametrize("name", ["ex1", "ex2", "ex3", "d6", "s5"])
def test_coherence_on_regular(name):
    cs, R = reg(name)
    rep = verify_pentagon(R, R, R, R)
    verify_triangle(R, R, rep)
    verify_snake(R, rep)
    assert rep.passed, str(rep.failures)


def test_corrupted_tau_breaks_pentagon():
    cs = system("ex1")
    tau = cs.tau.copy()
    tau[0, 1] = cs.g_id
    bad = dataclasses.replace(cs, tau=tau)
    R = m_regular_object(bad)
    rep = verify_pentagon(R, R, R, R)
    assert not rep.passed
    assert rep.failures[0].witness


def test_naturality_random_maps():
    cs, R = reg("d6")
    rng = np.random.default_rng(1)
    H = build_H(cs).module
    f = random_morphism(R, R, rng, name="f")
    g = random_morphism(H, H, rng, name="g")
    assert is_morphism(g).passed
    assert verify_naturality(f, g, f).passed


def test_dual_grades_ex2():
    cs, R = reg("ex2")
    Rd = dual(R)
    s = cs.m_index("(13)")
    assert cs.m_label(Rd.grade(np.array([s]))[0]) == "(13)"
    assert validate_object(Rd).passed


def test_eval_and_coev_ex2():
    cs, R = reg("ex2")
    Rd = dual(R)
    ev = evaluation(R, Rd)
    assert ev({1 * 3 + 1: 1}) == {0: 1}
    assert ev({1 * 3 + 2: 1}) == {}
    co = coevaluation(R, Rd)
    one = co({0: 1})
    assert len(one) == 3
    u = cs.g_index("(12)")
    RRd = co.target
    acted = {}
    for i, c in one.items():
        T, C = RRd.act_images(np.array([i]), u)
        for t, a in zip(T[0], C[0]):
            if t >= 0:
                acted[int(t)] = acted.get(int(t), 0) + c * int(a)
    assert acted == one
    assert is_morphism(ev).passed and is_morphism(co).passed


def test_snake_on_H_d6():
    H = build_H(system("d6")).module
    assert verify_snake(H).passed


def test_unit_object():
    cs = system("ex1")
    k = unit_object(cs)
    assert k.dim == 1 and k.grade(np.array([0]))[0] == cs.e_m
