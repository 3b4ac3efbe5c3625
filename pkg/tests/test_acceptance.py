"""Acceptance criteria, one test each; the summary prints one line per criterion."""

import time

import numpy as np
import pytest

from conftest import double, hopf, system
from cosetcat.algebra_h import build_H, verify_H
from cosetcat.cat_c import (
    associator,
    m_regular_object,
    random_morphism,
    tensor,
    validate_object,
    verify_naturality,
    verify_pentagon,
    verify_snake,
    verify_triangle,
)
from cosetcat.cat_d import conjugation_dobject, verify_braided, verify_hat_action
from cosetcat.cli import tables
from cosetcat.double import verify_double
from cosetcat.hopf_d import spot_check_hopf, verify_hopf
from cosetcat.linear import Morphism, identity_map
from cosetcat.permgroup import symmetric
from cosetcat.report import Report
from cosetcat.transversal import (
    cayley_embed,
    classify,
    reconstruct_group,
    search_transversals,
    verify_matched_pair,
)

# the published tables, rows s and columns t in the published order
PUBLISHED_TABLES = {
    "ex1": (
        ["(12)", "(13)", "(23)"],
        [["(12)", "(13)", "(23)"], ["(23)", "(12)", "(13)"], ["(13)", "(23)", "(12)"]],
        [["(12)"] * 3] * 3,
    ),
    "ex2": (
        ["e", "(13)", "(23)"],
        [["e", "(13)", "(23)"], ["(13)", "e", "(13)"], ["(23)", "(23)", "e"]],
        [["e", "e", "e"], ["e", "e", "(12)"], ["e", "(12)", "e"]],
    ),
    "s5": (
        ["e", "a", "b", "c", "d"],
        [
            ["e", "a", "b", "c", "d"],
            ["a", "e", "c", "d", "b"],
            ["b", "c", "d", "a", "e"],
            ["c", "d", "e", "b", "a"],
            ["d", "b", "a", "e", "c"],
        ],
        [
            ["e", "e", "e", "e", "e"],
            ["e", "(345)", "(2534)", "(2345)", "(2453)"],
            ["e", "(34)", "(354)", "(2345)", "(354)"],
            ["e", "(45)", "(354)", "(254)", "(2453)"],
            ["e", "(35)", "(2534)", "(354)", "(235)"],
        ],
    ),
}
# the one published entry that contradicts the published dot table
KNOWN_ERRATUM = "s5 tau(b,b): computed (243), printed (354)"

S3_G = ["e", "(12)"]


def all_s3_systems():
    X = symmetric(3)
    return search_transversals(X, X.indices(S3_G)).systems


def table_mismatches():
    out = []
    for name, (labels, dot, tau) in PUBLISHED_TABLES.items():
        t = tables(system(name))
        assert t["M"] == labels, name
        for i, s in enumerate(labels):
            for j, u in enumerate(labels):
                if t["dot"][i][j] != dot[i][j]:
                    out.append(f"{name} {s}.{u}: computed {t['dot'][i][j]}, printed {dot[i][j]}")
                if t["tau"][i][j] != tau[i][j]:
                    out.append(f"{name} tau({s},{u}): computed {t['tau'][i][j]}, printed {tau[i][j]}")
    # D6: x.x = e, tau(x,x) = x^2, x |> y = yx^4 with the 3-cycle (y, yx^4, yx^2)
    cs = system("d6")
    t = tables(cs, actions=True)
    x = t["M"].index("x")
    checks = {
        "d6 x.x": (t["dot"][x][x], "e"),
        "d6 tau(x,x)": (t["tau"][x][x], "x^2"),
        "d6 tau(e,x)": (t["tau"][0][x], "e"),
        "d6 tau(x,e)": (t["tau"][x][0], "e"),
        "d6 tau(e,e)": (t["tau"][0][0], "e"),
    }
    lact = dict(zip(t["G"], t["lact"][x]))
    for a, b in [("y", "yx^4"), ("yx^4", "yx^2"), ("yx^2", "y"), ("e", "e"), ("x^2", "x^2"), ("x^4", "x^4")]:
        checks[f"d6 x|>{a}"] = (lact[a], b)
    out += [f"{k}: computed {v}, printed {w}" for k, (v, w) in checks.items() if v != w]
    return out


def test_c01_table_reproduction(criterion):
    t0 = time.perf_counter()
    bad = table_mismatches()
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    ok = not bad
    criterion(1, "table reproduction", ok, "; ".join(bad) + f"; {elapsed:.2f}s")
    if bad == [KNOWN_ERRATUM]:
        pytest.xfail(f"the printed S5 table has one inconsistent entry: {KNOWN_ERRATUM}")
    assert not bad


def test_s5_printed_tau_bb_contradicts_printed_dot():
    # b b must equal tau(b, b) (b . b); with b . b = d as printed, only (243) works
    cs = system("s5")
    X = cs.group
    b, d = X.idx("(14253)"), X.idx("(13245)")
    bb = X.mul[b, b]
    assert X.mul[X.idx("(243)"), d] == bb
    assert X.mul[X.idx("(354)"), d] != bb
    assert X.idx("(354)") in set(cs.g_elems.tolist())


def test_s5_tables_agree_apart_from_one_entry():
    _, dot, tau = PUBLISHED_TABLES["s5"]
    t = tables(system("s5"))
    assert t["dot"] == dot
    diffs = [(i, j) for i in range(5) for j in range(5) if t["tau"][i][j] != tau[i][j]]
    assert diffs == [(2, 2)]


def test_c02_classification(criterion):
    t0 = time.perf_counter()
    c = {n: classify(system(n)) for n in ("ex1", "ex2", "ex3", "s5")}
    ok = (
        c["ex1"].has_right_division
        and c["ex1"].has_left_division
        and not c["ex1"].has_right_identity
        and not c["ex1"].dot_is_group
        and not c["ex2"].has_left_division
        and c["ex2"].has_two_sided_identity
        and c["ex3"].is_subgroup
        and c["s5"].has_right_division
        and c["s5"].has_left_division
        and c["s5"].has_two_sided_identity
        and not c["s5"].dot_is_group
    )
    elapsed = time.perf_counter() - t0
    criterion(2, "classification claims", ok and elapsed < 1.0, f"{elapsed:.2f}s")
    assert ok
    assert elapsed < 1.0


def test_c03_matched_pair(criterion):
    t0 = time.perf_counter()
    systems = all_s3_systems() + [system("d6"), system("s5")]
    assert len(systems) == 10
    reports = [verify_matched_pair(cs) for cs in systems]
    elapsed = time.perf_counter() - t0
    names = {c.name for c in reports[0].checks}
    expected = {
        "action_composite", "ract_dot", "lact_product", "ract_action", "cocycle", "twisted_associativity",
        "left_identity", "unit_ract", "unit_lact", "lact_identity", "ract_identity", "tau_unit",
        "lact_unit_inverse", "ract_unit_inverse",
    }
    ok = expected <= names and all(r.passed for r in reports)
    criterion(3, "matched-pair identities", ok and elapsed < 5.0, f"10 systems, {elapsed:.2f}s")
    assert ok, [str(r) for r in reports if not r.passed]
    assert elapsed < 5.0


def test_c04_cayley_round_trip(criterion):
    t0 = time.perf_counter()
    op = system("ex1").dot
    cs = cayley_embed(op)
    ok = np.array_equal(cs.dot, op) and verify_matched_pair(cs).passed
    elapsed = time.perf_counter() - t0
    criterion(4, "Cayley round trip", ok and elapsed < 1.0, f"{elapsed:.2f}s")
    assert ok
    assert elapsed < 1.0


def test_c05_reconstruction(criterion):
    t0 = time.perf_counter()
    systems = all_s3_systems() + [system("d6")]
    reps = [reconstruct_group(cs).report for cs in systems]
    elapsed = time.perf_counter() - t0
    ok = len(systems) == 9 and all(r.passed for r in reps)
    criterion(5, "group reconstruction", ok and elapsed < 1.0, f"9 systems, {elapsed:.2f}s")
    assert ok
    assert elapsed < 1.0


def test_c06_tensor_category_coherence(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(0)
    reps = []
    for name in ("ex1", "ex2", "ex3", "d6"):
        cs = system(name)
        R = m_regular_object(cs)
        RR = tensor(R, R)
        rep = Report(name)
        validate_object(RR, rep)
        verify_pentagon(R, R, R, R, rep)
        verify_pentagon(RR, R, RR, R, rep)
        verify_triangle(R, R, rep)
        verify_triangle(RR, R, rep)
        f = random_morphism(R, R, rng, name="f")
        g = random_morphism(RR, RR, rng, name="g")
        verify_naturality(f, g, f, rep)
        verify_snake(R, rep)
        verify_snake(RR, rep)
        reps.append(rep)
    elapsed = time.perf_counter() - t0
    skipped = [c.name for r in reps for c in r.checks if c.status == "skip"]
    ok = all(r.passed for r in reps) and not skipped
    criterion(6, "tensor category coherence", ok and elapsed < 30.0, f"{elapsed:.2f}s")
    assert ok, [str(r) for r in reps if not r.passed] + skipped
    assert elapsed < 30.0


def test_c07_algebra_H(criterion):
    t0 = time.perf_counter()
    reps = [verify_H(build_H(system(n))) for n in ("d6", "ex3", "s5")]
    elapsed = time.perf_counter() - t0
    ok = all(r.passed for r in reps)
    criterion(7, "algebra H axioms", ok and elapsed < 60.0, f"exhaustive incl. S5, {elapsed:.2f}s")
    assert ok, [str(r) for r in reps if not r.passed]
    assert elapsed < 60.0


def test_c08_double(criterion):
    t0 = time.perf_counter()
    reps = []
    for n in ("ex3", "d6", "s5"):
        reps.append(verify_double(double(n)))
    for n in ("ex3", "d6"):
        reps.append(verify_hat_action(hopf(n).module))
    ds5 = double("s5")
    reps.append(verify_hat_action(conjugation_dobject(ds5)))
    reps.append(verify_hat_action(hopf("s5").module, pairs=2000, rng=np.random.default_rng(0)))
    elapsed = time.perf_counter() - t0
    ok = all(r.passed for r in reps)
    criterion(8, "double construction and X-action", ok and elapsed < 120.0, f"{elapsed:.2f}s")
    assert ok, [str(r) for r in reps if not r.passed]
    assert reps[2]["twisted_associativity"].checked == 120 ** 3
    assert elapsed < 120.0


@pytest.mark.slow
def test_c09_braided_coherence(criterion):
    t0 = time.perf_counter()
    reps = []
    for n in ("ex3", "d6"):
        D = hopf(n).module
        reps.append(verify_braided((D, D, D)))
    elapsed = time.perf_counter() - t0
    ok = all(r.passed for r in reps)
    names = {c.name for c in reps[1].checks}
    ok = ok and {"hexagon", "hexagon_inverse", "Psi via hat action", "Psi^-1 Psi = I", "Psi Psi^-1 = I"} <= names
    criterion(9, "braided coherence on D", ok and elapsed < 600.0, f"{elapsed:.1f}s")
    assert ok, [str(r) for r in reps if not r.passed]
    assert reps[1]["hexagon"].checked == 144 ** 3
    assert elapsed < 600.0


@pytest.mark.slow
def test_c10_hopf_axioms(criterion):
    t0 = time.perf_counter()
    reps = [verify_hopf(hopf(n)) for n in ("ex3", "d6")]
    spot = spot_check_hopf(hopf("s5"), count=100, rng=np.random.default_rng(0))
    elapsed = time.perf_counter() - t0
    hard = [c for r in reps for c in r.checks if not c.name.startswith("(g)")]
    ok = all(c.ok for c in hard) and spot.passed
    criterion(10, "Hopf axioms on D", ok and elapsed < 900.0, f"{elapsed:.1f}s")
    assert ok, [str(r) for r in reps] + [str(spot)]
    assert reps[1]["(c) coproduct_consistency"].checked == 144 ** 3
    assert elapsed < 900.0


def test_c11_degenerate_control(criterion):
    t0 = time.perf_counter()
    cs = system("ex3")
    problems = []
    if not np.all(cs.tau == cs.g_id):
        problems.append("tau is not trivial")
    if cs.f_m != cs.g_id:
        problems.append("f_m is not the identity")

    def rebracket(phi):
        return Morphism(phi.source, phi.target, identity_map(phi.source).images, "plain")

    R = m_regular_object(cs)
    H = build_H(cs)
    D = hopf("ex3")
    for objs in [(R, R, R), (H.module,) * 3, (D.module,) * 3]:
        phi = associator(*objs)
        if phi.difference(rebracket(phi)) is not None:
            problems.append(f"associator on {objs[0].name} is not plain re-bracketing")
    for name, alg in (("H", H), ("D", D)):
        mu = alg.mu()
        I = identity_map(alg.module)
        if (mu @ mu.tensor(I)).difference(mu @ I.tensor(mu)) is not None:
            problems.append(f"{name} is not associative in the untwisted sense")
    delta = D.delta()
    I = identity_map(D.module)
    if delta.tensor(I).__matmul__(delta).difference(I.tensor(delta) @ delta) is not None:
        problems.append("D is not coassociative in the untwisted sense")
    if not np.all(double("ex3").tilde_tau == cs.group.identity):
        problems.append("tilde tau is not trivial")
    elapsed = time.perf_counter() - t0
    ok = not problems
    criterion(11, "degenerate control", ok and elapsed < 10.0, f"{elapsed:.2f}s")
    assert ok, problems
    assert elapsed < 10.0
