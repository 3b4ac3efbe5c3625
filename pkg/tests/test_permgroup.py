import pytest
from hypothesis import given, strategies as st

from cosetcat.permgroup import (
    Permutation,
    compose,
    cyclic,
    dihedral,
    factorize,
    group_closure,
    is_transversal,
    parse_cycles,
    symmetric,
)

perms = st.integers(1, 9).flatmap(lambda n: st.permutations(range(n))).map(Permutation)


@given(perms)
def test_cycle_string_round_trip(p):
    assert Permutation.parse(p.cycle_string(), p.degree) == p


@given(perms)
def test_inverse(p):
    assert (p * p.inverse()).is_identity()
    assert (p.inverse() * p).is_identity()


def test_composition_is_right_to_left():
    a = Permutation.parse("(12)", 3)
    b = Permutation.parse("(23)", 3)
    # apply (23) first: 1 -> 1 -> 2
    assert (a * b)(0) == 1
    assert compose(a, b) == Permutation.parse("(123)", 3)


def test_parse_variants():
    assert parse_cycles("e") == []
    assert parse_cycles("()") == []
    assert parse_cycles("(12)(354)") == [[1, 2], [3, 5, 4]]
    assert parse_cycles("(1,10)(2, 3)", 10) == [[1, 10], [2, 3]]


@pytest.mark.parametrize("text", ["(12", "12)", "(1a)", "(12)x", "(1,b)"])
def test_parse_errors_report_position(text):
    with pytest.raises(ValueError, match="position"):
        parse_cycles(text)


def test_parse_rejects_bad_points():
    with pytest.raises(ValueError, match="outside"):
        Permutation.parse("(14)", 3)
    with pytest.raises(ValueError, match="repeated"):
        Permutation.parse("(12)(23)", 3)
    with pytest.raises(ValueError, match="commas"):
        parse_cycles("(12)", 10)


def test_group_orders():
    assert symmetric(3).order == 6
    assert symmetric(5).order == 120
    assert dihedral(6).order == 12
    assert cyclic(4).order == 4
    assert group_closure([Permutation.parse("(123)", 3)]).order == 3


def test_subgroups_and_stabilizer():
    X = symmetric(4)
    stab = X.stabilizer(0)
    assert len(stab) == 6
    assert X.is_subgroup(stab)
    assert not X.is_subgroup(X.indices(["e", "(12)", "(13)"]))
    assert sorted(X.closure_indices(X.indices(["(12)"])).tolist()) == sorted(X.indices(["e", "(12)"]).tolist())


def test_factorize_and_transversal():
    X = symmetric(3)
    G = X.indices(["e", "(12)"])
    M = X.indices(["e", "(13)", "(23)"])
    assert is_transversal(X, G, M)[0]
    for x in range(X.order):
        u, s = factorize(x, X, G, M)
        assert X.mul[u, s] == x
    ok, why = is_transversal(X, G, X.indices(["e", "(12)", "(13)"]))
    assert not ok and why
