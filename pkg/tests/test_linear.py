import numpy as np
from hypothesis import given, settings, strategies as st

from cosetcat.linear import identity_map, nullspace, set_threads, stored_map


class Space:
    cs = None

    def __init__(self, dim):
        self.dim = dim
        self.name = f"k{dim}"


def dense_map(A, name="A"):
    A = np.asarray(A, dtype=np.int64)
    src, tgt = Space(A.shape[1]), Space(A.shape[0])
    T = np.tile(np.arange(A.shape[0]), (A.shape[1], 1))
    return stored_map(src, tgt, T, A.T.copy(), name)


mats = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)
).map(np.array)


@settings(max_examples=50)
@given(mats, mats)
def test_compose_and_tensor_match_dense(A, B):
    if A.shape != B.shape:
        return
    f, g = dense_map(A), dense_map(B)
    assert np.array_equal((f @ g).dense(), A @ B)
    # tensor index i * dim(W) + j matches numpy's kron
    assert np.array_equal(f.tensor(g).dense(), np.kron(A, B))


def test_difference_and_threads():
    A = np.eye(5, dtype=np.int64)
    B = A.copy()
    B[3, 2] = 1
    f, g = dense_map(A), dense_map(B)
    assert f.difference(f) is None
    assert f.difference(g) == 2
    assert set_threads(2) == 2
    try:
        assert f.difference(g, chunk=1) == 2
    finally:
        set_threads(1)


def test_identity_and_call():
    V = Space(4)
    idm = identity_map(V)
    assert idm({1: 3, 2: -1}) == {1: 3, 2: -1}
    assert (idm - idm)({0: 1}) == {}
    assert np.array_equal(idm.stored().dense(), np.eye(4, dtype=np.int64))


def test_nullspace_exact():
    basis = nullspace([{0: 1, 1: 1}, {1: 2, 2: -2}], 3)
    assert len(basis) == 1
    v = basis[0]
    assert v.get(0, 0) + v.get(1, 0) == 0 and v.get(1, 0) == v.get(2, 0)
