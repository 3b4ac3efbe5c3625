"""The tensor category of M-graded right G-modules.

An object is a vector space with a basis of homogeneous vectors: each basis
vector ``xi`` carries a grade ``<xi>`` in ``M``, and ``G`` acts on the right
with ``<xi <| u> = <xi> <| u``.  Tensor products are graded by ``.`` and
acted on through ``|>``; the associator twists the first factor by ``tau``.

Objects expose vectorized accessors over arrays of basis indices:

* ``grade(idx)`` -> local ``M`` indices
* ``act_images(idx, u)`` -> ELL block for ``xi_idx <| u`` (``u`` scalar or per-row)

Basis vectors of ``V (x) W`` are pairs ``(i, j)`` numbered ``i * dim(W) + j``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .linear import Morphism, combine, flatten, canonical_rows, identity_map, nullspace, stored_map, to_ell
from .report import Report
from .transversal import CosetSystem

__all__ = [
    "GradedModule",
    "TableModule",
    "TensorModule",
    "m_regular_object",
    "unit_object",
    "tensor",
    "tensor_like",
    "tensor_maps",
    "validate_object",
    "is_morphism",
    "associator",
    "associator_inverse",
    "unit_maps",
    "unit_maps_inverse",
    "verify_pentagon",
    "verify_triangle",
    "verify_naturality",
    "dual",
    "evaluation",
    "coevaluation",
    "verify_snake",
    "hom_basis",
    "random_morphism",
    "first_difference",
]


def first_difference(A: tuple, B: tuple):
    """Row index where two ELL blocks of equal row count disagree, or ``None``."""
    r1, t1, c1 = flatten(*A)
    r2, t2, c2 = flatten(*B)
    r, _, _ = canonical_rows(np.concatenate([r1, r2]), np.concatenate([t1, t2]), np.concatenate([c1, -c2]))
    return None if r.size == 0 else int(r.min())


class GradedModule:
    """Common interface of objects; subclasses supply the data."""

    cs: CosetSystem
    dim: int
    name: str = "V"

    def grade(self, idx) -> np.ndarray:
        raise NotImplementedError

    def act_images(self, idx, u):
        raise NotImplementedError

    def label(self, i: int) -> str:
        return f"{self.name}[{int(i)}]"

    def action(self, u: int) -> Morphism:
        return Morphism(self, self, lambda idx: self.act_images(idx, u), f"<|{self.cs.g_label(u)}")

    def action_matrix(self, u: int) -> np.ndarray:
        """Dense matrix of ``<| u`` acting on basis columns."""
        return self.action(u).dense()

    def materialize(self) -> "TableModule":
        """Copy into a stored table, worthwhile for small objects used repeatedly."""
        idx = np.arange(self.dim)
        T, C = [], []
        for u in range(self.cs.nG):
            t, c = self.act_images(idx, u)
            T.append(t)
            C.append(c)
        K = max(t.shape[1] for t in T)
        T = np.stack([np.pad(t, ((0, 0), (0, K - t.shape[1])), constant_values=-1) for t in T])
        C = np.stack([np.pad(c, ((0, 0), (0, K - c.shape[1]))) for c in C])
        return TableModule(self.cs, self.grade(idx), T, C, [self.label(i) for i in idx], self.name)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, dim={self.dim})"


class TableModule(GradedModule):
    """An object with stored grades and action tables ``act_T[u, i, k]``."""

    def __init__(self, cs, grades, act_T, act_C, labels: Sequence[str] | None = None, name: str = "V"):
        self.cs = cs
        self.grades = np.asarray(grades, dtype=np.int64)
        self.dim = len(self.grades)
        self.act_T = np.asarray(act_T, dtype=np.int64)
        self.act_C = np.asarray(act_C, dtype=np.int64)
        self.labels = list(labels) if labels is not None else None
        self.name = name

    def grade(self, idx):
        return self.grades[idx]

    def act_images(self, idx, u):
        idx = np.asarray(idx, dtype=np.int64)
        u = np.broadcast_to(np.asarray(u, dtype=np.int64), idx.shape)
        return self.act_T[u, idx], self.act_C[u, idx]

    def label(self, i):
        return self.labels[int(i)] if self.labels is not None else super().label(i)


def permutation_module(cs, grades, perm: np.ndarray, labels=None, name="V") -> TableModule:
    """Object whose action permutes basis vectors: ``perm[u, i]`` is the image of ``i``."""
    perm = np.asarray(perm, dtype=np.int64)
    return TableModule(cs, grades, perm[:, :, None], np.ones(perm.shape + (1,), dtype=np.int64), labels, name)


def m_regular_object(cs: CosetSystem) -> TableModule:
    """Basis ``v_s`` for ``s`` in ``M``, grade ``s``, ``v_s <| u = v_{s <| u}``."""
    labels = [f"v{cs.m_label(s)}" for s in range(cs.nM)]
    return permutation_module(cs, np.arange(cs.nM), cs.ract.T, labels, "R")


def unit_object(cs: CosetSystem) -> TableModule:
    """The unit ``k``: one basis vector of grade ``e_m`` with trivial action."""
    return permutation_module(cs, [cs.e_m], np.zeros((cs.nG, 1), dtype=np.int64), ["1"], "k")


class TensorModule(GradedModule):
    """``A (x) B``, computed on demand from the factors."""

    _GRADE_CACHE = 4_000_000

    def __init__(self, A: GradedModule, B: GradedModule):
        if A.cs is not B.cs:
            raise ValueError("tensor factors live over different systems")
        self.cs = A.cs
        self.left, self.right = A, B
        self.dim = A.dim * B.dim
        self.name = f"({A.name}{B.name})"
        self._grades = None

    def split(self, idx):
        return np.divmod(np.asarray(idx, dtype=np.int64), self.right.dim)

    def grade(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        if self._grades is None and self.dim <= self._GRADE_CACHE:
            i, j = self.split(np.arange(self.dim))
            self._grades = self.cs.dot[self.left.grade(i), self.right.grade(j)]
        if self._grades is not None:
            return self._grades[idx]
        i, j = self.split(idx)
        return self.cs.dot[self.left.grade(i), self.right.grade(j)]

    def act_images(self, idx, u):
        i, j = self.split(idx)
        u = np.broadcast_to(np.asarray(u, dtype=np.int64), i.shape)
        TB, CB = self.right.act_images(j, u)
        TA, CA = self.left.act_images(i, self.cs.lact[self.right.grade(j), u])
        return combine(TA, CA, TB, CB, self.right.dim)

    def label(self, i):
        a, b = divmod(int(i), self.right.dim)
        return f"({self.left.label(a)}x{self.right.label(b)})"


def tensor(V: GradedModule, W: GradedModule) -> TensorModule:
    return TensorModule(V, W)


def tensor_like(V, W):
    """Tensor in the richest category both factors belong to."""
    if getattr(V, "is_dobject", False) and getattr(W, "is_dobject", False):
        from .cat_d import tensor_d

        return tensor_d(V, W)
    return TensorModule(V, W)


def tensor_maps(f: Morphism, g: Morphism) -> Morphism:
    return f.tensor(g)


def validate_object(V: GradedModule, report: Report | None = None) -> Report:
    """Exhaustive representation law and grade compatibility."""
    rep = report or Report(f"object {V.name}")
    cs = V.cs
    nG, n = cs.nG, V.dim
    idx = np.arange(n)
    # identity acts trivially
    k = first_difference(V.act_images(idx, cs.g_id), (idx[:, None], np.ones((n, 1), dtype=np.int64)))
    rep.add("unit_acts_trivially", k is None, n, None if k is None else f"{V.label(k)} <| e != itself")

    bad = None
    for u in range(nG):
        Au = V.action(u)
        for v in range(nG):
            k = (V.action(v) @ Au).difference(V.action(int(cs.gmul[u, v])))
            if k is not None:
                bad = (u, v, k)
                break
        if bad is not None:
            break
    rep.add("representation_law", bad is None, nG * nG * n,
            None if bad is None else
            f"({V.label(bad[2])} <| {cs.g_label(bad[0])}) <| {cs.g_label(bad[1])} != {V.label(bad[2])} <| {cs.g_label(bad[0])}{cs.g_label(bad[1])}")

    bad = None
    g_src = V.grade(idx)
    for u in range(nG):
        r, t, c = flatten(*V.act_images(idx, u))
        wrong = V.grade(t) != cs.ract[g_src[r], u]
        if np.any(wrong):
            bad = (u, int(r[np.argmax(wrong)]))
            break
    rep.add("grade_compatibility", bad is None, nG * n,
            None if bad is None else f"<{V.label(bad[1])} <| {cs.g_label(bad[0])}> != <{V.label(bad[1])}> <| {cs.g_label(bad[0])}")
    return rep


def is_morphism(f: Morphism, report: Report | None = None, elements=None) -> Report:
    """Grade preservation and ``G``-equivariance on every basis vector."""
    rep = report or Report(f"morphism {f.name}")
    V, W = f.source, f.target
    cs = V.cs
    idx = np.arange(V.dim)
    bad = None
    for start in range(0, V.dim, 1 << 18):
        part = idx[start:start + (1 << 18)]
        r, t, _ = flatten(*f.images(part))
        wrong = W.grade(t) != V.grade(part[r])
        if np.any(wrong):
            bad = int(part[r[np.argmax(wrong)]])
            break
    rep.add(f"{f.name}:grade", bad is None, V.dim, None if bad is None else f"grade not preserved on {V.label(bad)}")
    bad = None
    us = range(cs.nG) if elements is None else elements
    for u in us:
        k = (f @ V.action(u)).difference(W.action(u) @ f)
        if k is not None:
            bad = (u, k)
            break
    rep.add(f"{f.name}:equivariant", bad is None, V.dim * len(us),
            None if bad is None else f"f(xi <| {cs.g_label(bad[0])}) != f(xi) <| {cs.g_label(bad[0])} at xi={V.label(bad[1])}")
    return rep


def _assoc(U, V, W, inverse: bool) -> Morphism:
    cs = U.cs
    UV = tensor_like(U, V)
    VW = tensor_like(V, W)
    left = tensor_like(UV, W)
    right = tensor_like(U, VW)
    nV, nW, nVW = V.dim, W.dim, V.dim * W.dim

    if not inverse:
        def fn(idx):
            ab, c = np.divmod(idx, nW)
            a, b = np.divmod(ab, nV)
            g = cs.tau[V.grade(b), W.grade(c)]
            TA, CA = U.act_images(a, g)
            T = np.where(TA >= 0, TA * nVW + (b * nW + c)[:, None], -1)
            return T, CA

        return Morphism(left, right, fn, "Phi")

    def fn_inv(idx):
        a, bc = np.divmod(idx, nVW)
        b, c = np.divmod(bc, nW)
        g = cs.ginv[cs.tau[V.grade(b), W.grade(c)]]
        TA, CA = U.act_images(a, g)
        T = np.where(TA >= 0, (TA * nV + b[:, None]) * nW + c[:, None], -1)
        return T, CA

    return Morphism(right, left, fn_inv, "Phi^-1")


def associator(U, V, W) -> Morphism:
    """``(U V) W -> U (V W)``, ``(xi x eta) x zeta -> xi <| tau(<eta>, <zeta>) x (eta x zeta)``."""
    return _assoc(U, V, W, False)


def associator_inverse(U, V, W) -> Morphism:
    return _assoc(U, V, W, True)


def unit_maps(V, k=None) -> tuple[Morphism, Morphism]:
    """``l: V -> V k`` (``xi -> xi <| f_m^-1 x 1``) and ``r: V -> k V`` (``xi -> 1 x xi``)."""
    cs = V.cs
    k = k if k is not None else _unit_for(V)
    fmi = int(cs.ginv[cs.f_m])
    l = Morphism(V, tensor_like(V, k), lambda idx: V.act_images(idx, fmi), "l")
    r = Morphism(V, tensor_like(k, V), lambda idx: (idx[:, None].copy(), np.ones((idx.size, 1), dtype=np.int64)), "r")
    return l, r


def unit_maps_inverse(V, k=None) -> tuple[Morphism, Morphism]:
    cs = V.cs
    k = k if k is not None else _unit_for(V)
    fm = int(cs.f_m)
    l_inv = Morphism(tensor_like(V, k), V, lambda idx: V.act_images(idx, fm), "l^-1")
    r_inv = Morphism(tensor_like(k, V), V, lambda idx: (idx[:, None].copy(), np.ones((idx.size, 1), dtype=np.int64)), "r^-1")
    return l_inv, r_inv


def _unit_for(V):
    if getattr(V, "is_dobject", False):
        from .cat_d import unit_dobject

        return unit_dobject(V.ds)
    return unit_object(V.cs)


def _I(V):
    return identity_map(V)


def _compare(rep: Report, name: str, f: Morphism, g: Morphism, describe) -> Report:
    k = f.difference(g)
    rep.add(name, k is None, f.source.dim, None if k is None else describe(k))
    return rep


def verify_pentagon(V, W, Z, U, report: Report | None = None) -> Report:
    """``Phi_{V,W,ZU} Phi_{VW,Z,U} = (I x Phi_{W,Z,U}) Phi_{V,WZ,U} (Phi_{V,W,Z} x I)``."""
    rep = report or Report("pentagon")
    VW = tensor_like(V, W)
    ZU = tensor_like(Z, U)
    WZ = tensor_like(W, Z)
    lhs = associator(V, W, ZU) @ associator(VW, Z, U)
    rhs = _I(V).tensor(associator(W, Z, U)) @ associator(V, WZ, U) @ associator(V, W, Z).tensor(_I(U))
    src = lhs.source
    return _compare(rep, "pentagon", lhs, rhs, lambda k: f"differs on {src.label(k)}")


def verify_triangle(V, W, report: Report | None = None) -> Report:
    """``I x r_W = Phi_{V,k,W} (l_V x I)`` as maps ``V W -> V (k W)``."""
    rep = report or Report("triangle")
    k = _unit_for(V)
    l, _ = unit_maps(V, k)
    _, r = unit_maps(W, k)
    lhs = _I(V).tensor(r)
    rhs = associator(V, k, W) @ l.tensor(_I(W))
    src = lhs.source
    return _compare(rep, "triangle", lhs, rhs, lambda i: f"differs on {src.label(i)}")


def verify_naturality(psi: Morphism, theta: Morphism, phi: Morphism, report: Report | None = None) -> Report:
    """``Phi (psi x theta) x phi = psi x (theta x phi) Phi`` on every basis triple."""
    rep = report or Report("associator naturality")
    lhs = associator(psi.target, theta.target, phi.target) @ psi.tensor(theta).tensor(phi)
    rhs = psi.tensor(theta.tensor(phi)) @ associator(psi.source, theta.source, phi.source)
    src = lhs.source
    name = f"naturality[{psi.name},{theta.name},{phi.name}]"
    return _compare(rep, name, lhs, rhs, lambda i: f"differs on {src.label(i)}")


def _dual_preconditions(cs: CosetSystem):
    rinv = cs.right_inverse(np.arange(cs.nM))
    if np.any(rinv < 0):
        s = int(np.flatnonzero(rinv < 0)[0])
        raise ValueError(f"duals need right inverses; {cs.m_label(s)} has none")


class DualModule(TableModule):
    """``V'`` with basis dual to that of ``V``.

    ``alpha_i`` has grade ``<xi_i>^L`` and ``(alpha <| v)(eta) = alpha(eta <| g)`` with
    ``g = f_m^-1 tau(t^L, t)^-1 (t^L |> v^-1) tau(q, q^R) f_m``, ``t = <eta>``,
    ``q = t^L <| v^-1``.  This makes ``ev`` a morphism;
    the ``f_m`` factors drop out when ``e`` is in ``M``.
    """

    def __init__(self, V: GradedModule):
        cs = V.cs
        _dual_preconditions(cs)
        n = V.dim
        idx = np.arange(n)
        t = V.grade(idx)
        tl = cs.left_inverse(t)
        grades = tl
        Ts, Cs = [], []
        fm, fmi = cs.f_m, cs.ginv[cs.f_m]
        for v in range(cs.nG):
            vi = cs.ginv[v]
            q = cs.ract[tl, vi]
            g = cs.gmul[cs.gmul[fmi, cs.ginv[cs.tau[tl, t]]], cs.lact[tl, vi]]
            g = cs.gmul[cs.gmul[g, cs.tau[q, cs.right_inverse(q)]], fm]
            r, tg, c = flatten(*V.act_images(idx, g))
            # coefficient of xi_tg in xi_r <| g_r becomes alpha_tg <| v -> alpha_r
            T, C = to_ell(tg, r, c, n)
            Ts.append(T)
            Cs.append(C)
        K = max(T.shape[1] for T in Ts)
        act_T = np.stack([np.pad(T, ((0, 0), (0, K - T.shape[1])), constant_values=-1) for T in Ts])
        act_C = np.stack([np.pad(C, ((0, 0), (0, K - C.shape[1]))) for C in Cs])
        super().__init__(cs, grades, act_T, act_C, [f"{V.label(i)}^" for i in idx], f"{V.name}'")
        self.primal = V


def dual(V: GradedModule) -> DualModule:
    return DualModule(V)


def evaluation(V: GradedModule, Vd: DualModule | None = None) -> Morphism:
    """``V' V -> k``, ``alpha x xi -> alpha(xi)``."""
    Vd = Vd if Vd is not None else dual(V)
    n = V.dim
    k = unit_object(V.cs)

    def fn(idx):
        a, b = np.divmod(idx, n)
        T = np.where(a == b, 0, -1)[:, None]
        return T, np.ones_like(T)

    return Morphism(tensor(Vd, V), k, fn, "ev")


def coevaluation(V: GradedModule, Vd: DualModule | None = None) -> Morphism:
    """``k -> V V'``, ``1 -> sum_i xi_i <| f_m^-1 tau(<xi_i>^L, <xi_i>)^-1 x alpha_i``."""
    cs = V.cs
    Vd = Vd if Vd is not None else dual(V)
    n = V.dim
    idx = np.arange(n)
    t = V.grade(idx)
    g = cs.gmul[cs.ginv[cs.f_m], cs.ginv[cs.tau[cs.left_inverse(t), t]]]
    TA, CA = V.act_images(idx, g)
    T = np.where(TA >= 0, TA * n + idx[:, None], -1).ravel()[None, :]
    C = CA.ravel()[None, :]
    return stored_map(unit_object(cs), tensor(V, Vd), T, C, "coev")


def verify_snake(V: GradedModule, report: Report | None = None) -> Report:
    """Both zig-zag identities, with the unit isomorphisms made explicit."""
    rep = report or Report(f"snake {V.name}")
    cs = V.cs
    try:
        _dual_preconditions(cs)
    except ValueError as exc:
        rep.skip("snake", str(exc))
        return rep
    Vd = dual(V)
    ev = evaluation(V, Vd)
    co = coevaluation(V, Vd)
    k = ev.target
    _, r_V = unit_maps(V, k)
    l_inv_V, _ = unit_maps_inverse(V, k)
    first = l_inv_V @ _I(V).tensor(ev) @ associator(V, Vd, V) @ co.tensor(_I(V)) @ r_V
    _compare(rep, "snake_V", first, identity_map(V), lambda i: f"fails on {V.label(i)}")
    l_Vd, _ = unit_maps(Vd, k)
    _, r_inv_Vd = unit_maps_inverse(Vd, k)
    second = r_inv_Vd @ ev.tensor(_I(Vd)) @ associator_inverse(Vd, V, Vd) @ _I(Vd).tensor(co) @ l_Vd
    _compare(rep, "snake_V'", second, identity_map(Vd), lambda i: f"fails on {Vd.label(i)}")
    validate_object(Vd, rep)
    is_morphism(ev, rep)
    is_morphism(co, rep)
    return rep


def hom_basis(V: GradedModule, W: GradedModule, extra=None) -> list[Morphism]:
    """Integer basis of the morphism space ``V -> W`` (small objects only).

    ``extra(V, W, var)`` may add further linear constraints (used for the
    braided category); ``var`` maps ``(j, i)`` to an unknown index or -1.
    """
    cs = V.cs
    n, m = V.dim, W.dim
    if n * m > 200_000:
        raise ValueError("hom space too large to solve exactly")
    gv, gw = V.grade(np.arange(n)), W.grade(np.arange(m))
    var = np.full((m, n), -1, dtype=np.int64)
    allowed = gw[:, None] == gv[None, :]
    if extra is not None and hasattr(extra, "allowed"):
        allowed &= extra.allowed(V, W)
    var[allowed] = np.arange(int(allowed.sum()))
    nvar = int(allowed.sum())
    rows: list[dict[int, int]] = []
    idx = np.arange(n)
    jdx = np.arange(m)
    for u in range(cs.nG):
        AV = V.action(u).dense()  # AV[k, i]
        AW = W.action(u).dense()  # AW[j, l]
        # (F AV)[j, i] - (AW F)[j, i] = 0
        for i in idx:
            for j in jdx:
                eq: dict[int, int] = {}
                for kk in np.flatnonzero(AV[:, i]):
                    vv = var[j, kk]
                    if vv >= 0:
                        eq[vv] = eq.get(vv, 0) + int(AV[kk, i])
                for ll in np.flatnonzero(AW[j, :]):
                    vv = var[ll, i]
                    if vv >= 0:
                        eq[vv] = eq.get(vv, 0) - int(AW[j, ll])
                eq = {a: b for a, b in eq.items() if b}
                if eq:
                    rows.append(eq)
    if extra is not None:
        rows.extend(extra(V, W, var))
    basis = nullspace(rows, nvar)
    jj, ii = np.nonzero(var >= 0)
    out = []
    for b, vec in enumerate(basis):
        F = np.zeros((m, n), dtype=np.int64)
        for vv, c in vec.items():
            F[jj[vv], ii[vv]] = c
        out.append(_dense_map(V, W, F, f"h{b}"))
    return out


def _dense_map(V, W, F: np.ndarray, name: str) -> Morphism:
    r, t, c = F.T.nonzero()[0], F.T.nonzero()[1], F.T[F.T.nonzero()]
    T, C = to_ell(r, t, c, V.dim)
    return stored_map(V, W, T, C, name)


def random_morphism(V, W, rng: np.random.Generator, basis=None, name: str = "rnd", extra=None) -> Morphism:
    """A random integer combination of a morphism basis, or ``None`` if the space is zero."""
    basis = basis if basis is not None else hom_basis(V, W, extra)
    if not basis:
        return None
    F = np.zeros((W.dim, V.dim), dtype=np.int64)
    for b in basis:
        F += int(rng.integers(-3, 4)) * b.dense()
    return _dense_map(V, W, F, name)
