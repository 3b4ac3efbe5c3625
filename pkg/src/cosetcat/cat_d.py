"""The braided category: objects with a second grading ``|xi|`` in ``G`` and an
operation ``s |> xi`` of ``M``, on top of the structure of the tensor category.

Beyond ``grade`` and ``act_images``, objects here provide

* ``ggrade(idx)`` -> local ``G`` indices (``|xi|``)
* ``mact_images(idx, s)`` -> ELL block for ``s |> xi``

and carry ``is_dobject = True`` plus a reference ``ds`` to the double system.
The braiding is ``Psi(xi x eta) = <xi> |> eta  x  xi <| |eta|``.
"""

from __future__ import annotations

import numpy as np

from .cat_c import (
    TableModule,
    TensorModule,
    associator,
    associator_inverse,
    first_difference,
    hom_basis,
    is_morphism,
    unit_maps,
    validate_object,
)
from .double import DoubleSystem, hat_images
from .linear import Morphism, chain, combine, flatten, identity_map
from .report import Report

__all__ = [
    "TableDModule",
    "TensorDModule",
    "unit_dobject",
    "from_x_action",
    "conjugation_dobject",
    "tensor_d",
    "validate_dobject",
    "is_dmorphism",
    "braiding",
    "braiding_inverse",
    "braiding_via_hat",
    "verify_hexagons",
    "verify_hat_action",
    "verify_tensor_hat",
    "verify_braided",
    "ygrade",
    "dhom_basis",
]


class TableDModule(TableModule):
    is_dobject = True

    def __init__(self, ds: DoubleSystem, grades, ggrades, act_T, act_C, mact_T, mact_C, labels=None, name="V"):
        super().__init__(ds.base, grades, act_T, act_C, labels, name)
        self.ds = ds
        self.ggrades = np.asarray(ggrades, dtype=np.int64)
        self.mact_T = np.asarray(mact_T, dtype=np.int64)
        self.mact_C = np.asarray(mact_C, dtype=np.int64)

    def ggrade(self, idx):
        return self.ggrades[idx]

    def mact_images(self, idx, s):
        idx = np.asarray(idx, dtype=np.int64)
        s = np.broadcast_to(np.asarray(s, dtype=np.int64), idx.shape)
        return self.mact_T[s, idx], self.mact_C[s, idx]


def unit_dobject(ds: DoubleSystem) -> TableDModule:
    """``k`` with trivial gradings and actions."""
    cs = ds.base
    if cs.e_in_m < 0:
        raise ValueError("the braided category needs the group identity in M")
    one_g = np.zeros((cs.nG, 1, 1), dtype=np.int64)
    one_m = np.zeros((cs.nM, 1, 1), dtype=np.int64)
    return TableDModule(ds, [cs.e_m], [cs.g_id], one_g, np.ones_like(one_g), one_m, np.ones_like(one_m), ["1"], "k")


def from_x_action(ds: DoubleSystem, ygrades, hat_T, hat_C, labels=None, name="V", check=True) -> TableDModule:
    """Object of the braided category from a ``Y``-graded right ``X``-action.

    ``hat_T[x, i]``/``hat_C[x, i]`` give ``xi_i ^<| x``; the gradings are read off
    ``||xi|| = |xi|^-1 <xi>`` and ``s |> xi = xi ^<| (s <| |xi|)^-1``.
    Runs :func:`validate_dobject` unless ``check`` is false.
    """
    cs = ds.base
    X = cs.group
    y = np.asarray(ygrades, dtype=np.int64)
    hat_T = np.asarray(hat_T, dtype=np.int64)
    hat_C = np.asarray(hat_C, dtype=np.int64)
    grades = ds.yang[y]
    gg = ds.ybar[y]
    act_T, act_C = hat_T[cs.g_elems], hat_C[cs.g_elems]
    s = np.arange(cs.nM)[:, None]
    x = X.inv[cs.m_elems[cs.ract[s, gg[None, :]]]]  # [s, i]
    i = np.broadcast_to(np.arange(y.size), x.shape)
    V = TableDModule(ds, grades, gg, act_T, act_C, hat_T[x, i], hat_C[x, i], labels, name)
    if check:
        rep = validate_dobject(V)
        if not rep.passed:
            raise ValueError(f"not an object of the braided category:\n{rep}")
    return V


def conjugation_dobject(ds: DoubleSystem) -> TableDModule:
    """Basis ``xi_y`` (``y`` in ``Y``) with ``||xi_y|| = y`` and ``xi_y ^<| x = xi_{x^-1 y x}``."""
    T = ds.tilde_ract.T[:, :, None]
    return from_x_action(ds, np.arange(ds.n), T, np.ones_like(T), [f"c{ds.label(y)}" for y in range(ds.n)], "Ad")


class TensorDModule(TensorModule):
    is_dobject = True

    def __init__(self, A, B):
        super().__init__(A, B)
        self.ds = A.ds

    def ggrade(self, idx):
        cs = self.cs
        i, j = self.split(idx)
        t = cs.tau[self.left.grade(i), self.right.grade(j)]
        return cs.gmul[cs.gmul[cs.ginv[t], self.left.ggrade(i)], self.right.ggrade(j)]

    def mact_images(self, idx, r):
        """``r |> (eta x kappa)`` with ``r = s <| tau(<eta>, <kappa>)``."""
        cs = self.cs
        A, B = self.left, self.right
        i, j = self.split(idx)
        r = np.broadcast_to(np.asarray(r, dtype=np.int64), i.shape)
        ga, gb = A.grade(i), B.grade(j)
        s = cs.ract[r, cs.ginv[cs.tau[ga, gb]]]
        ha, hb = A.ggrade(i), B.ggrade(j)
        s1 = cs.ract[s, ha]
        TB, CB = B.mact_images(j, s1)
        # <s1 |> kappa> from s1 . <kappa> = <s1 |> kappa> . (s1 <| |kappa|)
        gk = cs.rdiv[cs.dot[s1, gb], cs.ract[s1, hb]]
        g = cs.gmul[cs.tau[s1, gb], cs.ginv[cs.tau[gk, cs.ract[s, cs.gmul[ha, hb]]]]]
        TA, CA = A.mact_images(i, s)
        TA, CA = chain(TA, CA, lambda t, p: A.act_images(t, g[p]), np.arange(i.size))
        return combine(TA, CA, TB, CB, B.dim)


def tensor_d(V, W) -> TensorDModule:
    if V.ds is not W.ds:
        raise ValueError("tensor factors live over different double systems")
    return TensorDModule(V, W)


def ygrade(V, idx):
    """``||xi|| = |xi|^-1 <xi>`` as an X index."""
    return V.ds.y_of(V.ggrade(idx), V.grade(idx))


def _mact_map(V, s):
    return Morphism(V, V, lambda idx: V.mact_images(idx, s), f"{V.cs.m_label(s)}|>")


def validate_dobject(V, report: Report | None = None) -> Report:
    """Exhaustive check of the structure conditions linking gradings and actions."""
    rep = validate_object(V, report or Report(f"d-object {V.name}"))
    cs = V.cs
    X = cs.group
    n, nG, nM = V.dim, cs.nG, cs.nM
    idx = np.arange(n)
    gr, gg = V.grade(idx), V.ggrade(idx)

    # |eta <| u| = (<eta> |> u)^-1 |eta| u, and the same for the Y-grade
    bad1 = bad2 = None
    for u in range(nG):
        r, t, _ = flatten(*V.act_images(idx, u))
        want = cs.gmul[cs.gmul[cs.ginv[cs.lact[gr[r], u]], gg[r]], u]
        w = np.flatnonzero(V.ggrade(t) != want)
        if w.size and bad1 is None:
            bad1 = (u, r[w[0]])
        ug = cs.g_elems[u]
        want_y = X.mul[X.mul[X.inv[ug], ygrade(V, r)], ug]
        w = np.flatnonzero(ygrade(V, t) != want_y)
        if w.size and bad2 is None:
            bad2 = (u, r[w[0]])
    rep.add("ggrade_under_action", bad1 is None, n * nG,
            None if bad1 is None else f"|{V.label(bad1[1])} <| {cs.g_label(bad1[0])}|")
    rep.add("ygrade_under_action", bad2 is None, n * nG,
            None if bad2 is None else f"||{V.label(bad2[1])} <| {cs.g_label(bad2[0])}||")

    # conditions on s |> eta
    bad = {k: None for k in ("mact_grade", "mact_ggrade", "ygrade_under_mact")}
    for s in range(nM):
        r, t, _ = flatten(*V.mact_images(idx, s))
        sh = cs.ract[s, gg[r]]
        w = np.flatnonzero(cs.dot[V.grade(t), sh] != cs.dot[s, gr[r]])
        if w.size and bad["mact_grade"] is None:
            bad["mact_grade"] = (s, r[w[0]])
        lhs = cs.gmul[cs.ginv[cs.tau[s, gr[r]]], cs.lact[s, gg[r]]]
        rhs = cs.gmul[cs.ginv[cs.tau[V.grade(t), sh]], V.ggrade(t)]
        w = np.flatnonzero(lhs != rhs)
        if w.size and bad["mact_ggrade"] is None:
            bad["mact_ggrade"] = (s, r[w[0]])
        shx = cs.m_elems[sh]
        want = X.mul[X.mul[shx, ygrade(V, r)], X.inv[shx]]
        w = np.flatnonzero(ygrade(V, t) != want)
        if w.size and bad["ygrade_under_mact"] is None:
            bad["ygrade_under_mact"] = (s, r[w[0]])
    for name, b in bad.items():
        rep.add(name, b is None, n * nM, None if b is None else f"s={cs.m_label(b[0])}, eta={V.label(b[1])}")

    # p |> (t |> kappa) = ((p' . t) |> kappa) <| tau(p' <| (t |> |kappa|), t <| |kappa|)^-1
    P, Tt, K = [a.ravel() for a in np.meshgrid(np.arange(nM), np.arange(nM), idx, indexing="ij")]
    gk, hk = gr[K], gg[K]
    th = cs.ract[Tt, hk]
    tk = cs.rdiv[cs.dot[Tt, gk], th]  # <t |> kappa>
    pp = cs.ract[P, cs.gmul[cs.tau[tk, th], cs.ginv[cs.tau[Tt, gk]]]]
    T1, C1 = V.mact_images(K, Tt)
    lhs = chain(T1, C1, lambda t, p: V.mact_images(t, P[p]), np.arange(K.size))
    T2, C2 = V.mact_images(K, cs.dot[pp, Tt])
    g = cs.ginv[cs.tau[cs.ract[pp, cs.lact[Tt, hk]], th]]
    rhs = chain(T2, C2, lambda t, p: V.act_images(t, g[p]), np.arange(K.size))
    k = first_difference(lhs, rhs)
    rep.add("mact_composition", k is None, K.size,
            None if k is None else f"p={cs.m_label(P[k])}, t={cs.m_label(Tt[k])}, kappa={V.label(K[k])}")

    # (s |> eta) <| ((s <| |eta|) |> u) = (s <| (<eta> |> u)) |> (eta <| u)
    S, U, E = [a.ravel() for a in np.meshgrid(np.arange(nM), np.arange(nG), idx, indexing="ij")]
    T1, C1 = V.mact_images(E, S)
    w = cs.lact[cs.ract[S, gg[E]], U]
    lhs = chain(T1, C1, lambda t, p: V.act_images(t, w[p]), np.arange(E.size))
    T2, C2 = V.act_images(E, U)
    lab = cs.ract[S, cs.lact[gr[E], U]]
    rhs = chain(T2, C2, lambda t, p: V.mact_images(t, lab[p]), np.arange(E.size))
    k = first_difference(lhs, rhs)
    rep.add("cross_relation", k is None, E.size,
            None if k is None else f"s={cs.m_label(S[k])}, u={cs.g_label(U[k])}, eta={V.label(E[k])}")
    return rep


def is_dmorphism(f: Morphism, report: Report | None = None) -> Report:
    """Morphism of the tensor category that also preserves ``|.|`` and commutes with ``|>``."""
    rep = is_morphism(f, report)
    V, W = f.source, f.target
    cs = V.cs
    bad = None
    for start in range(0, V.dim, 1 << 18):
        part = np.arange(start, min(V.dim, start + (1 << 18)))
        r, t, _ = flatten(*f.images(part))
        wrong = W.ggrade(t) != V.ggrade(part[r])
        if np.any(wrong):
            bad = int(part[r[np.argmax(wrong)]])
            break
    rep.add(f"{f.name}:ggrade", bad is None, V.dim, None if bad is None else f"|.| not preserved on {V.label(bad)}")
    bad = None
    for s in range(cs.nM):
        k = (f @ _mact_map(V, s)).difference(_mact_map(W, s) @ f)
        if k is not None:
            bad = (s, k)
            break
    rep.add(f"{f.name}:mact_equivariant", bad is None, V.dim * cs.nM,
            None if bad is None else f"f({cs.m_label(bad[0])} |> xi) != {cs.m_label(bad[0])} |> f(xi) at xi={V.label(bad[1])}")
    return rep


def braiding(V, W) -> Morphism:
    """``Psi: V W -> W V``."""
    nV = V.dim

    def fn(idx):
        i, j = np.divmod(idx, W.dim)
        TB, CB = W.mact_images(j, V.grade(i))
        TA, CA = V.act_images(i, W.ggrade(j))
        return combine(TB, CB, TA, CA, nV)

    return Morphism(tensor_d(V, W), tensor_d(W, V), fn, "Psi")


def braiding_inverse(V, W) -> Morphism:
    """``Psi^-1: W V -> V W``, ``xi' x eta' -> eta' ^<| |xi' ^<| <eta'>|^-1 x xi' ^<| <eta'>``."""
    cs = V.cs
    X = cs.group
    ds = V.ds

    def fn(idx):
        i, j = np.divmod(idx, V.dim)  # xi' = W[i], eta' = V[j]
        x1 = cs.m_elems[V.grade(j)]
        y1 = ds.tilde_ract[ygrade(W, i), x1]
        x2 = X.inv[cs.g_elems[ds.ybar[y1]]]
        TA, CA = hat_images(V, j, x2)
        TB, CB = hat_images(W, i, x1)
        return combine(TA, CA, TB, CB, W.dim)

    return Morphism(tensor_d(W, V), tensor_d(V, W), fn, "Psi^-1")


def braiding_via_hat(V, W) -> Morphism:
    """``Psi`` rewritten with the X-action: ``eta ^<| (<xi> <| |eta|)^-1 x xi ^<| |eta|``."""
    cs = V.cs
    X = cs.group

    def fn(idx):
        i, j = np.divmod(idx, W.dim)
        hj = W.ggrade(j)
        x1 = X.inv[cs.m_elems[cs.ract[V.grade(i), hj]]]
        TB, CB = hat_images(W, j, x1)
        TA, CA = hat_images(V, i, cs.g_elems[hj])
        return combine(TB, CB, TA, CA, V.dim)

    return Morphism(tensor_d(V, W), tensor_d(W, V), fn, "Psi^")


def verify_hexagons(V, W, Z, report: Report | None = None) -> Report:
    rep = report or Report("hexagons")
    I = identity_map
    # (V W) Z -> W (Z V)
    lhs = associator(W, Z, V) @ braiding(V, tensor_d(W, Z)) @ associator(V, W, Z)
    rhs = I(W).tensor(braiding(V, Z)) @ associator(W, V, Z) @ braiding(V, W).tensor(I(Z))
    k = lhs.difference(rhs)
    rep.add("hexagon", k is None, lhs.source.dim, None if k is None else f"fails on {lhs.source.label(k)}")
    # V (W Z) -> (Z V) W
    lhs = braiding(V, Z).tensor(I(W)) @ associator_inverse(V, Z, W) @ I(V).tensor(braiding(W, Z))
    rhs = associator_inverse(Z, V, W) @ braiding(tensor_d(V, W), Z) @ associator_inverse(V, W, Z)
    k = lhs.difference(rhs)
    rep.add("hexagon_inverse", k is None, lhs.source.dim, None if k is None else f"fails on {lhs.source.label(k)}")
    return rep


def verify_hat_action(V, report: Report | None = None, pairs=None, rng=None) -> Report:
    """``^<|`` is a right action of ``X`` moving the ``Y``-grade by conjugation.

    ``pairs`` caps the number of ``(basis vector, x)`` rows swept for the
    action law; each selected row is checked against every ``z``.
    """
    rep = report or Report(f"X-action on {V.name}")
    cs = V.cs
    X = cs.group
    ds = V.ds
    n, nX = V.dim, X.order
    B, Xs = [a.ravel() for a in np.meshgrid(np.arange(n), np.arange(nX), indexing="ij")]
    if pairs is not None and B.size > pairs:
        rng = rng or np.random.default_rng(0)
        pick = np.sort(rng.choice(B.size, size=pairs, replace=False))
        B, Xs = B[pick], Xs[pick]
    T, C = hat_images(V, np.arange(n), X.identity)
    I = identity_map(V).images(np.arange(n))
    k = first_difference((T, C), I)
    rep.add("hat_identity", k is None, n, None if k is None else f"{V.label(k)} ^<| e")
    r, t, _ = flatten(*hat_images(V, B, Xs))
    want = ds.tilde_ract[ygrade(V, B[r]), Xs[r]]
    bad = np.flatnonzero(ygrade(V, t) != want)
    rep.add("hat_ygrade", bad.size == 0, B.size,
            None if bad.size == 0 else f"||{V.label(B[r[bad[0]]])} ^<| {ds.label(Xs[r[bad[0]]])}||")
    bad = None
    for z in range(nX):
        T1, C1 = hat_images(V, B, Xs)
        lhs = chain(T1, C1, lambda tt, p: hat_images(V, tt, z), np.arange(B.size))
        rhs = hat_images(V, B, X.mul[Xs, z])
        k = first_difference(lhs, rhs)
        if k is not None:
            bad = (B[k], Xs[k], z)
            break
    rep.add("hat_action_law", bad is None, B.size * nX,
            None if bad is None else f"({V.label(bad[0])} ^<| {ds.label(bad[1])}) ^<| {ds.label(bad[2])}")
    return rep


def verify_tensor_hat(V, W, report: Report | None = None) -> Report:
    """``(xi x eta) ^<| x = xi ^<| (||eta|| ~|> x)  x  eta ^<| x`` on ``V W``."""
    rep = report or Report("tensor X-action")
    ds = V.ds
    VW = tensor_d(V, W)
    nX = ds.n
    bad = None
    idx = np.arange(VW.dim)
    i, j = VW.split(idx)
    yj = ygrade(W, j)
    for x in range(nX):
        lhs = hat_images(VW, idx, x)
        TA, CA = hat_images(V, i, ds.tilde_lact[yj, x])
        TB, CB = hat_images(W, j, x)
        k = first_difference(lhs, combine(TA, CA, TB, CB, W.dim))
        if k is not None:
            bad = (k, x)
            break
    rep.add("tensor_hat_action", bad is None, VW.dim * nX,
            None if bad is None else f"{VW.label(bad[0])} ^<| {ds.label(bad[1])}")
    return rep


class _DConstraints:
    """Extra linear constraints for morphisms of the braided category."""

    def allowed(self, V, W):
        return W.ggrade(np.arange(W.dim))[:, None] == V.ggrade(np.arange(V.dim))[None, :]

    def __call__(self, V, W, var):
        rows = []
        for s in range(V.cs.nM):
            AV = _mact_map(V, s).dense()
            AW = _mact_map(W, s).dense()
            for i in range(V.dim):
                for j in range(W.dim):
                    eq: dict = {}
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
        return rows


def dhom_basis(V, W):
    return hom_basis(V, W, _DConstraints())


def verify_braided(objects, report: Report | None = None, rng=None, naturality_maps=None) -> Report:
    """Coherence of the braided structure on ``objects = (V, W, Z)``.

    ``naturality_maps`` is a list of pairs ``(theta, phi)`` of morphisms; the
    braiding square is checked for each pair.
    """
    V, W, Z = objects
    rep = report or Report("braided category")
    ds = V.ds
    for obj in {id(o): o for o in (V, W, Z)}.values():
        validate_dobject(obj, rep)
    VW = tensor_d(V, W)
    validate_dobject(VW, rep)
    Psi = braiding(V, W)
    Pinv = braiding_inverse(V, W)
    k = (Pinv @ Psi).difference(identity_map(VW))
    rep.add("Psi^-1 Psi = I", k is None, VW.dim, None if k is None else f"fails on {VW.label(k)}")
    WV = Psi.target
    k = (Psi @ Pinv).difference(identity_map(WV))
    rep.add("Psi Psi^-1 = I", k is None, WV.dim, None if k is None else f"fails on {WV.label(k)}")
    k = Psi.difference(braiding_via_hat(V, W))
    rep.add("Psi via hat action", k is None, VW.dim, None if k is None else f"fails on {VW.label(k)}")
    is_dmorphism(Psi, rep)
    is_dmorphism(Pinv, rep)
    is_dmorphism(associator(V, W, Z), rep)
    is_dmorphism(associator_inverse(V, W, Z), rep)
    k0 = unit_dobject(ds)
    l, r = unit_maps(V, k0)
    is_dmorphism(l, rep)
    is_dmorphism(r, rep)
    verify_hexagons(V, W, Z, rep)
    verify_hat_action(V, rep)
    verify_tensor_hat(V, W, rep)
    for theta, phi in naturality_maps or []:
        lhs = braiding(theta.target, phi.target) @ theta.tensor(phi)
        rhs = phi.tensor(theta) @ braiding(theta.source, phi.source)
        k = lhs.difference(rhs)
        rep.add(f"braiding_naturality[{theta.name},{phi.name}]", k is None, lhs.source.dim,
                None if k is None else f"fails on {lhs.source.label(k)}")
    return rep
