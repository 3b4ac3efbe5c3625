"""The algebra ``H`` in the tensor category, with basis ``delta_s (x) u``.

Basis vector ``(s, u)`` has index ``s * |G| + u``.  Its grade ``a`` solves
``s . a = s <| u``, which needs left division in ``(M, .)``.  An object ``V``
becomes a right ``H``-module through ``xi <| (delta_s x u) = delta_{s,<xi>} xi <| u``,
and the product is the one making that action associative up to the associator.
"""

from __future__ import annotations

import numpy as np

from .cat_c import (
    GradedModule,
    TableModule,
    associator,
    is_morphism,
    tensor,
    unit_maps,
    unit_object,
    validate_object,
    m_regular_object,
)
from .linear import Morphism, identity_map
from .report import Report
from .transversal import CosetSystem

__all__ = ["AlgebraH", "build_H", "act_via_H", "verify_H"]


class AlgebraH:
    def __init__(self, cs: CosetSystem):
        if cs.e_in_m < 0:
            raise ValueError("H needs the group identity in M")
        nM, nG = cs.nM, cs.nG
        s, u = np.divmod(np.arange(nM * nG), nG)
        target = cs.ract[s, u]
        a = cs.ldiv[s, target]
        if np.any(a < 0):
            k = int(np.flatnonzero(a < 0)[0])
            raise ValueError(
                f"no left division: s . a = {cs.m_label(target[k])} has no unique solution for "
                f"(s, u) = ({cs.m_label(s[k])}, {cs.g_label(u[k])})"
            )
        self.cs = cs
        self.dim = nM * nG
        self.s_of, self.u_of = s, u
        self.grades = a
        # (delta_s x u) <| v = delta_{s <| (a |> v)} x (a |> v)^-1 u v
        v = np.arange(nG)
        av = cs.lact[a[None, :], v[:, None]]  # [v, basis]
        new_s = cs.ract[s[None, :], av]
        new_u = cs.gmul[cs.gmul[cs.ginv[av], u[None, :]], v[:, None]]
        perm = new_s * nG + new_u
        labels = [f"d{cs.m_label(si)}x{cs.g_label(ui)}" for si, ui in zip(s, u)]
        self.module = TableModule(cs, a, perm[:, :, None], np.ones(perm.shape + (1,), dtype=np.int64), labels, "H")
        self.module.algebra = self

    def index(self, s: int, u: int) -> int:
        return int(s) * self.cs.nG + int(u)

    def label(self, i: int) -> str:
        return self.module.label(i)

    def product_images(self, i, j):
        """Index of ``h_i h_j`` or -1 when the product vanishes."""
        cs = self.cs
        s, u = self.s_of[i], self.u_of[i]
        t, v = self.s_of[j], self.u_of[j]
        g = cs.tau[self.grades[i], self.grades[j]]
        ps = cs.ract[s, g]
        pu = cs.gmul[cs.gmul[cs.ginv[g], u], v]
        return np.where(t == cs.ract[s, u], ps * cs.nG + pu, -1)

    def mu(self) -> Morphism:
        HH = tensor(self.module, self.module)
        n = self.dim

        def fn(idx):
            i, j = np.divmod(idx, n)
            T = self.product_images(i, j)[:, None]
            return T, np.ones_like(T)

        return Morphism(HH, self.module, fn, "mu")

    def unit_vector(self) -> dict:
        """``I = sum_t delta_t x e``."""
        return {self.index(t, self.cs.g_id): 1 for t in range(self.cs.nM)}

    def unit_map(self) -> Morphism:
        k = unit_object(self.cs)
        vec = self.unit_vector()
        T = np.array([sorted(vec)], dtype=np.int64)
        return Morphism(k, self.module, lambda idx: (np.repeat(T, idx.size, 0), np.ones((idx.size, T.shape[1]), dtype=np.int64)), "unit")

    def counit_map(self) -> Morphism:
        k = unit_object(self.cs)
        e = self.cs.e_in_m

        def fn(idx):
            T = np.where(self.s_of[idx] == e, 0, -1)[:, None]
            return T, np.ones_like(T)

        return Morphism(self.module, k, fn, "eps")

    def product(self, h1: dict, h2: dict) -> dict:
        out: dict = {}
        for i, a in h1.items():
            for j, b in h2.items():
                k = int(self.product_images(np.array([i]), np.array([j]))[0])
                if k >= 0:
                    out[k] = out.get(k, 0) + a * b
        return {k: v for k, v in out.items() if v}

    def counit(self, h: dict) -> int:
        return sum(c for i, c in h.items() if self.s_of[i] == self.cs.e_in_m)


def build_H(cs: CosetSystem) -> AlgebraH:
    return AlgebraH(cs)


def act_via_H(V: GradedModule, H: AlgebraH) -> Morphism:
    """``V (x) H -> V``, ``xi x (delta_s x u) -> delta_{s,<xi>} xi <| u``."""
    n = H.dim

    def fn(idx):
        i, h = np.divmod(idx, n)
        T, C = V.act_images(i, H.u_of[h])
        keep = (H.s_of[h] == V.grade(i))[:, None]
        return np.where(keep, T, -1), np.where(keep, C, 0)

    return Morphism(tensor(V, H.module), V, fn, f"act_{V.name}")


def verify_H(H: AlgebraH, budget: int | None = None, rng=None, test_objects=None) -> Report:
    """Axioms of ``H``; ``budget`` caps the number of basis triples for associativity."""
    cs = H.cs
    rep = Report("algebra H")
    n = H.dim
    # grade equation
    ok = np.all(cs.dot[H.s_of, H.grades] == cs.ract[H.s_of, H.u_of])
    rep.add("grade_equation", bool(ok), n, "s . <h> != s <| u")
    validate_object(H.module, rep)

    mu = H.mu()
    i, j = np.divmod(np.arange(n * n), n)
    k = H.product_images(i, j)
    live = k >= 0
    wrong = H.grades[k[live]] != cs.dot[H.grades[i[live]], H.grades[j[live]]]
    rep.add("grade_multiplicative", not np.any(wrong), int(live.sum()),
            None if not np.any(wrong) else f"<h1 h2> != <h1>.<h2> at {H.label(i[live][np.argmax(wrong)])}, {H.label(j[live][np.argmax(wrong)])}")
    is_morphism(mu, rep)

    # twisted associativity on H H H
    I = identity_map(H.module)
    lhs = mu @ mu.tensor(I)
    rhs = mu @ I.tensor(mu) @ associator(H.module, H.module, H.module)
    total = n ** 3
    idx = None
    if budget is not None and total > budget:
        rng = rng or np.random.default_rng(0)
        idx = np.sort(rng.choice(total, size=budget, replace=False))
    bad = lhs.difference(rhs, idx)
    rep.add("twisted_associativity", bad is None, total if idx is None else len(idx),
            None if bad is None else f"fails on {lhs.source.label(bad)}")

    # unit and counit
    unit = H.unit_map()
    l, r = unit_maps(H.module)
    left_unit = mu @ unit.tensor(I) @ r
    right_unit = mu @ I.tensor(unit) @ l
    for name, f in (("left_unit", left_unit), ("right_unit", right_unit)):
        b = f.difference(I)
        rep.add(name, b is None, n, None if b is None else f"fails on {H.label(b)}")
    is_morphism(unit, rep)
    eps = H.counit_map()
    is_morphism(eps, rep)
    k0 = unit_object(cs)
    # eps(h1 h2) = eps(h1) eps(h2), eps(I) = 1
    e = cs.e_in_m

    def eps_eps(idx):
        both = (H.s_of[idx // n] == e) & (H.s_of[idx % n] == e)
        T = np.where(both, 0, -1)[:, None]
        return T, np.ones_like(T)

    e2 = Morphism(mu.source, k0, eps_eps, "eps x eps")
    b = (eps @ mu).difference(e2)
    rep.add("counit_multiplicative", b is None, n * n, None if b is None else f"fails on {mu.source.label(b)}")
    rep.add("counit_of_unit", H.counit(H.unit_vector()) == 1, 1, "eps(I) != 1")

    # the defining action equation on test objects:
    # (xi <| h1) <| h2 = (xi <| tau(a, b)) <| (h1 h2), i.e. act o (act x I) = act o (I x mu) o Phi
    objects = test_objects if test_objects is not None else [m_regular_object(cs), H.module]
    for V in objects:
        act = act_via_H(V, H)
        lhs = act @ act.tensor(I)
        rhs = act @ identity_map(V).tensor(mu) @ associator(V, H.module, H.module)
        total = V.dim * n * n
        idx = None
        if budget is not None and total > budget:
            rng = rng or np.random.default_rng(0)
            idx = np.sort(rng.choice(total, size=budget, replace=False))
        bad = lhs.difference(rhs, idx)
        rep.add(f"action_equation[{V.name}]", bad is None, total if idx is None else len(idx),
                None if bad is None else f"fails on {lhs.source.label(bad)}")
        is_morphism(act, rep)
        # unit acts trivially: xi <| I = xi
        unit_act = act @ identity_map(V).tensor(unit) @ unit_maps(V)[0]
        b = unit_act.difference(identity_map(V))
        rep.add(f"unit_acts_trivially[{V.name}]", b is None, V.dim, None if b is None else f"fails on {V.label(b)}")
    return rep
