"""The braided Hopf algebra ``D`` with basis ``delta_y x x`` (``y`` in ``Y``, ``x`` in ``X``).

Basis vector ``(y, x)`` has index ``y * |X| + x``.  Any object ``V`` of the
braided category is a right ``D``-module through
``xi ^<| (delta_y x x) = delta_{y,||xi||} xi ^<| x``; the product, coproduct,
counit and antipode below are the ones compatible with that action and with
the tensor product of objects.
"""

from __future__ import annotations

import numpy as np

from .cat_c import associator, associator_inverse, unit_maps, unit_maps_inverse
from .cat_d import (
    braiding,
    conjugation_dobject,
    from_x_action,
    is_dmorphism,
    tensor_d,
    unit_dobject,
    validate_dobject,
    verify_hat_action,
    ygrade,
)
from .double import DoubleSystem, hat_images
from .linear import Morphism, identity_map
from .report import Report

__all__ = ["HopfD", "build_D", "act_via_D", "verify_hopf", "spot_check_hopf"]


class HopfD:
    def __init__(self, ds: DoubleSystem, check: bool = True):
        cs = ds.base
        if cs.e_in_m < 0:
            raise ValueError("D needs the group identity in M")
        if ds.circ_ldiv is None:
            s, t = _left_division_witness(cs)
            raise ValueError(
                f"no left division in (M, .): s . p = {cs.m_label(t)} has no unique solution for s = {cs.m_label(s)}"
            )
        X = cs.group
        n = X.order
        self.ds, self.cs, self.n = ds, cs, n
        self.dim = n * n
        y, x = np.divmod(np.arange(self.dim), n)
        self.y_of, self.x_of = y, x
        # ||delta_y x x|| solves y o a = y ~<| x
        a = ds.circ_ldiv[y, ds.tilde_ract[y, x]]
        self.ygrades = a
        z = np.arange(n)[:, None]
        az = ds.tilde_lact[a[None, :], z]  # [z, basis]
        new_y = ds.tilde_ract[y[None, :], az]
        new_x = X.mul[X.mul[X.inv[az], x[None, :]], z]
        hat_T = (new_y * n + new_x)[:, :, None]
        labels = [f"d{ds.label(yy)}x{ds.label(xx)}" for yy, xx in zip(y, x)]
        self.module = from_x_action(ds, a, hat_T, np.ones_like(hat_T), labels, "D", check=check)
        self.module.hopf = self
        self.hat_T = hat_T[:, :, 0]

    # -- basis helpers
    def index(self, y: int, x: int) -> int:
        return int(y) * self.n + int(x)

    def label(self, i: int) -> str:
        return self.module.label(i)

    def norm(self, idx):
        """``(|h|, <h>)`` as X indices."""
        cs = self.cs
        a = self.ygrades[idx]
        return cs.g_elems[self.ds.ybar[a]], cs.m_elems[self.ds.yang[a]]

    # -- structure constants
    def product_images(self, i, j):
        ds, X = self.ds, self.cs.group
        y, x = self.y_of[i], self.x_of[i]
        w, z = self.y_of[j], self.x_of[j]
        g = ds.tilde_tau[self.ygrades[i], self.ygrades[j]]
        py = ds.tilde_ract[y, g]
        px = X.mul[X.mul[X.inv[g], x], z]
        return np.where(w == ds.tilde_ract[y, x], py * self.n + px, -1)

    def coproduct_images(self, idx):
        """``(T1, T2)`` of shape ``(len(idx), |X|)``: the two factors for each ``z``."""
        X = self.cs.group
        ds = self.ds
        mul, inv = X.mul, X.inv
        idx = np.asarray(idx, dtype=np.int64)[:, None]
        y, x = self.y_of[idx], self.x_of[idx]
        hb, ha = self.norm(idx)
        nh = self.ygrades[idx]
        z = np.arange(self.n)[None, :]
        w = mul[inv[z], y]
        n2 = mul[mul[mul[mul[inv[hb], inv[z]], hb], mul[inv[x], z]], x]
        h2b = self.cs.g_elems[ds.ybar[n2]]
        h2a = self.cs.m_elems[ds.yang[n2]]
        n1 = mul[mul[h2b, nh], inv[h2a]]
        h1b = self.cs.g_elems[ds.ybar[n1]]
        k1 = mul[mul[hb, inv[h2b]], inv[h1b]]
        y1 = ds.tilde_ract[w, k1]
        x1 = mul[mul[mul[mul[h1b, h2b], inv[hb]], x], inv[h2a]]
        y2 = ds.tilde_ract[z, mul[hb, inv[h2b]]]
        x2 = mul[mul[h2b, inv[hb]], x]
        return y1 * self.n + x1, y2 * self.n + x2

    def antipode_images(self, idx):
        X = self.cs.group
        y, x = self.y_of[idx], self.x_of[idx]
        hb, ha = self.norm(idx)
        sy = X.mul[X.mul[X.inv[y], hb], X.inv[ha]]
        sx = X.mul[X.mul[ha, X.inv[x]], hb]
        return sy * self.n + sx

    # -- maps
    def mu(self) -> Morphism:
        DD = tensor_d(self.module, self.module)

        def fn(idx):
            i, j = np.divmod(idx, self.dim)
            T = self.product_images(i, j)[:, None]
            return T, np.ones_like(T)

        return Morphism(DD, self.module, fn, "mu")

    def delta(self) -> Morphism:
        DD = tensor_d(self.module, self.module)

        def fn(idx):
            T1, T2 = self.coproduct_images(idx)
            T = T1 * self.dim + T2
            return T, np.ones_like(T)

        return Morphism(self.module, DD, fn, "Delta")

    def antipode(self) -> Morphism:
        def fn(idx):
            T = self.antipode_images(idx)[:, None]
            return T, np.ones_like(T)

        return Morphism(self.module, self.module, fn, "S")

    def unit_vector(self) -> dict:
        """``I = sum_y delta_y x e``."""
        e = self.cs.group.identity
        return {self.index(y, e): 1 for y in range(self.n)}

    def unit_map(self) -> Morphism:
        k = unit_dobject(self.ds)
        T = np.array([sorted(self.unit_vector())], dtype=np.int64)
        return Morphism(k, self.module, lambda idx: (np.repeat(T, idx.size, 0), np.ones((idx.size, T.shape[1]), dtype=np.int64)), "unit")

    def counit_map(self) -> Morphism:
        k = unit_dobject(self.ds)
        e = self.ds.ey

        def fn(idx):
            T = np.where(self.y_of[idx] == e, 0, -1)[:, None]
            return T, np.ones_like(T)

        return Morphism(self.module, k, fn, "eps")

    # -- sparse vectors
    def product(self, h1: dict, h2: dict) -> dict:
        out: dict = {}
        for i, a in h1.items():
            for j, b in h2.items():
                k = int(self.product_images(np.array([i]), np.array([j]))[0])
                if k >= 0:
                    out[k] = out.get(k, 0) + a * b
        return {k: v for k, v in out.items() if v}

    def counit(self, h: dict) -> int:
        return sum(c for i, c in h.items() if self.y_of[i] == self.ds.ey)

    def coproduct(self, h: dict) -> dict:
        """``{(i, j): c}`` for ``sum c h_i x h_j``."""
        out: dict = {}
        for i, c in h.items():
            T1, T2 = self.coproduct_images(np.array([i]))
            for a, b in zip(T1[0], T2[0]):
                key = (int(a), int(b))
                out[key] = out.get(key, 0) + c
        return {k: v for k, v in out.items() if v}

    def S(self, h: dict) -> dict:
        out: dict = {}
        for i, c in h.items():
            k = int(self.antipode_images(np.array([i]))[0])
            out[k] = out.get(k, 0) + c
        return {k: v for k, v in out.items() if v}

    def structure_constants(self) -> dict:
        """Sparse tables for export; every coefficient is 1, written as the pair ``[1, 1]``."""
        i, j = np.divmod(np.arange(self.dim * self.dim), self.dim)
        k = self.product_images(i, j)
        live = k >= 0
        T1, T2 = self.coproduct_images(np.arange(self.dim))
        one = [1, 1]
        X = self.ds
        return {
            "basis": [[X.label(y), X.label(x)] for y, x in zip(self.y_of, self.x_of)],
            "ygrade": [X.label(v) for v in self.ygrades],
            "mu": [[int(a), int(b), int(c), one] for a, b, c in zip(i[live], j[live], k[live])],
            "delta": [[h, [[int(a), int(b), one] for a, b in zip(r1, r2) if a >= 0]] for h, (r1, r2) in enumerate(zip(T1, T2))],
            "S": [[h, int(v), one] for h, v in enumerate(self.antipode_images(np.arange(self.dim)))],
            "unit": sorted(self.unit_vector()),
            "counit": [int(b) for b in np.flatnonzero(self.y_of == self.ds.ey)],
        }


def _left_division_witness(cs):
    for s in range(cs.nM):
        row = cs.dot[s]
        if len(np.unique(row)) != cs.nM:
            missing = sorted(set(range(cs.nM)) - set(row.tolist()))
            return s, missing[0] if missing else int(row[0])
    return 0, 0


def build_D(ds: DoubleSystem, check: bool = True) -> HopfD:
    return HopfD(ds, check)


def act_via_D(V, D: HopfD) -> Morphism:
    """``V D -> V``, ``xi x (delta_y x x) -> delta_{y,||xi||} xi ^<| x``."""
    n = D.dim

    def fn(idx):
        i, h = np.divmod(idx, n)
        T, C = hat_images(V, i, D.x_of[h])
        keep = (D.y_of[h] == ygrade(V, i))[:, None]
        return np.where(keep, T, -1), np.where(keep, C, 0)

    return Morphism(tensor_d(V, D.module), V, fn, f"act_{V.name}")


def _sample(total, budget, rng):
    if budget is None or total <= budget:
        return None
    rng = rng or np.random.default_rng(0)
    return np.sort(rng.choice(total, size=budget, replace=False))


def _compare(rep, name, f, g, idx=None):
    k = f.difference(g, idx)
    checked = f.source.dim if idx is None else len(idx)
    rep.add(name, k is None, checked, None if k is None else f"fails on {f.source.label(k)}")


def coproduct_chain(V, W, D: HopfD) -> tuple[Morphism, Morphism]:
    """Both sides of the coproduct consistency condition on ``(V W) D -> V W``."""
    Dm = D.module
    I = identity_map
    VW = tensor_d(V, W)
    DD = tensor_d(Dm, Dm)
    lhs = act_via_D(VW, D)
    rhs = (
        act_via_D(V, D).tensor(act_via_D(W, D))
        @ associator_inverse(V, Dm, tensor_d(W, Dm))
        @ I(V).tensor(associator(Dm, W, Dm))
        @ I(V).tensor(braiding(W, Dm).tensor(I(Dm)))
        @ I(V).tensor(associator_inverse(W, Dm, Dm))
        @ associator(V, W, DD)
        @ I(VW).tensor(D.delta())
    )
    return lhs, rhs


def braided_product(D: HopfD) -> Morphism:
    """Product on ``D D`` built from ``Phi`` and ``Psi``: ``(D D)(D D) -> D D``."""
    Dm = D.module
    I = identity_map
    DD = tensor_d(Dm, Dm)
    mu = D.mu()
    return (
        mu.tensor(mu)
        @ associator_inverse(Dm, Dm, DD)
        @ I(Dm).tensor(associator(Dm, Dm, Dm))
        @ I(Dm).tensor(braiding(Dm, Dm).tensor(I(Dm)))
        @ I(Dm).tensor(associator_inverse(Dm, Dm, Dm))
        @ associator(Dm, Dm, DD)
    )


def verify_hopf(D: HopfD, budget: int | None = None, rng=None, include_g: bool = True, test_object=None) -> Report:
    """Axioms (a) to (f) of the braided Hopf algebra, plus the informational check (g).

    ``budget`` caps the number of source basis vectors per sweep; ``None`` is
    exhaustive.  ``test_object`` is the object used for the triple-action check
    in (e) (defaults to the conjugation object, which is much smaller than ``D``).
    """
    ds = D.ds
    Dm = D.module
    n = D.dim
    I = identity_map(Dm)
    rep = Report("Hopf algebra D")

    ok = np.all(ds.circ[D.y_of, D.ygrades] == ds.tilde_ract[D.y_of, D.x_of])
    rep.add("grade_equation", bool(ok), n, "y o ||h|| != y ~<| x")
    validate_dobject(Dm, rep)
    verify_hat_action(Dm, rep, pairs=budget, rng=rng)
    T, _ = hat_images(Dm, np.repeat(np.arange(n), D.n), np.tile(np.arange(D.n), n))
    ok = np.array_equal(T[:, 0].reshape(n, D.n), D.hat_T.T)
    rep.add("hat_matches_formula", bool(ok), n * D.n, "derived X-action differs from the displayed one")

    # (a) product
    mu = D.mu()
    i, j = np.divmod(np.arange(n * n), n)
    k = D.product_images(i, j)
    live = k >= 0
    wrong = D.ygrades[k[live]] != ds.circ[D.ygrades[i[live]], D.ygrades[j[live]]]
    rep.add("(a) ygrade_multiplicative", not np.any(wrong), int(live.sum()),
            None if not np.any(wrong) else f"at {D.label(i[live][np.argmax(wrong)])}, {D.label(j[live][np.argmax(wrong)])}")
    lhs = mu @ mu.tensor(I)
    rhs = mu @ I.tensor(mu) @ associator(Dm, Dm, Dm)
    _compare(rep, "(a) twisted_associativity", lhs, rhs, _sample(n ** 3, budget, rng))
    unit = D.unit_map()
    l, r = unit_maps(Dm)
    _compare(rep, "(a) left_unit", mu @ unit.tensor(I) @ r, I)
    _compare(rep, "(a) right_unit", mu @ I.tensor(unit) @ l, I)

    # (b) morphisms of the braided category
    is_dmorphism(mu, rep)
    is_dmorphism(unit, rep)
    eps = D.counit_map()
    is_dmorphism(eps, rep)

    # (c) coproduct consistency
    delta = D.delta()
    T1, T2 = D.coproduct_images(np.arange(n))
    rep.add("(c) coproduct_support", T1.shape[1] == D.n and np.all(T1 >= 0), n, "a coproduct lacks |X| terms")
    g1, g2 = D.ygrades[T1], D.ygrades[T2]
    ok = np.all(ds.circ[g1, g2] == D.ygrades[:, None])
    rep.add("(c) coproduct_ygrade", bool(ok), n * D.n, "||h_1|| o ||h_2|| != ||h||")
    lhs, rhs = coproduct_chain(Dm, Dm, D)
    _compare(rep, "(c) coproduct_consistency", lhs, rhs, _sample(n ** 3, budget, rng))

    # (d) counit
    k0 = unit_dobject(ds)
    li, ri = unit_maps_inverse(Dm, k0)
    _compare(rep, "(d) left_counit", li @ eps.tensor(I) @ delta, I)
    _compare(rep, "(d) right_counit", ri @ I.tensor(eps) @ delta, I)
    dI = D.coproduct(D.unit_vector())
    want = {(a, b): 1 for a in D.unit_vector() for b in D.unit_vector()}
    rep.add("(d) Delta(I) = I x I", dI == want, 1, "Delta(I) != I x I")
    rep.add("(d) eps(I) = 1", D.counit(D.unit_vector()) == 1, 1, "eps(I) != 1")

    # (e) coassociativity up to Phi
    lhs = associator(Dm, Dm, Dm) @ delta.tensor(I) @ delta
    rhs = I.tensor(delta) @ delta
    _compare(rep, "(e) coassociativity", lhs, rhs)
    V = test_object if test_object is not None else conjugation_dobject(ds)
    VVV = tensor_d(tensor_d(V, V), V)
    phi = associator(V, V, V)
    lhs = act_via_D(phi.target, D) @ phi.tensor(I)
    rhs = phi @ act_via_D(VVV, D)
    _compare(rep, "(e) associator_commutes_with_action", lhs, rhs, _sample(VVV.dim * n, budget, rng))

    # (f) antipode
    S = D.antipode()
    ue = unit @ eps
    _compare(rep, "(f) mu(I x S)Delta = I eps", mu @ I.tensor(S) @ delta, ue)
    _compare(rep, "(f) mu(S x I)Delta = I eps", mu @ S.tensor(I) @ delta, ue)

    if include_g:
        lhs = delta @ mu
        rhs = braided_product(D) @ delta.tensor(delta)
        k = lhs.difference(rhs, _sample(n * n, budget, rng))
        rep.add("(g) coproduct_multiplicative", k is None, n * n if budget is None else min(n * n, budget),
                None if k is None else f"fails on {lhs.source.label(k)}")
    return rep


def spot_check_hopf(D: HopfD, count: int = 100, rng=None) -> Report:
    """Counit and antipode identities on ``count`` random basis elements."""
    rng = rng or np.random.default_rng(0)
    idx = np.sort(rng.choice(D.dim, size=min(count, D.dim), replace=False))
    rep = Report("Hopf algebra D (spot check)")
    Dm = D.module
    I = identity_map(Dm)
    delta = D.delta()
    eps = D.counit_map()
    k0 = unit_dobject(D.ds)
    li, ri = unit_maps_inverse(Dm, k0)
    mu, S, unit = D.mu(), D.antipode(), D.unit_map()
    _compare(rep, "left_counit", li @ eps.tensor(I) @ delta, I, idx)
    _compare(rep, "right_counit", ri @ I.tensor(eps) @ delta, I, idx)
    _compare(rep, "mu(I x S)Delta = I eps", mu @ I.tensor(S) @ delta, unit @ eps, idx)
    _compare(rep, "mu(S x I)Delta = I eps", mu @ S.tensor(I) @ delta, unit @ eps, idx)
    T1, T2 = D.coproduct_images(idx)
    ok = np.all(D.ds.circ[D.ygrades[T1], D.ygrades[T2]] == D.ygrades[idx][:, None])
    rep.add("coproduct_ygrade", bool(ok), idx.size * D.n, "||h_1|| o ||h_2|| != ||h||")
    return rep
