"""The double construction: ``Y = X`` with ``(u s) o (v t) = v u s t``.

Together with ``y ~<| x = x^-1 y x``, ``tau~(v t, w p) = tau(t, p)`` and
``v t ~|> w p = v^-1 w p v'`` (where ``v t ~<| w p = v' t'``), the set
``(Y, o)`` behaves towards ``X`` exactly as ``(M, .)`` does towards ``G``.
Elements of ``Y`` share the element indices of ``X``.

This module also provides the right ``X``-action ``^<|`` on objects of the
braided category, built from ``<|`` and ``|>`` through the factorization
``x = u s``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linear import chain
from .report import Report
from .transversal import CosetSystem, matched_pair_checks

__all__ = ["DoubleSystem", "build_double", "verify_double", "y_factorize", "hat_images", "hat_action"]


@dataclass(eq=False)
class DoubleSystem:
    base: CosetSystem
    circ: np.ndarray  # [y, z] -> y o z
    tilde_ract: np.ndarray  # [y, x] -> x^-1 y x
    tilde_lact: np.ndarray  # [y, x] -> y ~|> x in X
    tilde_lact_alt: np.ndarray  # same, from the second form t x t'^-1
    tilde_tau: np.ndarray  # [y, z] -> tau(<y>, <z>) as an X index
    ey: int
    fy: int
    ybar: np.ndarray  # y -> |y| as a local G index, y = |y|^-1 <y>
    yang: np.ndarray  # y -> <y> as a local M index
    circ_ldiv: np.ndarray | None  # [y, c] -> a with y o a = c, or -1

    @property
    def group(self):
        return self.base.group

    @property
    def n(self) -> int:
        return self.base.group.order

    def y_of(self, gbar, s):
        """Y index with ``|y| = gbar`` and ``<y> = s``."""
        cs = self.base
        return cs.x_of(cs.ginv[gbar], s)

    def label(self, y) -> str:
        return self.base.x_label(y)


def build_double(cs: CosetSystem) -> DoubleSystem:
    X = cs.group
    n = X.order
    fu, fs = cs.fact_u, cs.fact_s
    y = np.arange(n)
    # (u s) o (v t) = v (u s) t
    v = cs.g_elems[fu][None, :]
    t = cs.m_elems[fs][None, :]
    circ = X.mul[X.mul[v, y[:, None]], t]
    tr = X.mul[X.mul[X.inv[None, :], y[:, None]], y[None, :]]  # [y, x] -> x^-1 y x
    vy = cs.g_elems[fu]  # v of y = v t
    ty = cs.m_elems[fs]
    vp = cs.g_elems[fu[tr]]
    tp = cs.m_elems[fs[tr]]
    lact = X.mul[X.mul[X.inv[vy][:, None], y[None, :]], vp]
    lact_alt = X.mul[X.mul[ty[:, None], y[None, :]], X.inv[tp]]
    ttau = cs.g_elems[cs.tau[fs[:, None], fs[None, :]]]
    ey = X.identity
    fy = int(cs.m_elems[cs.e_m])
    ybar = cs.ginv[fu]
    yang = fs.copy()
    circ_ldiv = None
    if cs.has_left_division:
        circ_ldiv = _circ_left_division(cs, circ)
    return DoubleSystem(cs, circ, tr, lact, lact_alt, ttau, ey, fy, ybar, yang, circ_ldiv)


def _circ_left_division(cs: CosetSystem, circ: np.ndarray) -> np.ndarray:
    n = circ.shape[0]
    out = np.full((n, n), -1, dtype=np.int64)
    for yy in range(n):
        row = circ[yy]
        if len(np.unique(row)) == n:
            out[yy, row] = np.arange(n)
    return out


def y_factorize(ds: DoubleSystem, y):
    """``(|y|, <y>)`` as local ``G`` and ``M`` indices, so that ``y = |y|^-1 <y>``."""
    return ds.ybar[y], ds.yang[y]


def verify_double(ds: DoubleSystem) -> Report:
    cs = ds.base
    X = cs.group
    rep = Report("double")
    matched_pair_checks(
        rep, ds.circ, ds.tilde_tau, ds.tilde_lact, ds.tilde_ract, X.mul, X.inv, X.identity, ds.ey, ds.fy,
        ds.label, ds.label,
    )
    # definition of o from the factorizations: (u s) o (v t) = v u tau(s, t) (s . t)
    y, z = np.divmod(np.arange(ds.n * ds.n), ds.n)
    u, s = cs.fact_u[y], cs.fact_s[y]
    v, t = cs.fact_u[z], cs.fact_s[z]
    alt = cs.x_of(cs.gmul[cs.gmul[v, u], cs.tau[s, t]], cs.dot[s, t])
    bad = np.flatnonzero(alt != ds.circ[y, z])
    rep.add("circ_formula", bad.size == 0, y.size,
            None if bad.size == 0 else f"{ds.label(y[bad[0]])} o {ds.label(z[bad[0]])}")
    bad = np.argwhere(ds.tilde_lact != ds.tilde_lact_alt)
    rep.add("tilde_lact_two_forms", bad.size == 0, ds.n * ds.n,
            None if bad.size == 0 else f"y={ds.label(bad[0][0])}, x={ds.label(bad[0][1])}")
    cols_ok = all(len(np.unique(ds.circ[:, c])) == ds.n for c in range(ds.n))
    rep.add("right_division", cols_ok, ds.n * ds.n, "a column of o is not a bijection")
    # (v t)^L = v^-1 t^-1
    vv = cs.g_elems[cs.fact_u]
    tt = cs.m_elems[cs.fact_s]
    linv = X.mul[X.inv[vv], X.inv[tt]]
    bad = np.flatnonzero(ds.circ[linv, np.arange(ds.n)] != ds.ey)
    rep.add("left_inverse_formula", bad.size == 0, ds.n, None if bad.size == 0 else f"y={ds.label(bad[0])}")
    return rep


def hat_images(V, idx, x):
    """ELL block for ``xi_idx ^<| x``; ``x`` is a scalar or one X index per row.

    ``xi ^<| u s = (xi <| u) ^<| s`` with
    ``xi ^<| s = ((s^L <| |xi|^-1) |> xi) <| tau(s^L, s)``.
    """
    cs = V.cs
    idx = np.asarray(idx, dtype=np.int64)
    x = np.broadcast_to(np.asarray(x, dtype=np.int64), idx.shape)
    u = cs.fact_u[x]
    s = cs.fact_s[x]
    sL = cs.left_inverse(s)
    T, C = V.act_images(idx, u)
    T, C = chain(T, C, lambda t, p: V.mact_images(t, cs.ract[sL[p], cs.ginv[V.ggrade(t)]]), np.arange(idx.size))
    return chain(T, C, lambda t, p: V.act_images(t, cs.tau[sL[p], s[p]]), np.arange(idx.size))


def hat_action(V, xi: dict, x: int) -> dict:
    """``xi ^<| x`` for a sparse vector ``{basis index: coefficient}``."""
    out: dict = {}
    for i, c in xi.items():
        T, C = hat_images(V, np.array([i]), x)
        for t, a in zip(T[0], C[0]):
            if t >= 0 and a:
                out[int(t)] = out.get(int(t), 0) + c * int(a)
    return {k: v for k, v in out.items() if v}
