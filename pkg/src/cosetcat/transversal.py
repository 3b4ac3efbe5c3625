"""Coset transversals and the structure they induce.

Given a finite group ``X``, a subgroup ``G`` and a set ``M`` of coset
representatives, every ``x`` in ``X`` factors uniquely as ``x = u s`` with
``u`` in ``G`` and ``s`` in ``M``.  Reading off that factorization gives

* ``s t = tau(s, t) (s . t)``   (a binary operation on ``M`` and a cocycle)
* ``s u = (s |> u) (s <| u)``   (a left action of ``M`` on ``G`` and a right action of ``G`` on ``M``)

All of these are stored as dense integer tables over local indices: ``M``
is indexed in the order given, ``G`` in the order of its sorted element
indices in ``X``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .permgroup import FiniteGroup, Permutation, is_transversal, symmetric
from .report import Report

__all__ = [
    "CosetSystem",
    "build_coset_system",
    "verify_matched_pair",
    "matched_pair_checks",
    "StructureReport",
    "classify",
    "cayley_embed",
    "ReconstructedGroup",
    "reconstruct_group",
    "SearchResult",
    "search_transversals",
]

_GRID_CHUNK = 4_000_000


@dataclass(eq=False)
class CosetSystem:
    group: FiniteGroup
    g_elems: np.ndarray  # local G index -> X index
    m_elems: np.ndarray  # local M index -> X index
    g_local: np.ndarray  # X index -> local G index or -1
    m_local: np.ndarray
    gmul: np.ndarray
    ginv: np.ndarray
    g_id: int
    fact_u: np.ndarray  # X index -> G part
    fact_s: np.ndarray  # X index -> M part
    dot: np.ndarray
    tau: np.ndarray
    lact: np.ndarray  # [s, u] -> s |> u in G
    ract: np.ndarray  # [s, u] -> s <| u in M
    e_m: int
    f_m: int
    e_in_m: int  # local index of the group identity in M, or -1
    rdiv: np.ndarray  # [t, s] -> p with p . s = t
    ldiv: np.ndarray  # [s, t] -> p with s . p = t, or -1
    rinv: np.ndarray  # s -> the unique p with s . p = e_m, or -1
    names: dict = field(default_factory=dict)

    @property
    def nG(self) -> int:
        return len(self.g_elems)

    @property
    def nM(self) -> int:
        return len(self.m_elems)

    @property
    def has_left_division(self) -> bool:
        return bool(np.all(self.ldiv >= 0))

    @property
    def has_identity(self) -> bool:
        return self.e_in_m >= 0

    def left_inverse(self, t):
        """``t^L`` with ``t^L . t = e_m``."""
        return self.rdiv[self.e_m, t]

    def right_inverse(self, s):
        """``s^R`` with ``s . s^R = e_m``; -1 where none exists or it is not unique."""
        return self.rinv[s]

    def x_of(self, u, s):
        """X index of ``u s``."""
        return self.group.mul[self.g_elems[u], self.m_elems[s]]

    def g_label(self, u) -> str:
        return self._label(self.g_elems[int(u)])

    def m_label(self, s) -> str:
        return self._label(self.m_elems[int(s)])

    def x_label(self, x) -> str:
        return self._label(int(x))

    def _label(self, x: int) -> str:
        p = self.group.elements[int(x)]
        return self.names.get(p, p.cycle_string())

    def x_index(self, p: Permutation | str) -> int:
        """X index of a permutation, a cycle string or one of the system's element names."""
        if isinstance(p, str):
            for perm, name in self.names.items():
                if name == p:
                    return self.group.idx(perm)
        return self.group.idx(p)

    def m_index(self, p: Permutation | str) -> int:
        i = int(self.m_local[self.x_index(p)])
        if i < 0:
            raise KeyError(f"{p} not in M")
        return i

    def g_index(self, p: Permutation | str) -> int:
        i = int(self.g_local[self.x_index(p)])
        if i < 0:
            raise KeyError(f"{p} not in G")
        return i

    def __repr__(self) -> str:
        return f"CosetSystem(|X|={self.group.order}, |G|={self.nG}, M=[{', '.join(self.m_label(s) for s in range(self.nM))}])"


def build_coset_system(
    group: FiniteGroup,
    G: Iterable[int | Permutation | str],
    M: Sequence[int | Permutation | str],
    names: dict | None = None,
) -> CosetSystem:
    """Tabulate the structure induced by the transversal ``M`` of ``G`` in ``group``."""

    def as_idx(items):
        return np.array([i if isinstance(i, (int, np.integer)) else group.idx(i) for i in items], dtype=np.int64)

    g_elems = np.unique(as_idx(G))
    m_elems = as_idx(M)
    ok, why = is_transversal(group, g_elems, m_elems)
    if not ok:
        raise ValueError(f"not a transversal: {why}")
    nX, nG, nM = group.order, len(g_elems), len(m_elems)
    g_local = np.full(nX, -1, dtype=np.int64)
    g_local[g_elems] = np.arange(nG)
    m_local = np.full(nX, -1, dtype=np.int64)
    m_local[m_elems] = np.arange(nM)
    gmul = g_local[group.mul[np.ix_(g_elems, g_elems)]]
    ginv = g_local[group.inv[g_elems]]
    g_id = int(g_local[group.identity])

    fact_u = np.empty(nX, dtype=np.int64)
    fact_s = np.empty(nX, dtype=np.int64)
    xs = group.mul[np.ix_(g_elems, m_elems)]  # [u, s] -> u s
    fact_u[xs] = np.arange(nG)[:, None]
    fact_s[xs] = np.arange(nM)[None, :]

    st = group.mul[np.ix_(m_elems, m_elems)]
    dot, tau = fact_s[st], fact_u[st]
    su = group.mul[np.ix_(m_elems, g_elems)]
    lact, ract = fact_u[su], fact_s[su]

    e_m = int(fact_s[group.identity])
    f_m = int(g_local[m_elems[e_m]])
    e_in_m = int(m_local[group.identity])

    rdiv = np.empty((nM, nM), dtype=np.int64)
    for s in range(nM):
        rdiv[dot[:, s], s] = np.arange(nM)
    ldiv = np.full((nM, nM), -1, dtype=np.int64)
    for s in range(nM):
        row = dot[s]
        if len(np.unique(row)) == nM:
            ldiv[s, row] = np.arange(nM)
    rinv = np.full(nM, -1, dtype=np.int64)
    for s in range(nM):
        hits = np.flatnonzero(dot[s] == e_m)
        if hits.size == 1:
            rinv[s] = hits[0]

    return CosetSystem(
        group, g_elems, m_elems, g_local, m_local, gmul, ginv, g_id, fact_u, fact_s,
        dot, tau, lact, ract, e_m, f_m, e_in_m, rdiv, ldiv, rinv, dict(names or {}),
    )


def _grid(*sizes):
    return [a.ravel() for a in np.meshgrid(*[np.arange(n) for n in sizes], indexing="ij")]


def _first_bad(lhs, rhs):
    bad = np.flatnonzero(lhs != rhs)
    return None if bad.size == 0 else int(bad[0])


def matched_pair_checks(
    report: Report,
    dot, tau, lact, ract, gmul, ginv, g_id: int, e_m: int, f_m: int,
    m_label: Callable[[int], str], g_label: Callable[[int], str],
) -> Report:
    """Check the matched-pair identities for tables over an ``M``-set and a group ``G``.

    Every identity is swept over its full grid of arguments.  Large grids
    are split along the first argument.
    """
    nM, nG = dot.shape[0], gmul.shape[0]

    def sweep(name, sizes, fn, fmt):
        total = int(np.prod(sizes))
        step = max(1, _GRID_CHUNK // max(1, total // sizes[0]))
        for start in range(0, sizes[0], step):
            stop = min(sizes[0], start + step)
            args = _grid(stop - start, *sizes[1:])
            args[0] = args[0] + start
            lhs, rhs = fn(*args)
            k = _first_bad(lhs, rhs)
            if k is not None:
                vals = [int(a[k]) for a in args]
                report.add(name, False, total, fmt(*vals) + f": {int(lhs[k])} != {int(rhs[k])}")
                return
        report.add(name, True, total)

    M, Gl = m_label, g_label

    def r1(S, T, U):
        tu = lact[T, U]
        lhs = lact[S, tu]
        rhs = gmul[gmul[tau[S, T], lact[dot[S, T], U]], ginv[tau[ract[S, tu], ract[T, U]]]]
        return lhs, rhs

    sweep("action_composite", (nM, nM, nG), r1,
          lambda s, t, u: f"s={M(s)}, t={M(t)}, u={Gl(u)}")

    def r2(S, T, U):
        return ract[dot[S, T], U], dot[ract[S, lact[T, U]], ract[T, U]]

    sweep("ract_dot", (nM, nM, nG), r2, lambda s, t, u: f"s={M(s)}, t={M(t)}, u={Gl(u)}")

    def r3(S, U, V):
        return lact[S, gmul[U, V]], gmul[lact[S, U], lact[ract[S, U], V]]

    sweep("lact_product", (nM, nG, nG), r3, lambda s, u, v: f"s={M(s)}, u={Gl(u)}, v={Gl(v)}")

    def r4(S, U, V):
        return ract[S, gmul[U, V]], ract[ract[S, U], V]

    sweep("ract_action", (nM, nG, nG), r4, lambda s, u, v: f"s={M(s)}, u={Gl(u)}, v={Gl(v)}")

    def r5(P, S, T):
        tst = tau[S, T]
        lhs = gmul[tau[P, S], tau[dot[P, S], T]]
        rhs = gmul[lact[P, tst], tau[ract[P, tst], dot[S, T]]]
        return lhs, rhs

    sweep("cocycle", (nM, nM, nM), r5, lambda p, s, t: f"p={M(p)}, s={M(s)}, t={M(t)}")

    def r6(P, S, T):
        return dot[ract[P, tau[S, T]], dot[S, T]], dot[dot[P, S], T]

    sweep("twisted_associativity", (nM, nM, nM), r6, lambda p, s, t: f"p={M(p)}, s={M(s)}, t={M(t)}")

    # identities involving the left identity e_m and f_m = e_m seen in G
    V = np.arange(nG)
    T = np.arange(nM)
    fmi = int(ginv[f_m])

    def single(name, lhs, rhs, fmt):
        k = _first_bad(np.asarray(lhs), np.asarray(rhs))
        report.add(name, k is None, int(np.size(lhs)), None if k is None else fmt(k))

    single("left_identity", dot[e_m, T], T, lambda k: f"e_m . {M(k)} != {M(k)}")
    single("unit_ract", ract[e_m, V], np.full(nG, e_m), lambda k: f"v={Gl(k)}")
    single("unit_lact", lact[e_m, V], gmul[gmul[f_m, V], fmi], lambda k: f"v={Gl(k)}")
    single("lact_identity", lact[T, g_id], np.full(nM, g_id), lambda k: f"t={M(k)}")
    single("ract_identity", ract[T, g_id], T, lambda k: f"t={M(k)}")
    single("tau_unit", tau[e_m, T], np.full(nM, f_m), lambda k: f"t={M(k)}")
    tf = ract[T, fmi]
    single("lact_unit_inverse", lact[T, fmi], ginv[tau[tf, e_m]], lambda k: f"t={M(k)}")
    single("ract_unit_inverse", dot[tf, e_m], T, lambda k: f"t={M(k)}")
    return report


def verify_matched_pair(cs: CosetSystem) -> Report:
    """Exhaustively check the identities tying ``dot``, ``tau``, ``|>`` and ``<|`` together."""
    rep = Report("matched pair")
    # the factorization itself
    x = cs.x_of(cs.fact_u, cs.fact_s)
    rep.add("factorization", bool(np.all(x == np.arange(cs.group.order))), cs.group.order, "u s != x")
    return matched_pair_checks(
        rep, cs.dot, cs.tau, cs.lact, cs.ract, cs.gmul, cs.ginv, cs.g_id, cs.e_m, cs.f_m,
        cs.m_label, cs.g_label,
    )


@dataclass
class StructureReport:
    has_right_division: bool
    has_left_division: bool
    has_two_sided_identity: bool
    has_right_identity: bool
    contains_group_identity: bool
    is_subgroup: bool
    G_is_normal: bool
    tau_trivial: bool
    ract_trivial: bool
    dot_is_group: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def classify(cs: CosetSystem) -> StructureReport:
    """Structural flags of ``(M, .)``; subgroup and normality are decided from ``X`` directly."""
    X = cs.group
    nM = cs.nM
    right_div = all(len(np.unique(cs.dot[:, s])) == nM for s in range(nM))
    left_div = cs.has_left_division
    two_sided = bool(np.all(cs.dot[:, cs.e_m] == np.arange(nM)))
    assoc = _associative(cs.dot)
    is_sub = X.is_subgroup(cs.m_elems)
    g = cs.g_elems
    conj = X.mul[X.mul[np.arange(X.order)[:, None], g[None, :]], X.inv[:, None]]
    normal = bool(np.all(np.isin(conj, g)))
    return StructureReport(
        has_right_division=right_div,
        has_left_division=left_div,
        has_two_sided_identity=two_sided,
        has_right_identity=any(bool(np.all(cs.dot[:, r] == np.arange(nM))) for r in range(nM)),
        contains_group_identity=cs.e_in_m >= 0,
        is_subgroup=is_sub,
        G_is_normal=normal,
        tau_trivial=bool(np.all(cs.tau == cs.g_id)),
        ract_trivial=bool(np.all(cs.ract == np.arange(nM)[:, None])),
        dot_is_group=assoc and two_sided and left_div and right_div,
    )


def _associative(op: np.ndarray) -> bool:
    n = op.shape[0]
    a, b, c = _grid(n, n, n)
    return bool(np.all(op[op[a, b], c] == op[a, op[b, c]]))


def cayley_embed(op: np.ndarray) -> CosetSystem:
    """Realize a finite operation with a left identity and right division as a transversal.

    ``op[f, g]`` is ``f . g``.  Each ``g`` maps to the permutation ``sigma(g)``
    of the underlying set with ``sigma(g)(f . g) = f``.  The group is the full
    symmetric group on the set, ``G`` the stabilizer of the left identity, and
    ``M`` the image of ``sigma`` in the input order.  The induced operation on
    ``M`` reproduces ``op`` index for index.
    """
    op = np.asarray(op, dtype=np.int64)
    n = op.shape[0]
    if op.shape != (n, n) or op.min() < 0 or op.max() >= n:
        raise ValueError("operation table must be square with entries in range")
    left_ids = [e for e in range(n) if np.all(op[e] == np.arange(n))]
    if not left_ids:
        raise ValueError("operation has no left identity")
    for g in range(n):
        if len(np.unique(op[:, g])) != n:
            raise ValueError("operation lacks right division")
    e_f = left_ids[0]
    X = symmetric(n)
    sigmas = []
    for g in range(n):
        img = np.empty(n, dtype=np.int64)
        img[op[:, g]] = np.arange(n)
        sigmas.append(Permutation(img))
    G = X.stabilizer(e_f)
    return build_coset_system(X, G, sigmas)


@dataclass
class ReconstructedGroup:
    """The group rebuilt on pairs ``(u, s)``, pair index ``u * |M| + s``."""

    mul: np.ndarray
    identity: int
    left_inverse: np.ndarray
    to_x: np.ndarray  # pair index -> X index of u s
    report: Report

    @property
    def order(self) -> int:
        return len(self.to_x)


def reconstruct_group(cs: CosetSystem) -> ReconstructedGroup:
    """Rebuild ``X`` from ``(G, M, ., tau, |>, <|)`` alone and check it matches."""
    nG, nM = cs.nG, cs.nM
    n = nG * nM
    a, b = _grid(n, n)
    u, s = np.divmod(a, nM)
    v, t = np.divmod(b, nM)
    sv = cs.ract[s, v]
    pu = cs.gmul[cs.gmul[u, cs.lact[s, v]], cs.tau[sv, t]]
    ps = cs.dot[sv, t]
    mul = (pu * nM + ps).reshape(n, n)
    fmi = cs.ginv[cs.f_m]
    ident = int(fmi * nM + cs.e_m)
    vv, tt = np.divmod(np.arange(n), nM)
    tl = cs.left_inverse(tt)
    vinv = cs.ginv[vv]
    li_u = cs.gmul[cs.gmul[fmi, cs.ginv[cs.tau[tl, tt]]], cs.lact[tl, vinv]]
    li_s = cs.ract[tl, vinv]
    linv = li_u * nM + li_s
    to_x = cs.x_of(vv, tt)

    rep = Report("reconstruction")
    idx = np.arange(n)
    rep.add("identity", bool(np.all(mul[ident] == idx) and np.all(mul[:, ident] == idx)), n, "pair identity fails")
    rep.add("left_inverse", bool(np.all(mul[linv, idx] == ident)), n, "left inverse fails")
    assoc_ok = True
    for x in range(n):  # row by row keeps memory at n^2
        if not np.all(mul[mul[x]] == mul[x][mul]):
            assoc_ok = False
            break
    rep.add("associativity", assoc_ok, n ** 3, f"first failure in row {x}")
    hom = cs.group.mul[to_x[:, None], to_x[None, :]] == to_x[mul]
    rep.add("isomorphism", bool(np.all(hom)) and len(np.unique(to_x)) == n == cs.group.order, n * n,
            "pair product does not match the group product")
    return ReconstructedGroup(mul, ident, linv, to_x, rep)


@dataclass
class SearchResult:
    systems: list[CosetSystem]
    examined: int
    partial: bool


def search_transversals(
    group: FiniteGroup,
    G: Iterable[int],
    predicate: Callable[[CosetSystem], bool] | None = None,
    limit: int | None = None,
    budget: int | None = None,
) -> SearchResult:
    """Enumerate transversals of ``G``, in a fixed order, keeping those passing ``predicate``.

    Cosets are ordered by their smallest element, so the coset ``G`` itself
    comes first; representatives within a coset are tried in index order.
    ``budget`` caps the number of candidates examined.
    """
    g = np.unique(np.asarray(list(G), dtype=np.int64))
    if not group.is_subgroup(g):
        raise ValueError("G is not a subgroup")
    seen = np.zeros(group.order, dtype=bool)
    cosets = []
    for x in range(group.order):
        if not seen[x]:
            members = np.sort(group.mul[g, x])
            seen[members] = True
            cosets.append(members.tolist())
    out, examined = [], 0
    for choice in itertools.product(*cosets):
        if budget is not None and examined >= budget:
            return SearchResult(out, examined, True)
        examined += 1
        cs = build_coset_system(group, g, list(choice))
        if predicate is None or predicate(cs):
            out.append(cs)
            if limit is not None and len(out) >= limit:
                return SearchResult(out, examined, examined < _count(cosets))
    return SearchResult(out, examined, False)


def _count(cosets) -> int:
    total = 1
    for c in cosets:
        total *= len(c)
    return total
