"""Exact sparse linear maps between finite-dimensional objects.

A map is described by what it does to basis vectors: ``images(idx)`` returns
``(T, C)``, two integer arrays of shape ``(len(idx), K)``.  Row ``i`` says
that basis vector ``idx[i]`` maps to ``sum_k C[i, k] * e_{T[i, k]}``; slots
with ``T == -1`` are padding.  Duplicate targets within a row are allowed and
only merged when maps are compared.

Coefficients are int64.  Every structure constant in this package is an
integer, so no rational arithmetic is needed on the hot paths.

Column-vector convention: a right action is stored so that the matrix of
``u v`` is ``A(v) @ A(u)``, i.e. "apply ``u`` then ``v``".
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable

import numpy as np

__all__ = [
    "Morphism",
    "identity_map",
    "stored_map",
    "combine",
    "flatten",
    "chain",
    "to_ell",
    "canonical_rows",
    "nullspace",
    "DEFAULT_CHUNK",
    "set_threads",
]

DEFAULT_CHUNK = 1 << 17
_THREADS = os.cpu_count() or 1


def set_threads(n: int | None) -> int:
    """Worker threads used by comparison sweeps; ``None`` means one per CPU."""
    global _THREADS
    _THREADS = max(1, int(n)) if n else (os.cpu_count() or 1)
    return _THREADS


def flatten(T: np.ndarray, C: np.ndarray):
    """``(rows, targets, coefs)`` for the live slots of an ELL block."""
    mask = (T >= 0) & (C != 0)
    rows = np.nonzero(mask)[0]
    return rows, T[mask], C[mask]


def to_ell(rows: np.ndarray, targets: np.ndarray, coefs: np.ndarray, n: int):
    """Regroup COO triples (any order) into an ELL block with ``n`` rows."""
    if rows.size == 0:
        return np.full((n, 1), -1, dtype=np.int64), np.zeros((n, 1), dtype=np.int64)
    order = np.argsort(rows, kind="stable")
    rows, targets, coefs = rows[order], targets[order], coefs[order]
    counts = np.bincount(rows, minlength=n)
    K = int(counts.max())
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    pos = np.arange(rows.size) - starts[rows]
    T = np.full((n, K), -1, dtype=np.int64)
    C = np.zeros((n, K), dtype=np.int64)
    T[rows, pos] = targets
    C[rows, pos] = coefs
    return T, C


def canonical_rows(rows: np.ndarray, targets: np.ndarray, coefs: np.ndarray):
    """Merge duplicate ``(row, target)`` pairs and drop zero coefficients."""
    if rows.size == 0:
        return rows, targets, coefs
    order = np.lexsort((targets, rows))
    rows, targets, coefs = rows[order], targets[order], coefs[order]
    new = np.ones(rows.size, dtype=bool)
    new[1:] = (rows[1:] != rows[:-1]) | (targets[1:] != targets[:-1])
    starts = np.flatnonzero(new)
    sums = np.add.reduceat(coefs, starts)
    keep = sums != 0
    return rows[starts][keep], targets[starts][keep], sums[keep]


def combine(TA, CA, TB, CB, nB: int):
    """Tensor two ELL blocks row by row: targets ``a * nB + b``."""
    T = TA[:, :, None] * nB + TB[:, None, :]
    T = np.where((TA[:, :, None] >= 0) & (TB[:, None, :] >= 0), T, -1)
    C = CA[:, :, None] * CB[:, None, :]
    n = T.shape[0]
    return T.reshape(n, -1), C.reshape(n, -1)


def chain(T: np.ndarray, C: np.ndarray, fn, param: np.ndarray):
    """Apply ``fn(targets, param_per_target)`` to every live slot of an ELL block.

    ``param`` holds one value per row of ``T``; the result keeps the row count
    and multiplies coefficients through.
    """
    n, K = T.shape
    live = (T >= 0) & (C != 0)
    rows = np.nonzero(live)[0]
    T2, C2 = fn(T[live], np.asarray(param)[rows])
    K2 = T2.shape[1]
    outT = np.full((n * K, K2), -1, dtype=np.int64)
    outC = np.zeros((n * K, K2), dtype=np.int64)
    flat = live.ravel()
    outT[flat] = T2
    outC[flat] = C2 * C[live][:, None]
    return outT.reshape(n, K * K2), outC.reshape(n, K * K2)


class Morphism:
    """A linear map ``source -> target`` given by its action on basis vectors.

    ``source`` and ``target`` are objects exposing ``dim``.  The map is
    evaluated lazily, so composites over huge tensor products cost only what
    is actually asked for.
    """

    def __init__(self, source, target, fn: Callable[[np.ndarray], tuple], name: str = "f"):
        self.source = source
        self.target = target
        self._fn = fn
        self.name = name

    def images(self, idx) -> tuple[np.ndarray, np.ndarray]:
        idx = np.asarray(idx, dtype=np.int64).ravel()
        if idx.size == 0:
            return np.zeros((0, 1), dtype=np.int64), np.zeros((0, 1), dtype=np.int64)
        T, C = self._fn(idx)
        return np.asarray(T, dtype=np.int64), np.asarray(C, dtype=np.int64)

    def __call__(self, vec: dict) -> dict:
        """Apply to a sparse vector ``{basis index: coefficient}``."""
        if not vec:
            return {}
        keys = np.fromiter(vec.keys(), dtype=np.int64, count=len(vec))
        T, C = self.images(keys)
        out: dict = {}
        for i, k in enumerate(keys):
            c = vec[int(k)]
            for t, a in zip(T[i], C[i]):
                if t >= 0 and a != 0:
                    out[int(t)] = out.get(int(t), 0) + c * int(a)
        return {k: v for k, v in out.items() if v != 0}

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """``self o other``: apply ``other`` first."""
        if other.target.dim != self.source.dim:
            raise ValueError(f"cannot compose {self.name} after {other.name}: dimension mismatch")
        f, g = self, other

        def fn(idx):
            TG, CG = g.images(idx)
            n, KG = TG.shape
            live = (TG >= 0) & (CG != 0)
            TF, CF = f.images(TG[live])
            KF = TF.shape[1]
            T = np.full((n * KG, KF), -1, dtype=np.int64)
            C = np.zeros((n * KG, KF), dtype=np.int64)
            flat_live = live.ravel()
            T[flat_live] = TF
            C[flat_live] = CF * CG[live][:, None]
            return T.reshape(n, KG * KF), C.reshape(n, KG * KF)

        return Morphism(g.source, f.target, fn, f"{f.name}.{g.name}")

    def tensor(self, other: "Morphism") -> "Morphism":
        """``self (x) other`` between the binary tensor products of sources and targets."""
        from .cat_c import tensor_like

        f, g = self, other
        nBs, nBt = g.source.dim, g.target.dim
        src = tensor_like(f.source, g.source)
        tgt = tensor_like(f.target, g.target)

        def fn(idx):
            i, j = np.divmod(idx, nBs)
            TA, CA = f.images(i)
            TB, CB = g.images(j)
            return combine(TA, CA, TB, CB, nBt)

        return Morphism(src, tgt, fn, f"({f.name}x{g.name})")

    def scaled(self, c: int) -> "Morphism":
        f = self
        return Morphism(f.source, f.target, lambda idx: (lambda T, C: (T, C * c))(*f.images(idx)), f"{c}{f.name}")

    def __add__(self, other: "Morphism") -> "Morphism":
        if (self.source.dim, self.target.dim) != (other.source.dim, other.target.dim):
            raise ValueError("dimension mismatch in sum")
        f, g = self, other

        def fn(idx):
            TF, CF = f.images(idx)
            TG, CG = g.images(idx)
            return np.hstack([TF, TG]), np.hstack([CF, CG])

        return Morphism(f.source, f.target, fn, f"({f.name}+{g.name})")

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + other.scaled(-1)

    def stored(self, chunk: int = DEFAULT_CHUNK) -> "Morphism":
        """Evaluate once on the whole source and keep the merged table."""
        n = self.source.dim
        parts_T, parts_C = [], []
        for start in range(0, n, chunk):
            idx = np.arange(start, min(n, start + chunk))
            r, t, c = canonical_rows(*flatten(*self.images(idx)))
            T, C = to_ell(r, t, c, idx.size)
            parts_T.append(T)
            parts_C.append(C)
        K = max(T.shape[1] for T in parts_T)
        T = np.vstack([np.pad(T, ((0, 0), (0, K - T.shape[1])), constant_values=-1) for T in parts_T])
        C = np.vstack([np.pad(C, ((0, 0), (0, K - C.shape[1]))) for C in parts_C])
        return stored_map(self.source, self.target, T, C, self.name)

    def dense(self) -> np.ndarray:
        """Matrix ``A[target, source]``; only for small dimensions."""
        n, m = self.source.dim, self.target.dim
        if n * m > 50_000_000:
            raise ValueError("too large for a dense matrix")
        A = np.zeros((m, n), dtype=np.int64)
        r, t, c = flatten(*self.images(np.arange(n)))
        np.add.at(A, (t, r), c)
        return A

    def difference(self, other: "Morphism", idx=None, chunk: int = DEFAULT_CHUNK):
        """First source basis index where the maps differ, or ``None``.

        ``idx`` restricts the comparison to some basis vectors.
        """
        if (self.source.dim, self.target.dim) != (other.source.dim, other.target.dim):
            raise ValueError(f"shape mismatch comparing {self.name} with {other.name}")
        if idx is None:
            idx = np.arange(self.source.dim, dtype=np.int64)
        idx = np.asarray(idx, dtype=np.int64)
        parts = [idx[start:start + chunk] for start in range(0, idx.size, chunk)]

        def first(part):
            r1, t1, c1 = flatten(*self.images(part))
            r2, t2, c2 = flatten(*other.images(part))
            r, _, _ = canonical_rows(
                np.concatenate([r1, r2]), np.concatenate([t1, t2]), np.concatenate([c1, -c2])
            )
            return int(part[r.min()]) if r.size else None

        if _THREADS > 1 and len(parts) > 1:
            with ThreadPoolExecutor(_THREADS) as pool:
                for k in pool.map(first, parts):
                    if k is not None:
                        return k
            return None
        for part in parts:
            k = first(part)
            if k is not None:
                return k
        return None

    def equals(self, other: "Morphism", idx=None, chunk: int = DEFAULT_CHUNK) -> bool:
        return self.difference(other, idx, chunk) is None

    def __repr__(self) -> str:
        return f"Morphism({self.name}: {self.source.dim} -> {self.target.dim})"


def stored_map(source, target, T: np.ndarray, C: np.ndarray, name: str = "f") -> Morphism:
    T = np.asarray(T, dtype=np.int64)
    C = np.asarray(C, dtype=np.int64)
    return Morphism(source, target, lambda idx: (T[idx], C[idx]), name)


def identity_map(V, name: str = "I") -> Morphism:
    def fn(idx):
        return idx[:, None].copy(), np.ones((idx.size, 1), dtype=np.int64)

    return Morphism(V, V, fn, name)


def nullspace(rows: list[dict[int, int]], ncols: int) -> list[dict[int, int]]:
    """Integer basis of ``{x : row . x = 0 for every row}``.

    Rows are sparse ``{column: coefficient}``.  Exact Gauss-Jordan over the
    rationals; each basis vector is scaled to coprime integers.
    """
    pivots: dict[int, dict[int, Fraction]] = {}  # pivot column -> reduced row
    for raw in rows:
        row = {c: Fraction(v) for c, v in raw.items() if v != 0}
        for pc, prow in pivots.items():
            if pc in row:
                f = row[pc]
                for c, v in prow.items():
                    nv = row.get(c, 0) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if not row:
            continue
        pc = min(row)
        inv = 1 / row[pc]
        row = {c: v * inv for c, v in row.items()}
        for qc, qrow in pivots.items():
            if pc in qrow:
                f = qrow[pc]
                for c, v in row.items():
                    nv = qrow.get(c, 0) - f * v
                    if nv:
                        qrow[c] = nv
                    else:
                        qrow.pop(c, None)
        pivots[pc] = row
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = {fc: Fraction(1)}
        for pc, prow in pivots.items():
            if fc in prow:
                vec[pc] = -prow[fc]
        den = 1
        for v in vec.values():
            den = den * v.denominator // np.gcd(den, v.denominator)
        ints = {c: int(v * den) for c, v in vec.items()}
        g = 0
        for v in ints.values():
            g = int(np.gcd(g, abs(v)))
        basis.append({c: v // g for c, v in ints.items()})
    return basis
