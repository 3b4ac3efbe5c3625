"""Finite permutation groups with index-based multiplication tables.

Composition is right to left: ``(p * q)(i) = p(q(i))``, so ``p * q`` means
"apply ``q`` first, then ``p``".  Points are stored 0-based and printed 1-based.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Permutation",
    "FiniteGroup",
    "compose",
    "identity",
    "group_closure",
    "factorize",
    "is_transversal",
    "symmetric",
    "dihedral",
    "cyclic",
    "parse_cycles",
    "group_from_dict",
]


class Permutation:
    """An immutable permutation of ``{0, ..., degree-1}``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(i) for i in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation: {imgs}")
        self.images = imgs
        self._hash = hash(imgs)

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> "Permutation":
        """Build from 1-based cycles, e.g. ``[[1, 2], [3, 5, 4]]``."""
        imgs = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            pts = [int(c) - 1 for c in cyc]
            for p in pts:
                if p < 0 or p >= degree:
                    raise ValueError(f"point {p + 1} outside 1..{degree}")
                if p in seen:
                    raise ValueError(f"point {p + 1} repeated in cycles")
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                imgs[a] = b
        return cls(imgs)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        return cls.from_cycles(parse_cycles(text, degree), degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its smallest point."""
        out, seen = [], set()
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc, p = [], start
            while p not in seen:
                seen.add(p)
                cyc.append(p + 1)
                p = self.images[p]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "e"
        sep = "," if self.degree > 9 else ""
        return "".join("(" + sep.join(str(c) for c in cyc) + ")" for cyc in cycs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"

    def __str__(self) -> str:
        return self.cycle_string()


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p * q``: apply ``q`` then ``p``."""
    if p.degree != q.degree:
        raise ValueError("degree mismatch")
    return Permutation(p.images[i] for i in q.images)


def identity(degree: int) -> Permutation:
    return Permutation(range(degree))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> list[list[int]]:
    """Parse ``"(12)(354)"`` or ``"(1,10)(2,3)"``; ``"e"`` or ``"()"`` is the identity.

    Without commas each digit is one point, which is unambiguous up to degree 9.
    """
    text = text.strip()
    if text in ("", "e", "()", "id"):
        return []
    pos = 0
    for m in _CYCLE_RE.finditer(text):
        if text[pos:m.start()].strip():
            break
        pos = m.end()
    if text[pos:].strip():
        pos += len(text[pos:]) - len(text[pos:].lstrip())
        raise ValueError(f"cannot parse cycle notation {text!r} at position {pos}")
    out = []
    for m in _CYCLE_RE.finditer(text):
        body = m.group(1).strip()
        if not body:
            continue
        if "," in body or " " in body:
            toks = [t for t in re.split(r"[,\s]+", body) if t]
            if not all(t.isdigit() for t in toks):
                raise ValueError(f"cannot parse cycle notation {text!r} at position {m.start(1)}")
            pts = [int(t) for t in toks]
        else:
            if degree is not None and degree > 9:
                raise ValueError("use commas between points for degree > 9")
            if not body.isdigit():
                raise ValueError(f"cannot parse cycle notation {text!r} at position {m.start(1)}")
            pts = [int(ch) for ch in body]
        out.append(pts)
    return out


def _encode(arr: np.ndarray, degree: int) -> np.ndarray | None:
    # mixed radix, most significant digit first, so codes sort lexicographically
    if degree > 15:
        return None
    weights = degree ** np.arange(degree - 1, -1, -1, dtype=np.int64)
    return arr.astype(np.int64) @ weights


class FiniteGroup:
    """A finite permutation group, fully enumerated.

    Elements are sorted lexicographically by image tuple, so the identity has
    index 0.  ``mul[a, b]`` is the index of ``elements[a] * elements[b]``.
    """

    def __init__(self, elements: Iterable[Permutation], degree: int | None = None):
        elems = sorted(set(elements))
        if not elems:
            raise ValueError("empty group")
        self.degree = elems[0].degree if degree is None else degree
        self.elements: tuple[Permutation, ...] = tuple(elems)
        self.index = {p: i for i, p in enumerate(elems)}
        n = len(elems)
        imgs = np.array([p.images for p in elems], dtype=np.int64).reshape(n, self.degree)
        self.image_array = imgs
        codes = _encode(imgs, self.degree)
        mul = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            prod = imgs[a][imgs]  # row b is elements[a] * elements[b]
            if codes is not None:
                pc = _encode(prod, self.degree)
                pos = np.searchsorted(codes, pc)
                if np.any(pos >= n) or np.any(codes[np.minimum(pos, n - 1)] != pc):
                    raise ValueError("element set is not closed under composition")
                mul[a] = pos
            else:
                for b in range(n):
                    key = Permutation(prod[b])
                    if key not in self.index:
                        raise ValueError("element set is not closed under composition")
                    mul[a, b] = self.index[key]
        self.mul = mul
        ident = self.index.get(identity(self.degree))
        if ident is None:
            raise ValueError("element set does not contain the identity")
        self.identity = ident
        inv = np.argmax(mul == ident, axis=1)
        if not np.all(mul[np.arange(n), inv] == ident):
            raise ValueError("element set is not closed under inverses")
        self.inv = inv.astype(np.int64)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p) -> bool:
        return p in self.index

    def idx(self, p: Permutation | str) -> int:
        if isinstance(p, str):
            p = Permutation.parse(p, self.degree)
        return self.index[p]

    def indices(self, perms: Iterable[Permutation | str]) -> np.ndarray:
        return np.array([self.idx(p) for p in perms], dtype=np.int64)

    def label(self, i: int) -> str:
        return self.elements[int(i)].cycle_string()

    def closure_indices(self, generators: Iterable[int]) -> np.ndarray:
        """Sorted indices of the subgroup generated by the given element indices."""
        gens = [int(g) for g in generators]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = int(self.mul[a, g])
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return np.array(sorted(seen), dtype=np.int64)

    def is_subgroup(self, idxs: Iterable[int]) -> bool:
        s = np.unique(np.asarray(list(idxs), dtype=np.int64))
        if s.size == 0 or self.identity not in s:
            return False
        prods = self.mul[np.ix_(s, s)]
        return bool(np.all(np.isin(prods, s)))

    def stabilizer(self, point: int) -> np.ndarray:
        """Indices fixing ``point`` (0-based)."""
        return np.flatnonzero(self.image_array[:, point] == point)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, degree={self.degree})"


def group_closure(generators: Iterable[Permutation], degree: int | None = None) -> FiniteGroup:
    gens = list(generators)
    if degree is None:
        if not gens:
            raise ValueError("degree required for the trivial group")
        degree = gens[0].degree
    e = identity(degree)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return FiniteGroup(seen, degree)


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup([identity(1)])
    gens = [Permutation.from_cycles([[1, 2]], n), Permutation.from_cycles([list(range(1, n + 1))], n)]
    return group_closure(gens, n)


def cyclic(n: int) -> FiniteGroup:
    return group_closure([Permutation.from_cycles([list(range(1, n + 1))], n)], n)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of a regular n-gon, order 2n, acting on its vertices 1..n.

    Generators are the rotation ``(1 2 ... n)`` and the reflection fixing vertex 1.
    """
    rot = Permutation.from_cycles([list(range(1, n + 1))], n)
    refl = Permutation([(-i) % n for i in range(n)])
    return group_closure([rot, refl], n)


def factorize(x: int, group: FiniteGroup, G: Sequence[int], M: Sequence[int]) -> tuple[int, int]:
    """Return ``(u, s)`` with ``x = u * s``, ``u`` in ``G`` and ``s`` in ``M``.

    All arguments are element indices of ``group``.  Raises if the
    factorization is not unique, which happens exactly when ``M`` is not a
    transversal.
    """
    Gset = set(int(g) for g in G)
    hits = []
    for s in M:
        u = int(group.mul[x, group.inv[s]])
        if u in Gset:
            hits.append((u, int(s)))
    if len(hits) != 1:
        raise ValueError(f"{group.label(x)} has {len(hits)} factorizations")
    return hits[0]


def is_transversal(group: FiniteGroup, G: Sequence[int], M: Sequence[int]) -> tuple[bool, str]:
    """Check that ``M`` meets every right coset ``G s`` exactly once."""
    G = np.asarray(G, dtype=np.int64)
    M = np.asarray(M, dtype=np.int64)
    if not group.is_subgroup(G):
        raise ValueError("G is not a subgroup")
    if len(set(M.tolist())) != len(M):
        return False, "transversal has repeated elements"
    n_cosets = group.order // len(G)
    if len(M) != n_cosets:
        return False, f"{len(M)} representatives for {n_cosets} cosets"
    coset_of = np.full(group.order, -1, dtype=np.int64)
    for c, s in enumerate(M):
        members = group.mul[G, s]
        if np.any(coset_of[members] >= 0):
            other = M[coset_of[members[coset_of[members] >= 0][0]]]
            return False, f"{group.label(s)} and {group.label(other)} lie in the same coset"
        coset_of[members] = c
    return True, "ok"


def group_from_dict(data: dict) -> FiniteGroup:
    """Build a group from a JSON-style description.

    ``{"type": "symmetric", "n": 3}``, ``{"type": "dihedral", "n": 6}``,
    ``{"type": "cyclic", "n": 4}`` or
    ``{"type": "permutations", "degree": 5, "generators": ["(12)", "(12345)"]}``.
    """
    kind = data.get("type")
    if kind == "symmetric":
        return symmetric(int(data["n"]))
    if kind == "dihedral":
        return dihedral(int(data["n"]))
    if kind == "cyclic":
        return cyclic(int(data["n"]))
    if kind == "permutations":
        deg = int(data["degree"])
        gens = [Permutation.parse(g, deg) if isinstance(g, str) else Permutation(g) for g in data["generators"]]
        return group_closure(gens, deg)
    raise ValueError(f"unknown group type {kind!r}")
