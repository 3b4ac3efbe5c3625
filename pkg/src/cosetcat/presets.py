"""Named coset systems used throughout the tests and the command line."""

from __future__ import annotations

from .permgroup import Permutation, dihedral, symmetric
from .transversal import CosetSystem, build_coset_system

__all__ = ["PRESETS", "preset", "s3_order2", "d6_system", "s5_system"]


def s3_order2(reps: list[str]) -> CosetSystem:
    """S3 with ``G = {e, (12)}`` and the given representatives."""
    X = symmetric(3)
    return build_coset_system(X, ["e", "(12)"], reps)


def d6_system() -> CosetSystem:
    """Dihedral group of order 12 with ``G = <x^2, y>`` and ``M = {e, x}``.

    ``x`` is the rotation ``(123456)`` and ``y`` the reflection ``(26)(35)``;
    elements are named ``y^j x^i``.
    """
    X = dihedral(6)
    x = Permutation.parse("(123456)", 6)
    y = Permutation.parse("(26)(35)", 6)
    names = {}
    power = Permutation(range(6))
    for i in range(6):
        for j in range(2):
            elem = y * power if j else power
            word = ("y" if j else "") + ("" if i == 0 else "x" if i == 1 else f"x^{i}")
            names[elem] = word or "e"
        power = power * x
    G = X.closure_indices([X.idx(x * x), X.idx(y)])
    return build_coset_system(X, G, [X.idx("e"), X.idx(x)], names)


S5_NAMES = {"a": "(12)(354)", "b": "(14253)", "c": "(15234)", "d": "(13245)"}


def s5_system() -> CosetSystem:
    """S5 with ``G`` the stabilizer of 1 and ``M = {e, a, b, c, d}``."""
    X = symmetric(5)
    names = {Permutation.parse(v, 5): k for k, v in S5_NAMES.items()}
    M = ["e"] + [S5_NAMES[k] for k in "abcd"]
    return build_coset_system(X, X.stabilizer(0), M, names)


PRESETS = {
    "ex1": lambda: s3_order2(["(12)", "(13)", "(23)"]),
    "ex2": lambda: s3_order2(["e", "(13)", "(23)"]),
    "ex3": lambda: build_coset_system(symmetric(3), ["e", "(12)"], ["e", "(123)", "(132)"]),
    "d6": d6_system,
    "s5": s5_system,
}


def preset(name: str) -> CosetSystem:
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
