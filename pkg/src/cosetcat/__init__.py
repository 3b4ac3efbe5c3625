"""Tensor categories built from left coset representatives of finite groups."""

from .permgroup import FiniteGroup, Permutation, dihedral, group_closure, symmetric
from .presets import preset
from .transversal import CosetSystem, build_coset_system, classify, verify_matched_pair

__all__ = [
    "FiniteGroup",
    "Permutation",
    "dihedral",
    "group_closure",
    "symmetric",
    "preset",
    "CosetSystem",
    "build_coset_system",
    "classify",
    "verify_matched_pair",
]
__version__ = "0.1.0"
